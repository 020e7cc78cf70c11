#pragma once

#include "frac/grid.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace frac {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Parses "inf", "infinity" or a number >= 1.
double parse_exponent(const std::string& text);
std::string format_exponent(double p);
/// 1/x with 1/inf = 0.
inline double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }
/// p' = p/(p-1), with 1' = inf and inf' = 1.
double conjugate(double p);

/// Riemann sum with cell volume; p = inf gives the sample maximum.
double lp_norm(const Field& f, double p);
/// Pointwise Euclidean magnitude, then lp_norm.
double lp_norm(const VectorField& u, double p);

/// (int_I g(t)^q dt)^{1/q} by the composite trapezoid rule on a possibly
/// graded grid; q = inf gives the sample maximum.
double time_norm(const std::vector<double>& times, const std::vector<double>& values, double q);

/// Smooth Littlewood-Paley partition on a bounded band range.
///   eta(r) = g(2-r) / (g(2-r) + g(r-1)),  g(t) = e^{-1/t} for t > 0,
///   psi_j(xi) = eta(|xi|/2^j) - eta(|xi|/2^{j-1}),
/// so psi_j lives on 2^{j-1} <= |xi| <= 2^{j+1}.
struct DyadicPartition {
  int j_min = 0;
  int j_max = 0;

  static double eta(double r);
  double psi(int j, double xi) const;
  RealArray psi_symbol(const GridSpec& grid, int j) const;
  /// eta(|xi| / 2^{j_min - 1}): everything below the first band, used as the
  /// low-frequency block of inhomogeneous norms.
  RealArray low_symbol(const GridSpec& grid) const;
  bool contains(int j) const { return j >= j_min && j <= j_max; }
};

/// Largest band window representable on the grid:
/// 2^{j_min-1} >= 2 pi / L and 2^{j_max+1} <= pi N / L.
DyadicPartition grid_partition(const GridSpec& grid);
/// Explicit window, checked against the grid.
DyadicPartition make_partition(const GridSpec& grid, int j_min, int j_max);

Field lp_block(const Field& f, int j, const DyadicPartition& partition);

double sobolev_norm(const Field& f, double s, double p, bool homogeneous);
/// l^q over j of 2^{js} ||Delta_j f||_p on the partition window. The
/// inhomogeneous variant adds the low block ||F^{-1}(eta_low fhat)||_p.
double besov_norm(const Field& f, double s, double p, double q, bool homogeneous,
                  const DyadicPartition& partition);

/// Largest RMS oscillation over grid-aligned dyadic cubes.
struct BmoResult {
  double value = 0.0;
  int level = 0;  ///< cube side is 2^level cells
  std::array<int, 3> corner{0, 0, 0};
};
BmoResult bmo_scan(const Field& f);
inline double bmo_norm(const Field& f) { return bmo_scan(f).value; }

// Norm kinds used by mixed norms and ratio harnesses.
struct Lebesgue {
  double p;
};
struct Sobolev {
  double s;
  double p;
  bool homogeneous = true;
};
struct Besov {
  double s;
  double p;
  double q;
  bool homogeneous = true;
};
struct Bmo {};
using NormSpec = std::variant<Lebesgue, Sobolev, Besov, Bmo>;

/// `partition` defaults to the grid window for Besov kinds.
double spatial_norm(const Field& f, const NormSpec& spec, const std::optional<DyadicPartition>& partition = {});
std::string describe(const NormSpec& spec);

/// Per-snapshot spatial norms.
std::vector<double> spatial_norms(const ScalarSeries& u, const NormSpec& spec,
                                  const std::optional<DyadicPartition>& partition = {});
double mixed_norm(const ScalarSeries& u, double q, double p);
double mixed_norm(const ScalarSeries& u, double q, const NormSpec& spec,
                  const std::optional<DyadicPartition>& partition = {});
double mixed_norm(const VectorSeries& u, double q, double p);

}  // namespace frac
