#pragma once

#include "frac/grid.hpp"

#include <string>
#include <vector>

namespace frac {

/// Dissipation order alpha > 0 together with the spatial dimension it is
/// used with; sigma() = n / (2 alpha) is the scaling weight.
struct Alpha {
  double value;
  int n;

  Alpha(double alpha, int dim);
  double sigma() const { return n / (2.0 * value); }
};

/// A Fourier multiplier sampled on one grid's lattice.
struct Multiplier {
  std::string label;
  ComplexArray symbol;

  Field apply(const Field& f) const { return apply_symbol(f, symbol); }
};

Multiplier semigroup_multiplier(const GridSpec& grid, double t, const Alpha& alpha);
/// |xi|^beta with symbol(0) = 0, or (1 + |xi|^2)^{beta/2}.
enum class DerivativeKind { homogeneous, inhomogeneous };
Multiplier derivative_multiplier(const GridSpec& grid, double beta, DerivativeKind kind);
/// i xi_j / |xi| on the odd lattice; 0 where xi_odd vanishes.
Multiplier riesz_multiplier(const GridSpec& grid, int axis);
/// i xi_j on the odd lattice.
Multiplier partial_multiplier(const GridSpec& grid, int axis);

/// e^{-t(-Laplacian)^alpha} f. The result has the representation of f.
Field apply_semigroup(const Field& f, double t, const Alpha& alpha);
VectorField apply_semigroup(const VectorField& u, double t, const Alpha& alpha);

/// K_t as a physical field centred at the box centre, normalized so that its
/// cell-volume-weighted sum is 1. Throws ContaminationError when more than
/// `contamination_tol` of its L1 mass lies outside the central half-box.
Field kernel(const GridSpec& grid, double t, const Alpha& alpha, double contamination_tol = 1e-6);
/// Kernel without the contamination guard, plus the measured fraction.
Field kernel_unchecked(const GridSpec& grid, double t, const Alpha& alpha, double* contamination = nullptr);

/// Throws unless |fhat(0)| is negligible against the largest coefficient.
void require_zero_mean(const Field& f, const std::string& what);
bool has_zero_mean(const Field& f, double tol = 1e-9);

Field fractional_derivative(const Field& f, double beta, DerivativeKind kind);
Field riesz_transform(const Field& f, int axis);
Field partial_derivative(const Field& f, int axis);
VectorField gradient(const Field& f);

/// Spectral core of the Duhamel integral
///   w(t) = int_0^t e^{-(t-s) mu} F(s) ds
/// for each mode with rate mu, F piecewise linear between the given samples
/// (second-order exponential time differencing, exact for linear F).
/// `times` must start at 0 and cover every t_eval.
std::vector<ComplexArray> duhamel_modes(const std::vector<double>& times,
                                        const std::vector<const ComplexArray*>& forcing,
                                        const RealArray& rates, const std::vector<double>& t_eval);

/// The Duhamel integral of a scalar forcing series, returned in spectral form
/// on the t_eval grid (or physical, if the forcing was physical).
ScalarSeries duhamel(const ScalarSeries& forcing, const std::vector<double>& t_eval, const Alpha& alpha);
VectorSeries duhamel(const VectorSeries& forcing, const std::vector<double>& t_eval, const Alpha& alpha);

/// phi1(z) = (e^z - 1)/z and phi2(z) = (e^z - 1 - z)/z^2, series near 0.
double phi1(double z);
double phi2(double z);

}  // namespace frac
