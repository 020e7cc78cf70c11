#pragma once

#include <Eigen/Core>

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace frac {

using Complex = std::complex<double>;
using ComplexArray = Eigen::ArrayXcd;
using RealArray = Eigen::ArrayXd;
using Index = Eigen::Index;

/// Periodic box [0, L)^n sampled on N points per axis, together with its
/// discrete frequency lattice 2*pi*k/L, k in {-N/2, ..., N/2-1}.
///
/// Grids are cheap to copy: the lattice tables are shared.
class GridSpec {
 public:
  GridSpec(int dim, int points, double length);

  int dim() const { return dim_; }
  int points() const { return points_; }
  double length() const { return length_; }

  Index size() const { return size_; }
  double spacing() const { return length_ / points_; }
  double cell_volume() const;
  double spectral_spacing() const;
  double spectral_cell_volume() const;
  double volume() const;

  /// Signed integer wavenumber of FFT index i.
  int wavenumber(int i) const { return i < points_ / 2 ? i : i - points_; }
  bool is_nyquist(int i) const { return i == points_ / 2; }
  /// Sorted per-axis frequencies 2*pi*k/L.
  std::vector<double> frequencies() const;

  /// Frequency component along `axis` at every lattice point (flat order).
  const RealArray& xi(int axis) const;
  /// Same as xi() with the Nyquist plane zeroed; used by odd symbols.
  const RealArray& xi_odd(int axis) const;
  /// |xi| at every lattice point.
  const RealArray& xi_norm() const;
  /// |xi|^2 built from xi_odd(); the denominator of the Leray projector.
  const RealArray& xi_odd_norm2() const;

  std::array<int, 3> unflatten(Index flat) const;
  Index flatten(const std::array<int, 3>& idx) const;
  /// Physical coordinate of sample index i along an axis.
  double coordinate(int i) const { return i * spacing(); }

  bool operator==(const GridSpec& other) const {
    return dim_ == other.dim_ && points_ == other.points_ && length_ == other.length_;
  }
  bool operator!=(const GridSpec& other) const { return !(*this == other); }

 private:
  struct Lattice;
  int dim_;
  int points_;
  double length_;
  Index size_;
  std::shared_ptr<const Lattice> lattice_;
};

GridSpec make_grid(int dim, int points, double length);

enum class Representation : std::uint8_t { physical = 0, spectral = 1 };
enum class Direction { forward, inverse };

/// Complex samples of a function on a grid, in physical or spectral form.
///
/// Spectral coefficients use the unitary convention
///   fhat(xi) = (2 pi)^{-n/2} sum_x f(x) e^{-i xi.x} dx^n,
/// so that sum |f|^2 dx^n == sum |fhat|^2 dxi^n.
class Field {
 public:
  explicit Field(GridSpec grid, Representation rep = Representation::physical);
  Field(GridSpec grid, Representation rep, ComplexArray data);

  const GridSpec& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  bool is_physical() const { return rep_ == Representation::physical; }
  bool is_spectral() const { return rep_ == Representation::spectral; }

  ComplexArray& data() { return data_; }
  const ComplexArray& data() const { return data_; }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(Complex s);

 private:
  GridSpec grid_;
  Representation rep_;
  ComplexArray data_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(Complex s, Field a);

/// Unitary DFT. Forward requires a physical field, inverse a spectral one.
Field transform(const Field& field, Direction direction);
Field to_spectral(const Field& field);
Field to_physical(const Field& field);

/// Multiplies the spectral data by a symbol sampled on the lattice. The
/// result comes back in the representation of the input.
Field apply_symbol(const Field& field, const ComplexArray& symbol);
Field apply_symbol(const Field& field, const RealArray& symbol);

/// True when max |Im f| <= tol * max |f| for a physical field.
bool is_real(const Field& field, double tol = 1e-12);
/// Drops imaginary parts of a physical field.
Field real_part(const Field& field);
/// Spatial mean (the xi = 0 coefficient, rescaled).
Complex mean(const Field& field);

/// Fraction of the L1 mass of |f| lying outside the central half-box
/// [L/4, 3L/4)^n.
double boundary_contamination(const Field& field);

/// n components sharing one grid and representation.
struct VectorField {
  std::vector<Field> components;

  VectorField() = default;
  explicit VectorField(std::vector<Field> comps);
  static VectorField zeros(const GridSpec& grid, Representation rep = Representation::physical);

  const GridSpec& grid() const { return components.front().grid(); }
  int dim() const { return static_cast<int>(components.size()); }
  Representation representation() const { return components.front().representation(); }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(Complex s);
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(Complex s, VectorField a);
VectorField to_spectral(const VectorField& u);
VectorField to_physical(const VectorField& u);

enum class Grading { uniform, geometric, irregular };

/// A field sampled on an increasing time grid.
template <class FieldT>
struct TimeSeries {
  std::vector<double> times;
  std::vector<FieldT> snapshots;
  Grading grading = Grading::irregular;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  double final_time() const { return times.back(); }
};

using ScalarSeries = TimeSeries<Field>;
using VectorSeries = TimeSeries<VectorField>;

/// Checks ordering, t0 >= 0 and a shared grid; throws on violation.
void validate(const ScalarSeries& series);
void validate(const VectorSeries& series);

/// 0, T/steps, ..., T.
std::vector<double> uniform_times(double final_time, int steps);
/// 0 followed by t_min * ratio^k up to and including final_time (the last
/// interval is stretched to land on final_time).
std::vector<double> geometric_times(double t_min, double final_time, double ratio);
Grading classify_grading(const std::vector<double>& times);

}  // namespace frac
