#include "frac/grid.hpp"

#include "frac/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <string>

namespace frac {

struct GridSpec::Lattice {
  std::array<RealArray, 3> xi;
  std::array<RealArray, 3> xi_odd;
  RealArray norm;
  RealArray odd_norm2;
};

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

Index ipow(Index base, int e) {
  Index r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

GridSpec::GridSpec(int dim, int points, double length)
    : dim_(dim), points_(points), length_(length) {
  if (dim < 1 || dim > 3)
    throw PreconditionError("grid dimension must be 1, 2 or 3 (got " + std::to_string(dim) + ")");
  if (points < 8 || !is_power_of_two(points))
    throw PreconditionError("points per axis must be a power of two >= 8 (got " +
                            std::to_string(points) + ")");
  if (!(length > 0.0) || !std::isfinite(length))
    throw PreconditionError("box length must be positive");
  size_ = ipow(points, dim);

  auto lat = std::make_shared<Lattice>();
  const double dxi = spectral_spacing();
  RealArray norm2 = RealArray::Zero(size_);
  lat->odd_norm2 = RealArray::Zero(size_);
  for (int a = 0; a < dim_; ++a) {
    lat->xi[a].resize(size_);
    lat->xi_odd[a].resize(size_);
  }
  for (Index flat = 0; flat < size_; ++flat) {
    const auto idx = unflatten(flat);
    for (int a = 0; a < dim_; ++a) {
      const double k = wavenumber(idx[a]) * dxi;
      lat->xi[a][flat] = k;
      lat->xi_odd[a][flat] = is_nyquist(idx[a]) ? 0.0 : k;
    }
  }
  for (int a = 0; a < dim_; ++a) {
    norm2 += lat->xi[a].square();
    lat->odd_norm2 += lat->xi_odd[a].square();
  }
  lat->norm = norm2.sqrt();
  lattice_ = std::move(lat);
}

GridSpec make_grid(int dim, int points, double length) { return GridSpec(dim, points, length); }

double GridSpec::cell_volume() const { return std::pow(spacing(), dim_); }
double GridSpec::spectral_spacing() const { return 2.0 * std::numbers::pi / length_; }
double GridSpec::spectral_cell_volume() const { return std::pow(spectral_spacing(), dim_); }
double GridSpec::volume() const { return std::pow(length_, dim_); }

std::vector<double> GridSpec::frequencies() const {
  std::vector<double> out;
  out.reserve(points_);
  for (int k = -points_ / 2; k < points_ / 2; ++k) out.push_back(k * spectral_spacing());
  return out;
}

const RealArray& GridSpec::xi(int axis) const {
  if (axis < 0 || axis >= dim_) throw PreconditionError("axis out of range");
  return lattice_->xi[axis];
}

const RealArray& GridSpec::xi_odd(int axis) const {
  if (axis < 0 || axis >= dim_) throw PreconditionError("axis out of range");
  return lattice_->xi_odd[axis];
}

const RealArray& GridSpec::xi_norm() const { return lattice_->norm; }
const RealArray& GridSpec::xi_odd_norm2() const { return lattice_->odd_norm2; }

std::array<int, 3> GridSpec::unflatten(Index flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % points_);
    flat /= points_;
  }
  return idx;
}

Index GridSpec::flatten(const std::array<int, 3>& idx) const {
  Index flat = 0;
  for (int a = 0; a < dim_; ++a) flat = flat * points_ + idx[a];
  return flat;
}

// ---------------------------------------------------------------- Field

Field::Field(GridSpec grid, Representation rep)
    : grid_(std::move(grid)), rep_(rep), data_(ComplexArray::Zero(grid_.size())) {}

Field::Field(GridSpec grid, Representation rep, ComplexArray data)
    : grid_(std::move(grid)), rep_(rep), data_(std::move(data)) {
  if (data_.size() != grid_.size()) throw PreconditionError("field data size does not match grid");
}

namespace {

void require_compatible(const Field& a, const Field& b) {
  if (a.grid() != b.grid()) throw PreconditionError("fields live on different grids");
  if (a.representation() != b.representation())
    throw PreconditionError("fields have different representations");
}

}  // namespace

Field& Field::operator+=(const Field& other) {
  require_compatible(*this, other);
  data_ += other.data_;
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_compatible(*this, other);
  data_ -= other.data_;
  return *this;
}

Field& Field::operator*=(Complex s) {
  data_ *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(Complex s, Field a) { return a *= s; }

// ---------------------------------------------------------------- FFT

namespace {

// kissfft plans are cached per length inside Eigen::FFT; one instance per
// thread keeps concurrent callers independent.
Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> engine = [] {
    Eigen::FFT<double> e;
    e.SetFlag(Eigen::FFT<double>::Unscaled);
    return e;
  }();
  return engine;
}

void fft_lines(ComplexArray& data, int dim, int points, bool forward) {
  auto& engine = fft_engine();
  std::vector<Complex> in(points), out(points);
  const Index total = data.size();
  for (int axis = 0; axis < dim; ++axis) {
    const Index stride = ipow(points, dim - 1 - axis);
    const Index block = stride * points;
    for (Index base = 0; base < total; base += block) {
      for (Index off = 0; off < stride; ++off) {
        const Index start = base + off;
        for (int i = 0; i < points; ++i) in[i] = data[start + i * stride];
        if (forward)
          engine.fwd(out, in);
        else
          engine.inv(out, in);
        for (int i = 0; i < points; ++i) data[start + i * stride] = out[i];
      }
    }
  }
}

}  // namespace

Field transform(const Field& field, Direction direction) {
  const GridSpec& g = field.grid();
  const double root2pi = std::sqrt(2.0 * std::numbers::pi);
  ComplexArray data = field.data();
  if (direction == Direction::forward) {
    if (!field.is_physical()) throw PreconditionError("forward transform needs a physical field");
    fft_lines(data, g.dim(), g.points(), true);
    data *= std::pow(g.spacing() / root2pi, g.dim());
    return Field(g, Representation::spectral, std::move(data));
  }
  if (!field.is_spectral()) throw PreconditionError("inverse transform needs a spectral field");
  fft_lines(data, g.dim(), g.points(), false);
  data *= std::pow(g.spectral_spacing() / root2pi, g.dim());
  return Field(g, Representation::physical, std::move(data));
}

Field to_spectral(const Field& field) {
  return field.is_spectral() ? field : transform(field, Direction::forward);
}

Field to_physical(const Field& field) {
  return field.is_physical() ? field : transform(field, Direction::inverse);
}

Field apply_symbol(const Field& field, const ComplexArray& symbol) {
  if (symbol.size() != field.grid().size()) throw PreconditionError("symbol size does not match grid");
  Field s = to_spectral(field);
  s.data() *= symbol;
  return field.is_physical() ? to_physical(s) : s;
}

Field apply_symbol(const Field& field, const RealArray& symbol) {
  if (symbol.size() != field.grid().size()) throw PreconditionError("symbol size does not match grid");
  Field s = to_spectral(field);
  s.data() *= symbol.cast<Complex>();
  return field.is_physical() ? to_physical(s) : s;
}

bool is_real(const Field& field, double tol) {
  const Field p = to_physical(field);
  const double peak = p.data().abs().maxCoeff();
  if (peak == 0.0) return true;
  return p.data().imag().abs().maxCoeff() <= tol * peak;
}

Field real_part(const Field& field) {
  Field p = to_physical(field);
  p.data() = p.data().real().cast<Complex>();
  return p;
}

Complex mean(const Field& field) {
  const Field p = to_physical(field);
  return p.data().mean();
}

double boundary_contamination(const Field& field) {
  const Field p = to_physical(field);
  const GridSpec& g = p.grid();
  const int lo = g.points() / 4, hi = 3 * g.points() / 4;
  double total = 0.0, outside = 0.0;
  for (Index flat = 0; flat < g.size(); ++flat) {
    const double m = std::abs(p.data()[flat]);
    total += m;
    const auto idx = g.unflatten(flat);
    for (int a = 0; a < g.dim(); ++a) {
      if (idx[a] < lo || idx[a] >= hi) {
        outside += m;
        break;
      }
    }
  }
  return total > 0.0 ? outside / total : 0.0;
}

// ---------------------------------------------------------------- VectorField

VectorField::VectorField(std::vector<Field> comps) : components(std::move(comps)) {
  if (components.empty()) throw PreconditionError("vector field needs at least one component");
  for (const auto& c : components) {
    if (c.grid() != components.front().grid())
      throw PreconditionError("vector components live on different grids");
    if (c.representation() != components.front().representation())
      throw PreconditionError("vector components have different representations");
  }
}

VectorField VectorField::zeros(const GridSpec& grid, Representation rep) {
  return VectorField(std::vector<Field>(grid.dim(), Field(grid, rep)));
}

VectorField& VectorField::operator+=(const VectorField& other) {
  if (dim() != other.dim()) throw PreconditionError("vector fields differ in component count");
  for (int i = 0; i < dim(); ++i) components[i] += other.components[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  if (dim() != other.dim()) throw PreconditionError("vector fields differ in component count");
  for (int i = 0; i < dim(); ++i) components[i] -= other.components[i];
  return *this;
}

VectorField& VectorField::operator*=(Complex s) {
  for (auto& c : components) c *= s;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(Complex s, VectorField a) { return a *= s; }

VectorField to_spectral(const VectorField& u) {
  std::vector<Field> c;
  for (const auto& f : u.components) c.push_back(to_spectral(f));
  return VectorField(std::move(c));
}

VectorField to_physical(const VectorField& u) {
  std::vector<Field> c;
  for (const auto& f : u.components) c.push_back(to_physical(f));
  return VectorField(std::move(c));
}

// ---------------------------------------------------------------- time grids

namespace {

template <class S, class G>
void validate_series(const S& series, G grid_of) {
  if (series.times.size() != series.snapshots.size())
    throw PreconditionError("time series has mismatched times and snapshots");
  if (series.times.empty()) throw PreconditionError("time series is empty");
  if (series.times.front() < 0.0) throw PreconditionError("time series starts before t = 0");
  for (std::size_t i = 1; i < series.times.size(); ++i) {
    if (!(series.times[i] > series.times[i - 1]))
      throw PreconditionError("time series is not strictly increasing");
    if (grid_of(series.snapshots[i]) != grid_of(series.snapshots.front()))
      throw PreconditionError("time series snapshots live on different grids");
  }
}

}  // namespace

void validate(const ScalarSeries& series) {
  validate_series(series, [](const Field& f) -> const GridSpec& { return f.grid(); });
}

void validate(const VectorSeries& series) {
  validate_series(series, [](const VectorField& f) -> const GridSpec& { return f.grid(); });
}

std::vector<double> uniform_times(double final_time, int steps) {
  if (!(final_time > 0.0) || steps < 1) throw PreconditionError("uniform grid needs T > 0 and steps >= 1");
  std::vector<double> t(steps + 1);
  for (int i = 0; i <= steps; ++i) t[i] = final_time * i / steps;
  t.back() = final_time;
  return t;
}

std::vector<double> geometric_times(double t_min, double final_time, double ratio) {
  if (!(t_min > 0.0) || !(final_time > t_min) || !(ratio > 1.0))
    throw PreconditionError("geometric grid needs 0 < t_min < T and ratio > 1");
  std::vector<double> t{0.0};
  for (double s = t_min; s < final_time; s *= ratio) t.push_back(s);
  // Merge a sliver last interval into its neighbour.
  if (t.size() > 2 && final_time / t.back() < 1.0 + 0.5 * (ratio - 1.0)) t.pop_back();
  t.push_back(final_time);
  return t;
}

Grading classify_grading(const std::vector<double>& times) {
  if (times.size() < 3) return Grading::uniform;
  const double h0 = times[1] - times[0];
  bool uniform = true;
  for (std::size_t i = 1; i + 1 < times.size(); ++i)
    if (std::abs((times[i + 1] - times[i]) - h0) > 1e-9 * std::abs(h0)) uniform = false;
  if (uniform) return Grading::uniform;
  // Interior intervals only: a leading 0 and a stretched last step are allowed.
  if (times.size() < 5) return Grading::irregular;
  const double q = (times[3] - times[2]) / (times[2] - times[1]);
  for (std::size_t i = 2; i + 2 < times.size(); ++i) {
    const double qi = (times[i + 1] - times[i]) / (times[i] - times[i - 1]);
    if (std::abs(qi - q) > 1e-9 * q) return Grading::irregular;
  }
  return q > 1.0 ? Grading::geometric : Grading::irregular;
}

}  // namespace frac
