#include "frac/semigroup.hpp"

#include "frac/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace frac {

Alpha::Alpha(double alpha, int dim) : value(alpha), n(dim) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw PreconditionError("alpha must be positive");
  if (dim < 1 || dim > 3) throw PreconditionError("dimension must be 1, 2 or 3");
}

namespace {

void require_dim(const GridSpec& g, const Alpha& a) {
  if (g.dim() != a.n) throw PreconditionError("alpha was declared for a different dimension than the grid");
}

RealArray rates(const GridSpec& g, const Alpha& a) { return g.xi_norm().pow(2.0 * a.value); }

}  // namespace

Multiplier semigroup_multiplier(const GridSpec& grid, double t, const Alpha& alpha) {
  require_dim(grid, alpha);
  if (t < 0.0) throw PreconditionError("semigroup time must be nonnegative");
  std::ostringstream label;
  label << "exp(-" << t << "|xi|^" << 2 * alpha.value << ")";
  return {label.str(), (-t * rates(grid, alpha)).exp().cast<Complex>()};
}

Multiplier derivative_multiplier(const GridSpec& grid, double beta, DerivativeKind kind) {
  if (kind == DerivativeKind::inhomogeneous)
    return {"(1+|xi|^2)^" + std::to_string(beta / 2),
            (1.0 + grid.xi_norm().square()).pow(beta / 2).cast<Complex>()};
  RealArray s = grid.xi_norm().pow(beta);
  s[0] = beta == 0.0 ? 1.0 : 0.0;
  return {"|xi|^" + std::to_string(beta), s.cast<Complex>()};
}

Multiplier riesz_multiplier(const GridSpec& grid, int axis) {
  const RealArray& xi = grid.xi_odd(axis);
  const RealArray& n2 = grid.xi_odd_norm2();
  ComplexArray s(grid.size());
  for (Index i = 0; i < grid.size(); ++i) s[i] = n2[i] > 0.0 ? Complex(0.0, xi[i] / std::sqrt(n2[i])) : 0.0;
  return {"R_" + std::to_string(axis), std::move(s)};
}

Multiplier partial_multiplier(const GridSpec& grid, int axis) {
  return {"d_" + std::to_string(axis), Complex(0.0, 1.0) * grid.xi_odd(axis).cast<Complex>()};
}

Field apply_semigroup(const Field& f, double t, const Alpha& alpha) {
  if (t < 0.0) throw PreconditionError("semigroup time must be nonnegative");
  if (t == 0.0) return f;
  require_dim(f.grid(), alpha);
  return apply_symbol(f, RealArray((-t * rates(f.grid(), alpha)).exp()));
}

VectorField apply_semigroup(const VectorField& u, double t, const Alpha& alpha) {
  std::vector<Field> c;
  for (const auto& f : u.components) c.push_back(apply_semigroup(f, t, alpha));
  return VectorField(std::move(c));
}

Field kernel_unchecked(const GridSpec& grid, double t, const Alpha& alpha, double* contamination) {
  require_dim(grid, alpha);
  if (!(t > 0.0)) throw PreconditionError("kernel time must be positive");
  // Unitary convention: K-hat = (2 pi)^{-n/2} e^{-t|xi|^{2 alpha}}; the
  // (-1)^k phase moves the peak to the box centre.
  const RealArray sym = (-t * rates(grid, alpha)).exp();
  Field s(grid, Representation::spectral);
  const double norm = std::pow(2.0 * std::numbers::pi, -0.5 * grid.dim());
  for (Index i = 0; i < grid.size(); ++i) {
    const auto idx = grid.unflatten(i);
    int parity = 0;
    for (int a = 0; a < grid.dim(); ++a) parity += idx[a];
    s.data()[i] = (parity % 2 ? -norm : norm) * sym[i];
  }
  Field k = real_part(to_physical(s));
  if (contamination) *contamination = boundary_contamination(k);
  return k;
}

Field kernel(const GridSpec& grid, double t, const Alpha& alpha, double contamination_tol) {
  double c = 0.0;
  Field k = kernel_unchecked(grid, t, alpha, &c);
  if (c > contamination_tol) {
    std::ostringstream msg;
    msg << "kernel at t = " << t << " leaks " << c
        << " of its mass outside the central half-box; the periodic box no longer emulates R^n";
    throw ContaminationError(msg.str(), c);
  }
  return k;
}

bool has_zero_mean(const Field& f, double tol) {
  const Field s = to_spectral(f);
  const double peak = s.data().abs().maxCoeff();
  return peak == 0.0 || std::abs(s.data()[0]) <= tol * peak;
}

void require_zero_mean(const Field& f, const std::string& what) {
  if (!has_zero_mean(f))
    throw PreconditionError(what + " requires a zero-mean field (data modulo polynomials)");
}

Field fractional_derivative(const Field& f, double beta, DerivativeKind kind) {
  if (beta == 0.0) return f;
  if (kind == DerivativeKind::homogeneous && beta < 0.0)
    require_zero_mean(f, "a negative-order homogeneous derivative");
  return derivative_multiplier(f.grid(), beta, kind).apply(f);
}

Field riesz_transform(const Field& f, int axis) {
  if (axis < 0 || axis >= f.grid().dim()) throw PreconditionError("Riesz transform axis out of range");
  return riesz_multiplier(f.grid(), axis).apply(f);
}

Field partial_derivative(const Field& f, int axis) {
  if (axis < 0 || axis >= f.grid().dim()) throw PreconditionError("derivative axis out of range");
  return partial_multiplier(f.grid(), axis).apply(f);
}

VectorField gradient(const Field& f) {
  std::vector<Field> c;
  for (int a = 0; a < f.grid().dim(); ++a) c.push_back(partial_derivative(f, a));
  return VectorField(std::move(c));
}

// ---------------------------------------------------------------- Duhamel

double phi1(double z) {
  if (z == 0.0) return 1.0;
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < 1e-2) {
    // 1/2 + z/6 + z^2/24 + ... + z^6/8!
    double term = 0.5, sum = 0.5;
    for (int k = 3; k <= 8; ++k) {
      term *= z / k;
      sum += term;
    }
    return sum;
  }
  return (std::expm1(z) - z) / (z * z);
}

namespace {

// Per-mode coefficients for a step of length tau on an interval of length h:
//   w(t+tau) = E w(t) + A F_i + B (F_{i+1} - F_i).
struct StepCoefficients {
  double tau = -1.0, h = -1.0;
  RealArray E, A, B;

  void update(const RealArray& mu, double tau_, double h_) {
    if (tau_ == tau && h_ == h) return;
    tau = tau_;
    h = h_;
    E.resize(mu.size());
    A.resize(mu.size());
    B.resize(mu.size());
    for (Index i = 0; i < mu.size(); ++i) {
      const double z = -mu[i] * tau;
      E[i] = std::exp(z);
      A[i] = tau * phi1(z);
      B[i] = tau * tau / h * phi2(z);
    }
  }
};

}  // namespace

std::vector<ComplexArray> duhamel_modes(const std::vector<double>& times,
                                        const std::vector<const ComplexArray*>& forcing,
                                        const RealArray& rates, const std::vector<double>& t_eval) {
  if (times.size() != forcing.size() || times.empty())
    throw PreconditionError("forcing samples do not match the forcing time grid");
  if (times.front() != 0.0) throw PreconditionError("forcing time grid must start at t = 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw PreconditionError("forcing time grid must be strictly increasing");
  for (std::size_t i = 0; i < t_eval.size(); ++i) {
    if (t_eval[i] < 0.0 || t_eval[i] > times.back())
      throw PreconditionError("evaluation time lies outside the forcing time grid");
    if (i > 0 && !(t_eval[i] > t_eval[i - 1])) throw PreconditionError("evaluation times must increase");
  }

  const Index m = rates.size();
  std::vector<ComplexArray> out;
  out.reserve(t_eval.size());
  ComplexArray w = ComplexArray::Zero(m);
  StepCoefficients full, part;
  std::size_t e = 0;
  while (e < t_eval.size() && t_eval[e] == 0.0) {
    out.push_back(w);
    ++e;
  }
  for (std::size_t i = 0; i + 1 < times.size() && e < t_eval.size(); ++i) {
    const double t0 = times[i], t1 = times[i + 1], h = t1 - t0;
    const ComplexArray& F0 = *forcing[i];
    const ComplexArray dF = *forcing[i + 1] - F0;
    while (e < t_eval.size() && t_eval[e] < t1) {
      part.update(rates, t_eval[e] - t0, h);
      out.push_back(part.E.cast<Complex>() * w + part.A.cast<Complex>() * F0 + part.B.cast<Complex>() * dF);
      ++e;
    }
    full.update(rates, h, h);
    w = full.E.cast<Complex>() * w + full.A.cast<Complex>() * F0 + full.B.cast<Complex>() * dF;
    while (e < t_eval.size() && t_eval[e] == t1) {
      out.push_back(w);
      ++e;
    }
  }
  return out;
}

ScalarSeries duhamel(const ScalarSeries& forcing, const std::vector<double>& t_eval, const Alpha& alpha) {
  validate(forcing);
  const GridSpec& g = forcing.snapshots.front().grid();
  require_dim(g, alpha);
  std::vector<Field> spectral;
  spectral.reserve(forcing.size());
  std::vector<const ComplexArray*> ptrs;
  for (const auto& f : forcing.snapshots) spectral.push_back(to_spectral(f));
  for (const auto& f : spectral) ptrs.push_back(&f.data());
  auto modes = duhamel_modes(forcing.times, ptrs, rates(g, alpha), t_eval);

  const bool physical = forcing.snapshots.front().is_physical();
  ScalarSeries out;
  out.times = t_eval;
  out.grading = classify_grading(t_eval);
  for (auto& m : modes) {
    Field w(g, Representation::spectral, std::move(m));
    out.snapshots.push_back(physical ? to_physical(w) : w);
  }
  return out;
}

VectorSeries duhamel(const VectorSeries& forcing, const std::vector<double>& t_eval, const Alpha& alpha) {
  validate(forcing);
  const int dim = forcing.snapshots.front().dim();
  std::vector<ScalarSeries> parts(dim);
  for (int c = 0; c < dim; ++c) {
    ScalarSeries s;
    s.times = forcing.times;
    for (const auto& u : forcing.snapshots) s.snapshots.push_back(u.components[c]);
    parts[c] = duhamel(s, t_eval, alpha);
  }
  VectorSeries out;
  out.times = t_eval;
  out.grading = classify_grading(t_eval);
  for (std::size_t k = 0; k < t_eval.size(); ++k) {
    std::vector<Field> c;
    for (int d = 0; d < dim; ++d) c.push_back(parts[d].snapshots[k]);
    out.snapshots.emplace_back(std::move(c));
  }
  return out;
}

}  // namespace frac
