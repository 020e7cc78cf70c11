#include "frac/nse.hpp"

#include "frac/errors.hpp"
#include "frac/norms.hpp"
#include "frac/recipes.hpp"

#include <cmath>
#include <sstream>

namespace frac {

VectorField leray_project(const VectorField& u) {
  const VectorField s = to_spectral(u);
  const GridSpec& g = s.grid();
  const int n = s.dim();
  if (n != g.dim()) throw PreconditionError("Leray projection needs n components on an n-dimensional grid");
  const RealArray& k2 = g.xi_odd_norm2();
  ComplexArray dot = ComplexArray::Zero(g.size());
  for (int j = 0; j < n; ++j) dot += g.xi_odd(j).cast<Complex>() * s.components[j].data();
  const RealArray inv_k2 = (k2 > 0.0).select(k2.inverse(), 0.0);
  VectorField out = s;
  for (int j = 0; j < n; ++j)
    out.components[j].data() -= (g.xi_odd(j) * inv_k2).cast<Complex>() * dot;
  return u.representation() == Representation::physical ? to_physical(out) : out;
}

Field divergence(const VectorField& u) {
  const VectorField s = to_spectral(u);
  const GridSpec& g = s.grid();
  if (s.dim() != g.dim()) throw PreconditionError("divergence needs n components on an n-dimensional grid");
  Field d(g, Representation::spectral);
  for (int j = 0; j < s.dim(); ++j) d.data() += Complex(0.0, 1.0) * g.xi_odd(j).cast<Complex>() * s.components[j].data();
  return u.representation() == Representation::physical ? to_physical(d) : d;
}

double max_divergence(const VectorField& u) { return to_physical(divergence(u)).data().abs().maxCoeff(); }

RealArray dealias_mask(const GridSpec& grid) {
  RealArray m = RealArray::Ones(grid.size());
  const int cut = grid.points() / 3;
  for (Index i = 0; i < grid.size(); ++i) {
    const auto idx = grid.unflatten(i);
    for (int a = 0; a < grid.dim(); ++a)
      if (std::abs(grid.wavenumber(idx[a])) > cut || grid.is_nyquist(idx[a])) m[i] = 0.0;
  }
  return m;
}

VectorField dealias(const VectorField& u) {
  const RealArray mask = dealias_mask(u.grid());
  std::vector<Field> c;
  for (const auto& f : u.components) c.push_back(apply_symbol(f, mask));
  return VectorField(std::move(c));
}

VectorField projected_divergence(const VectorField& u, const VectorField& v) {
  const GridSpec& g = u.grid();
  if (v.grid() != g || u.dim() != g.dim() || v.dim() != g.dim())
    throw PreconditionError("bilinear term needs two n-component fields on one grid");
  const int n = g.dim();
  const RealArray mask = dealias_mask(g);
  const VectorField up = to_physical(dealias(to_spectral(u)));
  const VectorField vp = &u == &v ? up : to_physical(dealias(to_spectral(v)));
  VectorField d = VectorField::zeros(g, Representation::spectral);
  for (int j = 0; j < n; ++j) {
    const ComplexArray dj = Complex(0.0, 1.0) * g.xi_odd(j).cast<Complex>();
    for (int k = 0; k < n; ++k) {
      Field w(g, Representation::physical, up.components[j].data() * vp.components[k].data());
      Field ws = to_spectral(w);
      d.components[k].data() += dj * mask.cast<Complex>() * ws.data();
    }
  }
  return leray_project(d);
}

namespace {

VectorSeries to_physical_series(const VectorSeries& s) {
  VectorSeries out;
  out.times = s.times;
  out.grading = s.grading;
  for (const auto& u : s.snapshots) out.snapshots.push_back(to_physical(u));
  return out;
}

VectorSeries subtract(const VectorSeries& a, const VectorSeries& b) {
  VectorSeries out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out.snapshots[i] -= b.snapshots[i];
  return out;
}

bool same_times(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-12 * std::max(1.0, std::abs(a[i]))) return false;
  return true;
}

}  // namespace

VectorSeries bilinear_B(const VectorSeries& u, const VectorSeries& v, double alpha, const std::vector<double>& t_eval) {
  validate(u);
  validate(v);
  if (!same_times(u.times, v.times)) throw PreconditionError("bilinear operator needs u and v on one time grid");
  const GridSpec& g = u.snapshots.front().grid();
  const Alpha a(alpha, g.dim());
  const int n = g.dim();
  std::vector<VectorField> terms;
  terms.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) terms.push_back(projected_divergence(u.snapshots[i], v.snapshots[i]));
  const RealArray rates = g.xi_norm().pow(2.0 * a.value);
  std::vector<std::vector<ComplexArray>> comps(n);
  for (int c = 0; c < n; ++c) {
    std::vector<const ComplexArray*> ptrs;
    for (const auto& t : terms) ptrs.push_back(&t.components[c].data());
    comps[c] = duhamel_modes(u.times, ptrs, rates, t_eval);
  }
  VectorSeries out;
  out.times = t_eval;
  out.grading = classify_grading(t_eval);
  for (std::size_t k = 0; k < t_eval.size(); ++k) {
    std::vector<Field> c;
    for (int d = 0; d < n; ++d) c.push_back(to_physical(Field(g, Representation::spectral, std::move(comps[d][k]))));
    out.snapshots.emplace_back(std::move(c));
  }
  return out;
}

double x_norm(const VectorSeries& u, double q, double p) { return mixed_norm(u, q, p); }

void check_nse_hypotheses(int n, double alpha, double q, double p) {
  std::ostringstream msg;
  if (!(alpha > 0.5 && alpha <= 0.5 + n / 4.0 + 1e-12)) {
    msg << "alpha = " << alpha << " violates the hypothesis alpha in (1/2, 1/2 + n/4) (upper end "
        << 0.5 + n / 4.0 << " included)";
    throw PreconditionError(msg.str());
  }
  if (!(p >= 1.0) || !(q >= 1.0)) throw PreconditionError("exponents q, p must lie in [1, inf]");
  const double res = n * inv(p) + 2.0 * alpha * inv(q) - (2.0 * alpha - 1.0);
  if (std::abs(res) > 1e-9) {
    msg << "exponents violate n/p + 2alpha/q = 2alpha - 1 (residual " << res << ")";
    throw PreconditionError(msg.str());
  }
  if (!(p > n / (2.0 * alpha - 1.0))) {
    msg << "exponent p = " << p << " violates p > n/(2alpha - 1) = " << n / (2.0 * alpha - 1.0);
    throw PreconditionError(msg.str());
  }
}

double measure_bilinear_constant(const std::vector<VectorSeries>& fields, double alpha, double q, double p) {
  double c = 0.0;
  std::vector<double> norms;
  for (const auto& f : fields) norms.push_back(x_norm(f, q, p));
  for (std::size_t i = 0; i < fields.size(); ++i) {
    for (std::size_t j = i; j < fields.size(); ++j) {
      if (norms[i] == 0.0 || norms[j] == 0.0) continue;
      const VectorSeries b = bilinear_B(fields[i], fields[j], alpha, fields[i].times);
      c = std::max(c, x_norm(b, q, p) / (norms[i] * norms[j]));
    }
  }
  return c;
}

namespace {

// Seeded divergence-free data for the bilinear-constant ensemble.
VectorField ensemble_member(const GridSpec& g, std::uint64_t seed) {
  const DyadicPartition w = grid_partition(g);
  const int j_lo = w.j_min, j_hi = std::min(w.j_min + 1, w.j_max - 1);
  std::vector<Field> c;
  for (int a = 0; a < g.dim(); ++a) {
    RandomBandlimited r;
    r.seed = seed * 7919 + a;
    r.j_min = j_lo;
    r.j_max = std::max(j_lo, j_hi);
    c.push_back(synthesize_field(g, r));
  }
  return leray_project(VectorField(std::move(c)));
}

VectorSeries free_vector_evolution(const VectorField& g0, const std::vector<double>& times, const Alpha& a) {
  VectorSeries out;
  out.times = times;
  out.grading = classify_grading(times);
  const VectorField s = to_spectral(g0);
  for (double t : times) out.snapshots.push_back(to_physical(apply_semigroup(s, t, a)));
  return out;
}

}  // namespace

std::pair<VectorSeries, PicardReport> solve_nse_picard(const VectorField& g0, const std::optional<VectorSeries>& forcing,
                                                        double alpha, double T, double q, double p,
                                                        const PicardOptions& opt) {
  const GridSpec& grid = g0.grid();
  const int n = grid.dim();
  if (g0.dim() != n) throw PreconditionError("initial velocity needs n components");
  check_nse_hypotheses(n, alpha, q, p);
  if (!(T > 0.0)) throw PreconditionError("final time must be positive");
  const double div = max_divergence(g0);
  const double scale = std::max(1.0, lp_norm(g0, kInf));
  if (div > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "initial velocity is not divergence-free (max |div g| = " << div << ")";
    throw PreconditionError(msg.str());
  }
  const Alpha a(alpha, n);
  const std::vector<double> times = uniform_times(T, opt.steps);

  PicardReport rep;
  VectorSeries free = free_vector_evolution(g0, times, a);
  VectorSeries v0 = free;
  double duh_norm = 0.0;
  if (forcing && !forcing->empty()) {
    if (!same_times(forcing->times, times))
      throw PreconditionError("forcing must be sampled on the solver's uniform time grid");
    VectorSeries ph = *forcing;
    for (auto& s : ph.snapshots) s = leray_project(s);
    VectorSeries duh = to_physical_series(duhamel(ph, times, a));
    duh_norm = x_norm(duh, q, p);
    for (std::size_t i = 0; i < times.size(); ++i) v0.snapshots[i] += duh.snapshots[i];
  }
  rep.data_size = x_norm(free, q, p) + duh_norm;
  rep.radius = 2.0 * rep.data_size;

  std::vector<VectorSeries> ensemble{v0};
  for (int e = 0; e < opt.ensemble; ++e)
    ensemble.push_back(free_vector_evolution(ensemble_member(grid, opt.seed + e), times, a));
  rep.bilinear_constant = measure_bilinear_constant(ensemble, alpha, q, p);
  if (opt.enforce_smallness && 2.0 * rep.bilinear_constant * rep.data_size >= 1.0) {
    std::ostringstream msg;
    msg << "data too large for the contraction argument: 2 C a = " << 2.0 * rep.bilinear_constant * rep.data_size
        << " >= 1 (C = " << rep.bilinear_constant << ", a = " << rep.data_size << ")";
    throw PreconditionError(msg.str());
  }

  auto track_divergence = [&](const VectorSeries& s) {
    for (const auto& u : s.snapshots) rep.max_divergence = std::max(rep.max_divergence, max_divergence(u));
  };
  track_divergence(v0);
  VectorSeries v = v0;
  for (int m = 1; m <= opt.max_iter; ++m) {
    VectorSeries next = subtract(v0, bilinear_B(v, v, alpha, times));
    track_divergence(next);
    const double d = x_norm(subtract(next, v), q, p);
    const double nn = x_norm(next, q, p);
    const double res = d == 0.0 ? 0.0 : d / nn;
    if (!rep.residuals.empty() && rep.residuals.back() > 0.0) rep.ratios.push_back(res / rep.residuals.back());
    rep.residuals.push_back(res);
    v = std::move(next);
    rep.iterations = m;
    if (res < opt.tol) {
      rep.converged = true;
      break;
    }
  }
  rep.final_norm = x_norm(v, q, p);
  return {std::move(v), rep};
}

std::vector<DerivativeNorm> regularity_check(const VectorSeries& v, int order, double q, double p) {
  validate(v);
  if (order < 0 || order > 4) throw PreconditionError("regularity check supports derivative orders 0..4");
  const GridSpec& g = v.snapshots.front().grid();
  const int n = g.dim();
  std::vector<VectorField> spectral;
  for (const auto& u : v.snapshots) spectral.push_back(to_spectral(u));

  std::vector<DerivativeNorm> out;
  std::array<int, 3> j{0, 0, 0};
  const int span = order + 1;
  const int total = n == 1 ? span : n == 2 ? span * span : span * span * span;
  for (int code = 0; code < total; ++code) {
    int rem = code, sum = 0;
    for (int a = n - 1; a >= 0; --a) {
      j[a] = rem % span;
      rem /= span;
      sum += j[a];
    }
    if (sum > order) continue;
    ComplexArray sym = ComplexArray::Ones(g.size());
    for (int a = 0; a < n; ++a)
      for (int r = 0; r < j[a]; ++r) sym *= Complex(0.0, 1.0) * g.xi_odd(a).cast<Complex>();
    VectorSeries d;
    d.times = v.times;
    for (const auto& s : spectral) {
      std::vector<Field> c;
      for (const auto& f : s.components) c.push_back(to_physical(apply_symbol(f, sym)));
      d.snapshots.emplace_back(std::move(c));
    }
    DerivativeNorm dn;
    dn.multi_index = j;
    dn.order = sum;
    dn.norm = x_norm(d, q, p);
    dn.finite = std::isfinite(dn.norm);
    out.push_back(dn);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.order < y.order; });
  return out;
}

}  // namespace frac
