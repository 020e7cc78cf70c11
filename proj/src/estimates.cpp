#include "frac/estimates.hpp"

#include "frac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <future>
#include <sstream>

namespace frac {

namespace {

void require_range(double x, const char* name) {
  if (!(x >= 1.0)) throw PreconditionError(std::string("exponent ") + name + " must lie in [1, inf]");
}

bool same(double a, double b) { return (std::isinf(a) && std::isinf(b)) || std::abs(a - b) < 1e-12; }

// Only Besov kinds need a band window; coarse grids may not have one.
std::optional<DyadicPartition> partition_for(const GridSpec& g, const std::optional<DyadicPartition>& given,
                                             std::initializer_list<EstimateNorm> kinds) {
  if (given) return given;
  for (const auto& k : kinds)
    if (k.kind == EstimateNorm::besov) return grid_partition(g);
  return std::nullopt;
}

}  // namespace

double check_admissible(const Triplet& t) {
  require_range(t.q, "q");
  require_range(t.p, "p");
  require_range(t.r, "r");
  if (t.r > t.p) throw PreconditionError("admissibility needs r <= p");
  return inv(t.q) - t.sigma * (inv(t.r) - inv(t.p));
}

double check_scaling_relation(double q, double p, double q1, double p1, double alpha, int n) {
  require_range(q, "q");
  require_range(p, "p");
  require_range(q1, "q1");
  require_range(p1, "p1");
  const double sigma = n / (2.0 * alpha);
  return (inv(conjugate(q1)) - inv(q)) + sigma * (inv(conjugate(p1)) - inv(p)) - 1.0;
}

double check_sobolev_relation(double q, double p, double alpha, int n) {
  require_range(q, "q");
  require_range(p, "p");
  return inv(q) + n / (2.0 * alpha) * (inv(p) - 0.5) - 1.5;
}

NormSpec EstimateNorm::at(double p) const {
  switch (kind) {
    case lebesgue:
      return Lebesgue{p};
    case sobolev:
      return Sobolev{order, p, homogeneous};
    case besov:
      return Besov{order, p, besov_q, homogeneous};
    case bmo:
      return Bmo{};
  }
  return Lebesgue{p};
}

std::vector<double> default_time_grid(double final_time, int points, double t_min_fraction) {
  if (!(final_time > 0.0) || points < 2 || !(t_min_fraction > 0.0 && t_min_fraction < 1.0))
    throw PreconditionError("time grid needs T > 0, at least two points and 0 < t_min/T < 1");
  std::vector<double> t{0.0};
  const double t_min = t_min_fraction * final_time;
  const double ratio = std::pow(1.0 / t_min_fraction, 1.0 / (points - 1));
  for (int k = 0; k < points; ++k) t.push_back(t_min * std::pow(ratio, k));
  t.back() = final_time;
  return t;
}

std::vector<double> scale_times(const std::vector<double>& times, double lambda, double alpha) {
  const double s = std::pow(lambda, -2.0 * alpha);
  std::vector<double> out(times);
  for (double& t : out) t *= s;
  return out;
}

ScalarSeries free_evolution(const Field& f, const std::vector<double>& times, const Alpha& alpha) {
  ScalarSeries out;
  out.times = times;
  out.grading = classify_grading(times);
  const Field s = to_spectral(f);
  for (double t : times) out.snapshots.push_back(to_physical(apply_semigroup(s, t, alpha)));
  validate(out);
  return out;
}

// ---------------------------------------------------------------- homogeneous

RatioSample homogeneous_ratio(const Field& f, const HomogeneousSetup& setup) {
  const GridSpec& g = f.grid();
  const Alpha alpha(setup.alpha, g.dim());
  require_range(setup.q, "q");
  require_range(setup.p, "p");
  if (setup.times.size() < 2) throw PreconditionError("homogeneous ratio needs a time grid with two or more points");
  if (setup.norm.kind != EstimateNorm::bmo && std::abs(alpha.sigma() - 1.0) < 1e-12 && same(setup.q, 2.0) &&
      std::isinf(setup.p))
    throw PreconditionError("(q, p, n/2alpha) = (2, inf, 1) is the excluded endpoint of the homogeneous estimate");
  const EstimateNorm& k = setup.norm;
  if (k.kind == EstimateNorm::bmo) {
    if (std::abs(g.dim() - 2.0 * setup.alpha) > 1e-12)
      throw PreconditionError("the BMO estimate holds only for n = 2 alpha");
    if (!same(setup.q, 2.0)) throw PreconditionError("the BMO estimate is an L^2 in time statement (q = 2)");
  }
  if (k.homogeneous && (k.kind == EstimateNorm::sobolev || k.kind == EstimateNorm::besov))
    require_zero_mean(f, "a homogeneous Sobolev or Besov estimate");

  const auto part = partition_for(g, setup.partition, {k});
  Field base = to_spectral(f);
  NormSpec num_spec = k.at(setup.p);
  NormSpec den_spec = k.kind == EstimateNorm::bmo ? NormSpec{Lebesgue{2.0}} : k.at(2.0);
  if (k.kind == EstimateNorm::sobolev) {
    // The semigroup commutes with the derivative: differentiate once.
    base = fractional_derivative(base, k.order,
                                 k.homogeneous ? DerivativeKind::homogeneous : DerivativeKind::inhomogeneous);
    num_spec = Lebesgue{setup.p};
    den_spec = Lebesgue{2.0};
  }

  RatioSample out;
  out.denominator = spatial_norm(base, den_spec, part);
  if (out.denominator == 0.0) throw PreconditionError("homogeneous ratio of a zero field");
  std::vector<double> values;
  values.reserve(setup.times.size());
  for (double t : setup.times) values.push_back(spatial_norm(to_physical(apply_semigroup(base, t, alpha)), num_spec, part));
  out.numerator = time_norm(setup.times, values, setup.q);
  out.ratio = out.numerator / out.denominator;
  out.contamination = boundary_contamination(f);
  out.evolved_contamination = boundary_contamination(apply_semigroup(to_spectral(f), setup.times.back(), alpha));
  return out;
}

// ---------------------------------------------------------------- inhomogeneous

RatioSample inhomogeneous_ratio(const ScalarSeries& forcing, const InhomogeneousSetup& setup) {
  validate(forcing);
  const GridSpec& g = forcing.snapshots.front().grid();
  const Alpha alpha(setup.alpha, g.dim());
  const double q1p = conjugate(setup.q1), p1p = conjugate(setup.p1);
  std::ostringstream why;
  switch (setup.relation) {
    case InhomogeneousSetup::scaling: {
      const double res = check_scaling_relation(setup.q, setup.p, setup.q1, setup.p1, setup.alpha, g.dim());
      if (std::abs(res) > 1e-9) {
        why << "exponents violate the scaling relation (1/q1' - 1/q) + (n/2alpha)(1/p1' - 1/p) = 1 (residual " << res
            << ")";
        throw PreconditionError(why.str());
      }
      if (!(p1p >= 1.0 && p1p < setup.p))
        throw PreconditionError("the inhomogeneous estimate needs 1 <= p1' < p <= inf");
      if (!(q1p > 1.0 && q1p < setup.q && !std::isinf(setup.q)))
        throw PreconditionError("the inhomogeneous estimate needs 1 < q1' < q < inf");
      break;
    }
    case InhomogeneousSetup::sobolev_variant: {
      if (!(g.dim() > 2.0 * setup.alpha)) throw PreconditionError("the Sobolev variant needs n > 2 alpha");
      const double res = check_sobolev_relation(q1p, p1p, setup.alpha, g.dim());
      if (std::abs(res) > 1e-9) {
        why << "exponents violate 1/q + (n/2alpha)(1/p - 1/2) = 3/2 (residual " << res << ")";
        throw PreconditionError(why.str());
      }
      if (!(p1p >= 1.0 && p1p < 2.0) || !(q1p > 1.0 && q1p < 2.0))
        throw PreconditionError("the Sobolev variant needs p in [1, 2) and q in (1, 2)");
      if (!same(setup.q, 2.0) || std::abs(setup.p - 2.0 * g.dim() / (g.dim() - 2.0 * setup.alpha)) > 1e-9)
        throw PreconditionError("the Sobolev variant measures the solution in L^2_t L^{2n/(n-2alpha)}_x");
      break;
    }
    case InhomogeneousSetup::none:
      break;
  }

  const auto part = partition_for(g, setup.partition, {setup.lhs, setup.rhs});
  RatioSample out;
  std::vector<double> rhs;
  rhs.reserve(forcing.size());
  for (const auto& f : forcing.snapshots) {
    rhs.push_back(spatial_norm(f, setup.rhs.at(p1p), part));
    out.contamination = std::max(out.contamination, boundary_contamination(f));
  }
  out.denominator = time_norm(forcing.times, rhs, q1p);
  if (out.denominator == 0.0) throw PreconditionError("inhomogeneous ratio of a zero forcing");
  const ScalarSeries w = duhamel(forcing, setup.t_eval, alpha);
  std::vector<double> lhs;
  lhs.reserve(w.size());
  for (const auto& f : w.snapshots) lhs.push_back(spatial_norm(f, setup.lhs.at(setup.p), part));
  out.numerator = time_norm(w.times, lhs, setup.q);
  out.ratio = out.numerator / out.denominator;
  out.evolved_contamination = boundary_contamination(w.snapshots.back());
  return out;
}

// ---------------------------------------------------------------- parabolic

namespace {

// int_a^b s^{-gamma} N(s) ds with N linear between the end values; the
// weight is integrated exactly, which matters near s = 0. Needs gamma < 1.
double weighted_segment(double a, double b, double na, double nb, double gamma) {
  const double m0 = (std::pow(b, 1.0 - gamma) - std::pow(a, 1.0 - gamma)) / (1.0 - gamma);
  const double m1 = (std::pow(b, 2.0 - gamma) - std::pow(a, 2.0 - gamma)) / (2.0 - gamma);
  const double slope = (nb - na) / (b - a);
  return (na - slope * a) * m0 + slope * m1;
}

}  // namespace

ParabolicResult parabolic_ratio(const Field& f, double p, double alpha_value, double s_min, double s_max0,
                                double tail_tol, double ratio, int max_doublings) {
  const GridSpec& g = f.grid();
  const Alpha alpha(alpha_value, g.dim());
  if (std::abs(g.dim() - 2.0 * alpha_value) > 1e-12)
    throw PreconditionError("the parabolic estimate (b) holds only for n = 2 alpha");
  if (!(p > 2.0)) throw PreconditionError("the parabolic estimate (b) needs 2 < p <= inf");
  if (!(s_min > 0.0) || !(s_max0 > s_min) || !(ratio > 1.0))
    throw PreconditionError("parabolic s-grid needs 0 < s_min < s_max and ratio > 1");

  const Field base = to_spectral(f);
  const double w = 2.0 * inv(p);
  auto integrand = [&](double s, double* contamination) {
    const Field v = to_physical(apply_semigroup(base, s, alpha));
    if (contamination) *contamination = boundary_contamination(v);
    const double n = lp_norm(v, p);
    return n * n;
  };

  ParabolicResult out;
  const double n0 = lp_norm(to_physical(apply_semigroup(base, s_min, alpha)), p);
  out.head = std::pow(s_min, 1.0 - w) / (1.0 - w) * n0 * n0;
  double s = s_min, g_prev = integrand(s_min, nullptr), total = out.head;
  auto advance_to = [&](double target) {
    double added = 0.0;
    while (s < target * (1 - 1e-12)) {
      const double s_next = s * ratio;
      const double g_next = integrand(s_next, nullptr);
      added += weighted_segment(s, s_next, g_prev, g_next, w);
      s = s_next;
      g_prev = g_next;
    }
    return added;
  };
  total += advance_to(s_max0);
  int doublings = 0;
  for (;;) {
    const double added = advance_to(2.0 * s);
    total += added;
    out.tail_error = added / total;
    if (out.tail_error < tail_tol) break;
    if (++doublings >= max_doublings)
      throw ConvergenceError("parabolic s-integral did not settle within the doubling budget");
  }
  out.s_max = s;
  integrand(s, &out.sample.evolved_contamination);
  out.sample.numerator = std::sqrt(total);
  out.sample.denominator = lp_norm(f, 2.0);
  if (out.sample.denominator == 0.0) throw PreconditionError("parabolic ratio of a zero field");
  out.sample.ratio = out.sample.numerator / out.sample.denominator;
  out.sample.contamination = boundary_contamination(f);
  return out;
}

ParabolicResult parabolic_ratio_a(const Field& f, double r, double p, double alpha_value, double T,
                                  double s_min_fraction, double ratio) {
  const GridSpec& g = f.grid();
  const Alpha alpha(alpha_value, g.dim());
  if (!(g.dim() < 2.0 * alpha_value)) throw PreconditionError("the parabolic estimate (a) needs n < 2 alpha");
  require_range(r, "r");
  require_range(p, "p");
  if (r > p) throw PreconditionError("the parabolic estimate (a) needs 1 <= r <= p <= inf");
  if (!(T > 0.0)) throw PreconditionError("the parabolic estimate (a) needs 0 < T < inf");
  const double gamma = g.dim() * r * inv(p) / (2.0 * alpha_value);
  const Field base = to_spectral(f);
  auto integrand = [&](double s) { return std::pow(lp_norm(to_physical(apply_semigroup(base, s, alpha)), p), r); };
  const auto grid = geometric_times(s_min_fraction * T, T, ratio);
  ParabolicResult out;
  const double s_min = grid[1];
  out.head = std::pow(s_min, 1.0 - gamma) / (1.0 - gamma) * std::pow(lp_norm(to_physical(apply_semigroup(base, s_min, alpha)), p), r);
  double total = out.head, prev = integrand(s_min);
  for (std::size_t i = 2; i < grid.size(); ++i) {
    const double cur = integrand(grid[i]);
    total += weighted_segment(grid[i - 1], grid[i], prev, cur, gamma);
    prev = cur;
  }
  out.s_max = T;
  out.sample.numerator = total;
  out.sample.denominator = std::pow(T, 1.0 - alpha.sigma()) * std::pow(lp_norm(f, r), r);
  if (out.sample.denominator == 0.0) throw PreconditionError("parabolic ratio of a zero field");
  out.sample.ratio = out.sample.numerator / out.sample.denominator;
  out.sample.contamination = boundary_contamination(f);
  out.sample.evolved_contamination = boundary_contamination(apply_semigroup(base, T, alpha));
  return out;
}

// ---------------------------------------------------------------- decay

namespace {

double slope_of(const std::vector<double>& t, const std::vector<double>& v) {
  const std::size_t m = t.size();
  if (m < 2) throw PreconditionError("decay fit needs at least two positive times");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(t[i]), y = std::log(v[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double evolved_norm(const Field& spectral, double t, const Alpha& alpha, double p, bool gradient_variant,
                    double* contamination) {
  const Field v = apply_semigroup(spectral, t, alpha);
  if (contamination) *contamination = boundary_contamination(v);
  return gradient_variant ? lp_norm(gradient(v), p) : lp_norm(v, p);
}

void check_decay_setup(const DecaySetup& s) {
  require_range(s.r, "r");
  require_range(s.p, "p");
  if (s.r > s.p) throw PreconditionError("the decay estimate needs 1 <= r <= p <= inf");
  for (double t : s.times)
    if (!(t > 0.0)) throw PreconditionError("decay fit times must be positive");
}

void guard_data(double c) {
  if (c > 1e-6) {
    std::ostringstream msg;
    msg << "decay data leaks " << c << " of its mass outside the central half-box";
    throw ContaminationError(msg.str(), c);
  }
}

}  // namespace

DecayFit decay_fit(const Field& f, const DecaySetup& setup) {
  check_decay_setup(setup);
  const Alpha alpha(setup.alpha, f.grid().dim());
  DecayFit out;
  out.data_contamination = boundary_contamination(f);
  guard_data(out.data_contamination);
  out.predicted = -alpha.sigma() * (inv(setup.r) - inv(setup.p)) - (setup.gradient ? 1.0 / (2.0 * setup.alpha) : 0.0);
  const Field base = to_spectral(f);
  for (double t : setup.times) {
    double c = 0.0;
    out.norms.push_back(evolved_norm(base, t, alpha, setup.p, setup.gradient, &c));
    out.contamination = std::max(out.contamination, c);
  }
  out.times = setup.times;
  out.slope = slope_of(out.times, out.norms);
  return out;
}

DecayFit decay_fit(const GridSpec& grid, const Recipe& recipe, const DecaySetup& setup) {
  if (!setup.matched_scale) return decay_fit(synthesize_field(grid, recipe), setup);
  check_decay_setup(setup);
  const Alpha alpha(setup.alpha, grid.dim());
  DecayFit out;
  out.predicted = -alpha.sigma() * (inv(setup.r) - inv(setup.p)) - (setup.gradient ? 1.0 / (2.0 * setup.alpha) : 0.0);
  const double t0 = setup.times.front();
  for (double t : setup.times) {
    const Field f = synthesize_field(grid, dilate(recipe, std::pow(t / t0, -1.0 / (2.0 * setup.alpha))));
    const double c0 = boundary_contamination(f);
    out.data_contamination = std::max(out.data_contamination, c0);
    guard_data(c0);
    double c = 0.0;
    const double num = evolved_norm(to_spectral(f), t, alpha, setup.p, setup.gradient, &c);
    out.contamination = std::max(out.contamination, c);
    out.norms.push_back(num / lp_norm(f, setup.r));
  }
  out.times = setup.times;
  out.slope = slope_of(out.times, out.norms);
  return out;
}

DecayCase recommended_decay_case(int n, double alpha, double r, double p, bool gradient) {
  if (n < 1 || n > 3) throw PreconditionError("dimension must be 1, 2 or 3");
  const Alpha a(alpha, n);
  const bool matched = r > 1.0 || n > 1;
  const int N = n == 1 ? 4096 : n == 2 ? 128 : 64;
  GridSpec grid(n, N, static_cast<double>(N));  // dx = 1
  const double sigma0 = 1.5;
  // t with evolved spread ell: ell^2 = 2 t^{1/alpha}, the heat-kernel variance at alpha = 1.
  auto time_at = [&](double ell) { return std::pow(0.5 * ell * ell, alpha); };
  double t0, t1;
  if (matched) {
    // Data width grows with t^{1/2alpha}; the spread at t1 stays 5 sigma inside the half box.
    const double mu_max = n == 1 ? 16.0 : n == 2 ? 2.5 : 2.0;
    t0 = time_at(sigma0);
    t1 = t0 * std::pow(mu_max, 2.0 * alpha);
  } else {
    t0 = time_at(15.0 * sigma0);
    t1 = time_at(N / 22.0);
  }
  const int points = 30;
  std::vector<double> times(points);
  for (int i = 0; i < points; ++i) times[i] = t0 * std::pow(t1 / t0, static_cast<double>(i) / (points - 1));
  DecaySetup setup;
  setup.r = r;
  setup.p = p;
  setup.alpha = a.value;
  setup.times = std::move(times);
  setup.gradient = gradient;
  setup.matched_scale = matched;
  GaussianBump bump;
  bump.width = fwhm_from_sigma(sigma0);
  return {grid, bump, setup};
}

// ---------------------------------------------------------------- kernel mixed norm

KernelNormFit kernel_mixed_norm_fit(const GridSpec& grid, double alpha_value, double h, double r, double T,
                                    double contamination_tol) {
  const Alpha alpha(alpha_value, grid.dim());
  require_range(h, "h");
  require_range(r, "r");
  if (std::isinf(h)) throw PreconditionError("kernel mixed norm needs a finite time exponent h");
  const double gamma = alpha.sigma() * (1.0 - inv(r));
  const double window = h * gamma;
  if (!(window >= 0.0 && window < 1.0)) {
    std::ostringstream msg;
    msg << "kernel mixed norm needs (nh/2alpha)(1 - 1/r) in [0, 1); got " << window;
    throw PreconditionError(msg.str());
  }
  if (!(T > 0.0)) throw PreconditionError("kernel mixed norm needs T > 0");

  KernelNormFit out;
  const double dx = grid.spacing();
  // The 2T grid is the T grid scaled by 2, so quadrature errors cancel in the fit.
  auto mixed = [&](double final_time, double t_min, double* contamination) {
    std::vector<double> ts = geometric_times(t_min, final_time, 1.25);
    ts.erase(ts.begin());
    double total = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      double c = 0.0;
      const Field k = kernel_unchecked(grid, ts[i], alpha, i + 1 == ts.size() ? &c : nullptr);
      if (i + 1 == ts.size() && contamination) *contamination = c;
      const double v = std::pow(lp_norm(k, r), h);
      if (i == 0)
        total += ts[0] * v / (1.0 - window);
      else
        total += 0.5 * (ts[i] - ts[i - 1]) * (prev + v);
      prev = v;
    }
    return std::pow(total, 1.0 / h);
  };
  // Below t_min the lattice truncates the kernel's spectrum; the head term
  // covers (0, t_min) with the continuum power law instead.
  const double t_min = 20.0 * std::pow(dx / std::numbers::pi, 2.0 * alpha_value);
  if (!(t_min < 0.5 * T)) {
    std::ostringstream msg;
    msg << "grid too coarse for the kernel mixed norm: the first resolved time " << t_min << " is not below T/2";
    throw PreconditionError(msg.str());
  }
  out.norm_T = mixed(T, t_min, nullptr);
  out.norm_2T = mixed(2.0 * T, 2.0 * t_min, &out.contamination);
  if (out.contamination > contamination_tol) {
    std::ostringstream msg;
    msg << "kernel at t = 2T leaks " << out.contamination << " of its mass outside the central half-box";
    throw ContaminationError(msg.str(), out.contamination);
  }
  out.exponent = std::log(out.norm_2T / out.norm_T) / std::log(2.0);
  out.predicted = 1.0 / h - gamma;
  return out;
}

// ---------------------------------------------------------------- sweeps

RatioReport dilation_sweep(const std::string& estimate_id, const std::vector<double>& lambdas,
                           const std::function<RatioSample(double)>& ratio_at, double drift_tolerance,
                           double contamination_tol, bool parallel) {
  if (lambdas.empty()) throw PreconditionError("dilation sweep needs at least one lambda");
  std::vector<RatioSample> samples(lambdas.size());
  if (parallel) {
    std::vector<std::future<RatioSample>> jobs;
    for (double l : lambdas) jobs.push_back(std::async(std::launch::async, ratio_at, l));
    for (std::size_t i = 0; i < jobs.size(); ++i) samples[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < lambdas.size(); ++i) samples[i] = ratio_at(lambdas[i]);
  }

  RatioReport rep;
  rep.estimate_id = estimate_id;
  rep.lambdas = lambdas;
  rep.drift_tolerance = drift_tolerance;
  for (const auto& s : samples) {
    rep.ratios.push_back(s.ratio);
    rep.contamination.push_back(s.contamination);
    rep.evolved_contamination.push_back(s.evolved_contamination);
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (rep.contamination[i] > contamination_tol) {
      std::ostringstream msg;
      msg << estimate_id << ": dilated data at lambda = " << lambdas[i] << " leaks " << rep.contamination[i]
          << " of its mass outside the central half-box";
      throw ContaminationError(msg.str(), rep.contamination[i]);
    }
  }
  const double r0 = rep.ratios.front();
  for (double r : rep.ratios) rep.max_drift = std::max(rep.max_drift, std::abs(r / r0 - 1.0));
  bool inc = rep.ratios.size() > 1, dec = rep.ratios.size() > 1;
  for (std::size_t i = 1; i < rep.ratios.size(); ++i) {
    inc = inc && rep.ratios[i] > rep.ratios[i - 1];
    dec = dec && rep.ratios[i] < rep.ratios[i - 1];
  }
  rep.monotone = inc || dec;
  rep.verdict = rep.max_drift < drift_tolerance ? "invariant" : "drift";
  return rep;
}

// ---------------------------------------------------------------- forcing

double TimeProfile::operator()(double t) const {
  switch (kind) {
    case constant:
      return 1.0;
    case ramp_decay:
      return t / tau * std::exp(1.0 - t / tau);
    case oscillating:
      return std::sin(t / tau);
  }
  return 0.0;
}

ScalarSeries forcing_series(const std::vector<Field>& shapes, const std::vector<TimeProfile>& profiles,
                            const std::vector<double>& times) {
  if (shapes.empty() || shapes.size() != profiles.size())
    throw PreconditionError("forcing needs one time profile per spatial shape");
  ScalarSeries out;
  out.times = times;
  out.grading = classify_grading(times);
  for (double t : times) {
    Field f(shapes.front().grid(), shapes.front().representation());
    for (std::size_t i = 0; i < shapes.size(); ++i) f += profiles[i](t) * shapes[i];
    out.snapshots.push_back(std::move(f));
  }
  validate(out);
  return out;
}

}  // namespace frac
