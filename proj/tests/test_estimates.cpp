#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frac/errors.hpp"
#include "frac/estimates.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace frac;
using oracle::pi;

namespace {

// Composite Simpson on [0, T].
template <class Fn>
double simpson(Fn&& fn, double T, int m = 20000) {
  const double h = T / m;
  double s = fn(0.0) + fn(T);
  for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * fn(i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("admissibility arithmetic") {
  for (auto [n, a] : {std::pair{3, 1.0}, std::pair{4, 1.0}, std::pair{2, 0.5}}) {
    const double sigma = n / (2.0 * a);
    CHECK(std::abs(check_admissible({2.0, 2.0 * n / (n - 2.0 * a), 2.0, sigma})) < 1e-12);
  }
  for (auto [n, a] : {std::pair{1, 1.0}, std::pair{2, 1.5}}) {
    const double sigma = n / (2.0 * a);
    CHECK(std::abs(check_admissible({4.0 * a / n, kInf, 2.0, sigma})) < 1e-12);
  }
  CHECK(check_admissible({kInf, 2.0, 2.0, 1.0}) == 0.0);
  CHECK_THROWS_AS(check_admissible({2.0, 2.0, 4.0, 1.0}), PreconditionError);
}

TEST_CASE("scaling relation") {
  CHECK(std::abs(check_scaling_relation(2.0, 4.0, 2.0, 4.0, 1.0, 4)) < 1e-14);
  // Two admissible pairs with r = 2 always satisfy the relation.
  for (double sigma : {0.5, 1.0, 2.0}) {
    for (double p : {2.5, 3.0, 6.0})
      for (double p1 : {2.2, 4.0, 10.0}) {
        const double q = 1.0 / (sigma * (0.5 - 1.0 / p)), q1 = 1.0 / (sigma * (0.5 - 1.0 / p1));
        if (q < 1.0 || q1 < 1.0) continue;
        CHECK(std::abs(check_scaling_relation(q, p, q1, p1, 1.0, static_cast<int>(2 * sigma))) < 1e-12);
      }
  }
  // (2, inf) is admissible for sigma = 1, so the pair satisfies the relation.
  CHECK(std::abs(check_scaling_relation(2.0, kInf, 2.0, kInf, 1.0, 2)) < 1e-14);
  CHECK(std::abs(check_sobolev_relation(1.2, 1.2, 0.5, 2)) < 1e-12);
}

TEST_CASE("homogeneous ratio of a plane wave") {
  const GridSpec g = make_grid(2, 16, 2.0 * pi);
  const Field w = synthesize_field(g, PlaneWave{{1, 2}});
  const double T = 0.4, q = 3.0, p = 6.0, alpha = 0.75, mu = std::pow(5.0, alpha);
  HomogeneousSetup s;
  s.q = q;
  s.p = p;
  s.alpha = alpha;
  s.times = uniform_times(T, 4000);
  const double vol = 4.0 * pi * pi;
  const double ref = std::pow(vol, 1.0 / p) * std::pow(-std::expm1(-q * T * mu) / (q * mu), 1.0 / q) / std::sqrt(vol);
  CHECK(std::abs(homogeneous_ratio(w, s).ratio / ref - 1.0) < 1e-6);

  Field zero(g, Representation::physical);
  zero.data() = ComplexArray::Zero(g.size());
  CHECK_THROWS_AS(homogeneous_ratio(zero, s), PreconditionError);
  s.q = 2.0;
  s.p = kInf;
  s.alpha = 1.0;
  CHECK_THROWS_AS(homogeneous_ratio(w, s), PreconditionError);
  s.norm.kind = EstimateNorm::bmo;
  s.alpha = 0.75;
  CHECK_THROWS_AS(homogeneous_ratio(w, s), PreconditionError);
}

TEST_CASE("inhomogeneous ratio of a constant single mode") {
  const GridSpec g = make_grid(2, 16, 2.0 * pi);
  const Field w = synthesize_field(g, PlaneWave{{1, 1}});
  const double T = 0.6, alpha = 1.0, mu = 2.0, q = 4.0, p = 4.0;
  const auto times = uniform_times(T, 4000);
  ScalarSeries F;
  F.times = times;
  for (std::size_t i = 0; i < times.size(); ++i) F.snapshots.push_back(w);
  InhomogeneousSetup s;
  s.q = q;
  s.p = p;
  s.q1 = 4.0;
  s.p1 = 4.0;
  s.alpha = alpha;
  s.t_eval = times;
  const double vol = 4.0 * pi * pi;
  const double lhs =
      std::pow(vol, 1.0 / p) * std::pow(simpson([&](double t) { return std::pow(-std::expm1(-t * mu) / mu, q); }, T), 1.0 / q);
  const double rhs = std::pow(vol, 0.75) * std::pow(T, 0.75);
  CHECK(std::abs(inhomogeneous_ratio(F, s).ratio / (lhs / rhs) - 1.0) < 1e-6);

  s.p = 5.0;
  CHECK_THROWS_AS(inhomogeneous_ratio(F, s), PreconditionError);
  s.p = 4.0;
  ScalarSeries zero = F;
  for (auto& z : zero.snapshots) z.data().setZero();
  CHECK_THROWS_AS(inhomogeneous_ratio(zero, s), PreconditionError);
}

TEST_CASE("parabolic ratio") {
  const GridSpec g = make_grid(2, 128, 128.0);
  LaplacianBump b;
  b.width = fwhm_from_sigma(5.0);
  const Field f = synthesize_field(g, b);
  const ParabolicResult r = parabolic_ratio(f, 4.0, 1.0);
  CHECK(std::isfinite(r.sample.ratio));
  CHECK(r.sample.ratio > 0.0);
  CHECK(r.tail_error < 1e-6);
  CHECK_THROWS_AS(parabolic_ratio(f, 2.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(parabolic_ratio(f, 4.0, 0.75), PreconditionError);

  // a-form, n = 1, alpha = 1, r = p = 2: for T far below the data's time
  // scale the norm is flat, so LHS = 2 T^{1/2} ||f||^2 and the ratio is
  // 2 T^{1/2 - (1 - n/2alpha)}.
  const GridSpec g1 = make_grid(1, 1024, 1024.0);
  const Field f1 = synthesize_field(g1, GaussianBump{{}, 60.0, 1.0});
  const double T = 1e-2;
  const ParabolicResult a = parabolic_ratio_a(f1, 2.0, 2.0, 1.0, T);
  CHECK(a.sample.ratio == doctest::Approx(2.0 * std::pow(T, 0.5 - 0.5)).epsilon(1e-3));
  CHECK(a.sample.ratio <= 2.0 * std::pow(T, 0.5 - 0.5) * (1.0 + 1e-9));
}

TEST_CASE("decay fits") {
  const DecayCase c = recommended_decay_case(1, 1.0, 1.0, kInf);
  const DecayFit fit = decay_fit(c.grid, c.recipe, c.setup);
  CHECK(fit.predicted == doctest::Approx(-0.5));
  CHECK(std::abs(fit.slope / fit.predicted - 1.0) < 0.02);
  CHECK(fit.contamination < 1e-6);

  const DecayCase cg = recommended_decay_case(1, 1.0, 1.0, kInf, true);
  const DecayFit gfit = decay_fit(cg.grid, cg.recipe, cg.setup);
  CHECK(gfit.predicted == doctest::Approx(-1.0));
  CHECK(std::abs(gfit.slope / gfit.predicted - 1.0) < 0.02);

  // r = p: no decay while the spread is still small against the bump.
  const GridSpec g = make_grid(1, 1024, 1024.0);
  DecaySetup s;
  s.r = s.p = 2.0;
  s.times = {1e-4, 2e-4, 5e-4, 1e-3};
  const DecayFit flat = decay_fit(synthesize_field(g, GaussianBump{{}, 40.0, 1.0}), s);
  CHECK(flat.predicted == 0.0);
  CHECK(std::abs(flat.slope) < 1e-3);

  s.r = 3.0;
  CHECK_THROWS_AS(decay_fit(synthesize_field(g, GaussianBump{{}, 40.0, 1.0}), s), PreconditionError);
  s.r = 1.0;
  s.p = 2.0;
  CHECK_THROWS_AS(decay_fit(synthesize_field(g, GaussianBump{{10.0}, 40.0, 1.0}), s), ContaminationError);
}

TEST_CASE("kernel mixed norm") {
  const GridSpec g = make_grid(2, 128, 96.0);
  const KernelNormFit k = kernel_mixed_norm_fit(g, 1.0, 1.0, 2.0, 4.0);
  CHECK(std::abs(k.exponent / 0.5 - 1.0) < 0.01);
  // ||K_t||_2 = (8 pi t)^{-1/2} integrated over (0, T].
  CHECK(k.norm_T == doctest::Approx(2.0 * std::sqrt(4.0) / std::sqrt(8.0 * pi)).epsilon(0.005));

  const KernelNormFit one = kernel_mixed_norm_fit(g, 1.0, 2.0, 1.0, 4.0);
  CHECK(one.exponent == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(one.norm_T == doctest::Approx(2.0).epsilon(1e-6));
  CHECK_THROWS_AS(kernel_mixed_norm_fit(g, 1.0, 2.4, 2.0, 4.0), PreconditionError);
}

TEST_CASE("dilation sweeps") {
  const GridSpec g = make_grid(2, 128, 128.0);
  const Recipe bump = GaussianBump{{}, 12.0, 1.0};
  const auto times = default_time_grid(10.0);
  auto ratio_for = [&](double p) {
    return [&, p](double lambda) {
      HomogeneousSetup s;
      s.q = 4.0;
      s.p = p;
      s.alpha = 1.0;
      s.times = scale_times(times, lambda, 1.0);
      return homogeneous_ratio(synthesize_field(g, dilate(bump, lambda)), s);
    };
  };
  const RatioReport single = dilation_sweep("homogeneous", {1.0}, ratio_for(4.0));
  CHECK(single.max_drift == 0.0);
  const RatioReport ok = dilation_sweep("homogeneous", {1.0, 2.0, 4.0}, ratio_for(4.0));
  CHECK(ok.max_drift < 0.01);
  CHECK(ok.verdict == "invariant");
  const RatioReport bad = dilation_sweep("homogeneous", {1.0, 2.0, 4.0}, ratio_for(4.5));
  CHECK(bad.max_drift > 0.05);
  CHECK(bad.monotone);
  CHECK(bad.verdict == "drift");
  // Parallel and sequential sweeps agree bit for bit.
  const RatioReport seq = dilation_sweep("homogeneous", {1.0, 2.0, 4.0}, ratio_for(4.0), 0.01, 1e-6, false);
  CHECK(seq.ratios == ok.ratios);

  auto leaky = [&](double lambda) {
    HomogeneousSetup s;
    s.q = 4.0;
    s.p = 4.0;
    s.times = times;
    return homogeneous_ratio(synthesize_field(g, GaussianBump{{20.0}, 12.0 / lambda, 1.0}), s);
  };
  CHECK_THROWS_AS(dilation_sweep("homogeneous", {1.0, 2.0}, leaky), ContaminationError);
}

TEST_CASE("Sobolev variant of the inhomogeneous estimate is scale invariant") {
  // n = 2, alpha = 1/2: L^2_t L^4_x against L^{q1'}_t Hdot^{1/2, p1'}_x with
  // q1' = p1' = 6/5, which solves 1/q + 2 (1/p - 1/2) = 3/2. The forcing is
  // zero-mean: the half derivative of a Gaussian has an |x|^{-5/2} tail that
  // the periodic box cuts off, worth a few percent in L^{6/5}.
  const GridSpec g = make_grid(2, 256, 256.0);
  const double alpha = 0.5;
  const Recipe bump = LaplacianBump{{}, 24.0, 1, 1.0};
  const auto times = default_time_grid(2.0, 60);
  InhomogeneousSetup s;
  s.alpha = alpha;
  s.q = 2.0;
  s.p = 4.0;
  s.q1 = s.p1 = 6.0;
  s.relation = InhomogeneousSetup::sobolev_variant;
  s.rhs.kind = EstimateNorm::sobolev;
  s.rhs.order = alpha;
  const RatioReport r = dilation_sweep(
      "inhomogeneous-sobolev", {1.0, 2.0, 4.0},
      [&](double lambda) {
        InhomogeneousSetup local = s;
        local.t_eval = scale_times(times, lambda, alpha);
        TimeProfile prof{TimeProfile::ramp_decay, 0.5 / std::pow(lambda, 2.0 * alpha)};
        return inhomogeneous_ratio(
            forcing_series({synthesize_field(g, dilate(bump, lambda))}, {prof}, local.t_eval), local);
      });
  CHECK(std::isfinite(r.ratios[0]));
  CHECK(r.max_drift < 0.01);
}

TEST_CASE("time profiles and forcing series") {
  const TimeProfile ramp{TimeProfile::ramp_decay, 2.0};
  CHECK(ramp(0.0) == 0.0);
  CHECK(ramp(2.0) == doctest::Approx(1.0));
  const TimeProfile c{TimeProfile::constant, 1.0};
  CHECK(c(5.0) == 1.0);
  const GridSpec g = make_grid(1, 8, 1.0);
  const Field w = synthesize_field(g, PlaneWave{{1}});
  const ScalarSeries F = forcing_series({w}, {ramp}, {0.0, 2.0});
  CHECK(F.snapshots[1].data().isApprox(w.data()));
}
