#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frac/errors.hpp"
#include "frac/norms.hpp"
#include "frac/recipes.hpp"
#include "frac/semigroup.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace frac;
using oracle::pi;

namespace {

double max_abs(const ComplexArray& a) { return a.abs().maxCoeff(); }

Complex inner(const Field& a, const Field& b) {
  return (a.data() * b.data().conjugate()).sum() * a.grid().cell_volume();
}

RandomBandlimited band(std::uint64_t seed, int j_min, int j_max) {
  RandomBandlimited r;
  r.seed = seed;
  r.j_min = j_min;
  r.j_max = j_max;
  return r;
}

}  // namespace

TEST_CASE("semigroup identity, eigenfunctions, negative time") {
  const GridSpec g = make_grid(2, 32, 2.0 * pi);
  const Alpha a(0.75, 2);
  const Field f = synthesize_field(g, band(1, 0, 3));
  CHECK(max_abs(apply_semigroup(f, 0.0, a).data() - f.data()) == 0.0);
  CHECK_THROWS_AS(apply_semigroup(f, -1.0, a), PreconditionError);

  const Field w = synthesize_field(g, PlaneWave{{2, -1}});
  const double t = 0.3, k2 = 5.0;
  const Field out = apply_semigroup(w, t, a);
  CHECK(max_abs(out.data() - std::exp(-t * std::pow(k2, 0.75)) * w.data()) < 1e-13);
  CHECK(out.is_physical());
}

TEST_CASE("heat flow of a Gaussian matches the closed form") {
  const double L = 40.0;
  const GridSpec g = make_grid(1, 512, L);
  const Field f = oracle::sample(g, [&](const auto& x) { return std::exp(-0.5 * std::pow(x[0] - L / 2, 2)); });
  for (double t : {0.1, 1.0, 3.0}) {
    const Field u = apply_semigroup(f, t, Alpha(1.0, 1));
    const Field ref = oracle::sample(g, [&](const auto& x) {
      const double s = 1.0 + 2.0 * t;
      return std::exp(-0.5 * std::pow(x[0] - L / 2, 2) / s) / std::sqrt(s);
    });
    double worst = 0.0;
    for (int i = 128; i < 384; ++i) worst = std::max(worst, std::abs(u.data()[i] - ref.data()[i]));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("semigroup law, self-adjointness, commutation, contractivity") {
  const GridSpec g = make_grid(2, 32, 2.0 * pi);
  const Alpha a(0.6, 2);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Field f = synthesize_field(g, band(seed, 0, 3));
    const Field h = synthesize_field(g, band(100 + seed, 0, 3));
    const Field st = apply_semigroup(apply_semigroup(f, 0.2, a), 0.3, a);
    CHECK(max_abs(st.data() - apply_semigroup(f, 0.5, a).data()) < 1e-12);
    const Complex lhs = inner(apply_semigroup(f, 0.4, a), h);
    const Complex rhs = inner(f, apply_semigroup(h, 0.4, a));
    CHECK(std::abs(lhs - rhs) < 1e-12);
    const Field c1 = apply_semigroup(fractional_derivative(f, 1.3, DerivativeKind::homogeneous), 0.1, a);
    const Field c2 = fractional_derivative(apply_semigroup(f, 0.1, a), 1.3, DerivativeKind::homogeneous);
    CHECK(max_abs(c1.data() - c2.data()) < 1e-12);
    CHECK(lp_norm(apply_semigroup(f, 0.7, a), 2.0) <= lp_norm(f, 2.0));
    CHECK(is_real(apply_semigroup(f, 0.7, a)));
  }
}

TEST_CASE("kernel mass, L2 norm and scaling") {
  const GridSpec g = make_grid(2, 128, 8.0);
  const double t = 0.01;
  const Field k = kernel(g, t, Alpha(1.0, 2));
  CHECK(std::abs(k.data().sum().real() * g.cell_volume() - 1.0) < 1e-10);
  CHECK(lp_norm(k, 2.0) == doctest::Approx(1.0 / std::sqrt(8.0 * pi * t)).epsilon(0.005));

  // K_t(x) = t^{-n/2alpha} K_1(t^{-1/2alpha} x): compare K_{t} on a box of side
  // L with K_{1} on a box of side L t^{-1/2alpha} at the same sample indices.
  const double alpha = 0.75, tt = 0.05;
  const GridSpec small = make_grid(1, 1024, 6.0);
  const GridSpec big = make_grid(1, 1024, 6.0 * std::pow(tt, -1.0 / (2.0 * alpha)));
  const Field kt = kernel_unchecked(small, tt, Alpha(alpha, 1));
  const Field k1 = kernel_unchecked(big, 1.0, Alpha(alpha, 1));
  const double scale = std::pow(tt, -1.0 / (2.0 * alpha));
  double worst = 0.0, peak = max_abs(kt.data());
  for (int i = 384; i < 640; ++i) worst = std::max(worst, std::abs(kt.data()[i] - scale * k1.data()[i]));
  CHECK(worst / peak < 1e-6);

  CHECK_THROWS_AS(kernel(g, 10.0, Alpha(1.0, 2)), ContaminationError);
}

TEST_CASE("fractional derivatives") {
  const GridSpec g = make_grid(2, 32, 2.0 * pi);
  const Field w = synthesize_field(g, PlaneWave{{3, 4}});
  const Field d = fractional_derivative(w, 0.5, DerivativeKind::homogeneous);
  CHECK(max_abs(d.data() - std::pow(5.0, 0.5) * w.data()) < 1e-12);
  const Field di = fractional_derivative(w, -1.0, DerivativeKind::inhomogeneous);
  CHECK(max_abs(di.data() - std::pow(26.0, -0.5) * w.data()) < 1e-12);

  const Field f = synthesize_field(g, band(3, 0, 3));
  CHECK(max_abs(fractional_derivative(f, 0.0, DerivativeKind::homogeneous).data() - f.data()) < 1e-14);
  const Field twice = fractional_derivative(fractional_derivative(f, 1.0, DerivativeKind::homogeneous), 1.0,
                                            DerivativeKind::homogeneous);
  CHECK(max_abs(twice.data() - fractional_derivative(f, 2.0, DerivativeKind::homogeneous).data()) < 1e-12);

  const Field bump = synthesize_field(g, GaussianBump{{}, 1.0, 1.0});
  CHECK_THROWS_AS(fractional_derivative(bump, -0.5, DerivativeKind::homogeneous), PreconditionError);
  CHECK_NOTHROW(fractional_derivative(bump, 0.5, DerivativeKind::homogeneous));
}

TEST_CASE("Riesz transforms") {
  const GridSpec g = make_grid(2, 32, 2.0 * pi);
  const Field w = synthesize_field(g, PlaneWave{{3, 4}});
  CHECK(max_abs(riesz_transform(w, 0).data() - Complex(0.0, 0.6) * w.data()) < 1e-12);
  CHECK(max_abs(riesz_transform(w, 1).data() - Complex(0.0, 0.8) * w.data()) < 1e-12);

  const Field f = synthesize_field(g, band(4, 0, 3));
  Field sum = riesz_transform(riesz_transform(f, 0), 0);
  sum += riesz_transform(riesz_transform(f, 1), 1);
  CHECK(max_abs(sum.data() + f.data()) < 1e-12);
  CHECK(is_real(riesz_transform(f, 0)));
  CHECK_THROWS(riesz_transform(f, 2));
}

TEST_CASE("phi functions") {
  for (double z : {-1e-6, -5e-3, -0.3, -7.0, -200.0}) {
    const double p1 = std::expm1(z) / z;
    const double p2 = (std::expm1(z) - z) / (z * z);
    CHECK(phi1(z) == doctest::Approx(p1).epsilon(1e-12));
    if (std::abs(z) > 1e-3) CHECK(phi2(z) == doctest::Approx(p2).epsilon(1e-9));
  }
  CHECK(phi2(0.0) == doctest::Approx(0.5));
  CHECK(phi1(0.0) == doctest::Approx(1.0));
}

TEST_CASE("Duhamel integral") {
  const GridSpec g = make_grid(2, 16, 2.0 * pi);
  const Alpha a(0.8, 2);
  const Field w = synthesize_field(g, PlaneWave{{1, 2}});
  const double mu = std::pow(5.0, 0.8);
  const auto times = uniform_times(1.0, 10);

  ScalarSeries zero, constant;
  zero.times = constant.times = times;
  for (std::size_t i = 0; i < times.size(); ++i) {
    zero.snapshots.emplace_back(g, Representation::physical);
    constant.snapshots.push_back(w);
  }
  for (const auto& s : duhamel(zero, times, a).snapshots) CHECK(max_abs(s.data()) == 0.0);

  const ScalarSeries out = duhamel(constant, times, a);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double factor = -std::expm1(-times[i] * mu) / mu;
    CHECK(max_abs(out.snapshots[i].data() - factor * w.data()) < 1e-10);
  }

  // t_eval between samples and outside coverage.
  const ScalarSeries mid = duhamel(constant, {0.0, 0.55}, a);
  CHECK(max_abs(mid.snapshots[1].data() + std::expm1(-0.55 * mu) / mu * w.data()) < 1e-10);
  CHECK_THROWS_AS(duhamel(constant, {1.5}, a), PreconditionError);
}

TEST_CASE("Duhamel quadrature converges at second order") {
  // F(s) = sin(3 s) on one mode; ETD2 is exact for linear F, so a curved
  // profile is needed to see the order.
  const double mu = 2.0, T = 1.0;
  const double exact = (3.0 * std::exp(-mu * T) - 3.0 * std::cos(3.0 * T) + mu * std::sin(3.0 * T)) / (mu * mu + 9.0);
  double prev = 0.0;
  for (int steps : {8, 16, 32, 64}) {
    const auto t = uniform_times(T, steps);
    std::vector<ComplexArray> F(t.size(), ComplexArray(1));
    std::vector<const ComplexArray*> ptr;
    for (std::size_t i = 0; i < t.size(); ++i) {
      F[i][0] = std::sin(3.0 * t[i]);
      ptr.push_back(&F[i]);
    }
    RealArray rates(1);
    rates[0] = mu;
    const double err = std::abs(duhamel_modes(t, ptr, rates, {T})[0][0].real() - exact);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.1));
    prev = err;
  }
}
