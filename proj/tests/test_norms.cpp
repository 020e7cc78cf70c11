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

Field constant(const GridSpec& g, Complex c) {
  return Field(g, Representation::physical, ComplexArray::Constant(g.size(), c));
}

RandomBandlimited band(std::uint64_t seed, int j_min, int j_max, bool shells = false) {
  RandomBandlimited r;
  r.seed = seed;
  r.j_min = j_min;
  r.j_max = j_max;
  r.shells_only = shells;
  return r;
}

}  // namespace

TEST_CASE("exponent helpers") {
  CHECK(std::isinf(parse_exponent("inf")));
  CHECK(parse_exponent("2.5") == 2.5);
  CHECK_THROWS_AS(parse_exponent("0.5"), PreconditionError);
  CHECK(format_exponent(kInf) == "inf");
  CHECK(conjugate(2.0) == doctest::Approx(2.0));
  CHECK(std::isinf(conjugate(1.0)));
  CHECK(conjugate(kInf) == 1.0);
}

TEST_CASE("Lebesgue norms") {
  const GridSpec g = make_grid(2, 16, 3.0);
  CHECK(lp_norm(constant(g, 2.0), 4.0) == doctest::Approx(2.0 * std::pow(9.0, 0.25)).epsilon(1e-13));
  CHECK(lp_norm(constant(g, 2.0), kInf) == doctest::Approx(2.0));
  const GridSpec gw = make_grid(2, 16, 2.0 * pi);
  const Field w = synthesize_field(gw, PlaneWave{{1, 2}});
  for (double p : {1.0, 2.0, 3.0, kInf})
    CHECK(lp_norm(w, p) == doctest::Approx(std::pow(4.0 * pi * pi, inv(p))).epsilon(1e-12));

  const GridSpec g1 = make_grid(1, 256, 30.0);
  const Field gauss = oracle::sample(g1, [](const auto& x) { return std::exp(-0.5 * std::pow(x[0] - 15.0, 2)); });
  CHECK(std::abs(lp_norm(gauss, 2.0) - std::pow(pi, 0.25)) < 1e-6);
  CHECK_THROWS_AS(lp_norm(gauss, 0.5), PreconditionError);
}

TEST_CASE("Hoelder monotonicity on the normalized box") {
  const GridSpec g = make_grid(2, 32, 5.0);
  const Field f = oracle::white_noise(g, 9);
  double prev = 0.0;
  for (double p : {1.0, 1.5, 2.0, 3.0, 8.0, kInf}) {
    const double v = std::pow(g.volume(), -inv(p)) * lp_norm(f, p);
    CHECK(v >= prev * (1.0 - 1e-14));
    prev = v;
  }
}

TEST_CASE("mixed norms") {
  const GridSpec g = make_grid(2, 16, 2.0 * pi);
  const Field w = synthesize_field(g, PlaneWave{{1, 1}});
  const Alpha a(1.0, 2);
  const double T = 0.5, mu = 2.0, q = 3.0, p = 4.0;
  ScalarSeries still, decay;
  still.times = decay.times = uniform_times(T, 4000);
  for (double t : still.times) {
    still.snapshots.push_back(w);
    decay.snapshots.push_back(apply_semigroup(w, t, a));
  }
  const double Lnp = std::pow(4.0 * pi * pi, 1.0 / p);
  CHECK(mixed_norm(still, q, p) == doctest::Approx(std::pow(T, 1.0 / q) * Lnp).epsilon(1e-12));
  CHECK(mixed_norm(decay, kInf, p) == doctest::Approx(Lnp).epsilon(1e-12));
  const double ref = Lnp * std::pow(-std::expm1(-q * T * mu) / (q * mu), 1.0 / q);
  CHECK(std::abs(mixed_norm(decay, q, p) / ref - 1.0) < 1e-6);
  ScalarSeries one;
  one.times = {0.0};
  one.snapshots = {w};
  CHECK_THROWS_AS(mixed_norm(one, q, p), PreconditionError);
}

TEST_CASE("Sobolev norms") {
  const GridSpec g = make_grid(2, 16, 2.0 * pi);
  const Field w = synthesize_field(g, PlaneWave{{2, 0}});
  const double L2 = 2.0 * pi;
  CHECK(sobolev_norm(w, 1.5, 2.0, true) == doctest::Approx(std::pow(2.0, 1.5) * L2).epsilon(1e-12));
  CHECK(sobolev_norm(w, 1.5, 3.0, false) ==
        doctest::Approx(std::pow(5.0, 0.75) * std::pow(4.0 * pi * pi, 1.0 / 3.0)).epsilon(1e-12));
  const Field f = synthesize_field(g, band(2, 0, 2));
  CHECK(sobolev_norm(f, 0.0, 3.0, true) == doctest::Approx(lp_norm(f, 3.0)).epsilon(1e-12));
}

TEST_CASE("Littlewood-Paley partition") {
  const GridSpec g = make_grid(2, 128, 2.0 * pi);
  const DyadicPartition part = grid_partition(g);
  CHECK(part.j_min == 1);
  CHECK(part.j_max == 5);
  RealArray sum = RealArray::Zero(g.size());
  for (int j = part.j_min; j <= part.j_max; ++j) sum += part.psi_symbol(g, j);
  double worst = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    const double k = g.xi_norm()[i];
    if (k >= std::ldexp(1.0, part.j_min) && k <= std::ldexp(1.0, part.j_max - 1))
      worst = std::max(worst, std::abs(1.0 - sum[i]));
  }
  CHECK(worst < 1e-12);
  for (int j = part.j_min; j <= part.j_max; ++j) {
    const RealArray s = part.psi_symbol(g, j);
    for (Index i = 0; i < g.size(); ++i) {
      const double k = g.xi_norm()[i];
      if (k < std::ldexp(1.0, j - 1) || k > std::ldexp(1.0, j + 1)) CHECK(s[i] == 0.0);
    }
  }
  CHECK_THROWS_AS(make_partition(g, 0, 5), PreconditionError);
  CHECK_THROWS_AS(lp_block(synthesize_field(g, band(1, 2, 3)), 7, part), PreconditionError);
}

TEST_CASE("Littlewood-Paley blocks") {
  const GridSpec g = make_grid(2, 128, 2.0 * pi);
  const DyadicPartition part = grid_partition(g);
  // |k| = 2^3 lies where psi_3 = 1.
  const Field w = synthesize_field(g, PlaneWave{{8, 0}});
  CHECK(max_abs(lp_block(w, 3, part).data() - w.data()) < 1e-12);
  CHECK(max_abs(lp_block(w, 1, part).data()) < 1e-14);
  CHECK(max_abs(lp_block(w, 5, part).data()) < 1e-14);
  const Field w2 = synthesize_field(g, PlaneWave{{6, 0}});
  CHECK(max_abs(lp_block(w2, 3, part).data() - part.psi(3, 6.0) * w2.data()) < 1e-12);

  const Field f = synthesize_field(g, band(5, 1, 3));
  Field sum(g, Representation::physical);
  sum.data() = ComplexArray::Zero(g.size());
  for (int j = part.j_min; j <= part.j_max; ++j) sum += lp_block(f, j, part);
  CHECK(max_abs(sum.data() - f.data()) < 1e-12);
}

TEST_CASE("Besov norms") {
  const GridSpec g = make_grid(2, 128, 2.0 * pi);
  const DyadicPartition part = grid_partition(g);
  const Field f = synthesize_field(g, band(3, 3, 3, true));  // on |xi| = 8 only
  const double s = 0.7, p = 3.0;
  // Direct block-sum oracle.
  double acc = 0.0;
  for (int j = part.j_min; j <= part.j_max; ++j) acc += std::pow(std::pow(2.0, s * j) * lp_norm(lp_block(f, j, part), p), 2.0);
  CHECK(besov_norm(f, s, p, 2.0, true, part) == doctest::Approx(std::sqrt(acc)).epsilon(1e-10));
  CHECK(besov_norm(f, s, p, 2.0, true, part) == doctest::Approx(std::pow(2.0, 3 * s) * lp_norm(f, p)).epsilon(1e-10));

  // s = 0, p = q = 2 on dyadic shells gives the L2 norm.
  const Field shells = synthesize_field(g, band(8, 1, 4, true));
  CHECK(besov_norm(shells, 0.0, 2.0, 2.0, true, part) == doctest::Approx(lp_norm(shells, 2.0)).epsilon(1e-6));
  // Equivalence with the Sobolev norm at q = p = 2 (within 5%). Between the
  // shells the partition overlaps and only two-sided bounds hold.
  for (double so : {-0.5, 0.0, 1.0}) {
    const double b = besov_norm(shells, so, 2.0, 2.0, true, part), h = sobolev_norm(shells, so, 2.0, true);
    CHECK(std::abs(b / h - 1.0) < 0.05);
  }
  Field zero(g, Representation::physical);
  zero.data() = ComplexArray::Zero(g.size());
  CHECK(besov_norm(zero, s, p, 2.0, true, part) == 0.0);
  CHECK_THROWS_AS(besov_norm(synthesize_field(g, GaussianBump{{}, 1.0, 1.0}), s, p, 2.0, true, part),
                  PreconditionError);
  CHECK_NOTHROW(besov_norm(synthesize_field(g, GaussianBump{{}, 1.0, 1.0}), s, p, 2.0, false, part));
}

TEST_CASE("BMO") {
  const GridSpec g = make_grid(2, 32, 1.0);
  CHECK(bmo_norm(constant(g, 3.0)) == 0.0);
  for (unsigned seed = 1; seed <= 3; ++seed) {
    const Field f = to_physical(synthesize_field(g, band(seed, 2, 3)));
    const double fast = bmo_norm(f), brute = oracle::bmo_brute_force(f);
    CHECK(std::abs(fast - brute) <= 1e-12 * brute);
    CHECK(fast <= 2.0 * lp_norm(f, kInf));
  }
  const Field noise = oracle::white_noise(g, 4);
  CHECK(std::abs(bmo_norm(noise) - oracle::bmo_brute_force(noise)) <= 1e-12 * bmo_norm(noise));

  // A whole-cube shift of a field supported in one quadrant changes nothing.
  const Field bump = synthesize_field(g, GaussianBump{{0.25}, 0.08, 1.0});
  const Field moved = synthesize_field(g, GaussianBump{{0.75, 0.25}, 0.08, 1.0});
  CHECK(std::abs(bmo_norm(bump) - bmo_norm(moved)) < 1e-14);

  const GridSpec g1 = make_grid(1, 16, 1.0);
  const Field step = oracle::sample(g1, [](const auto& x) { return x[0] < 0.5 ? 1.0 : -1.0; });
  CHECK(bmo_norm(step) == doctest::Approx(1.0));
  CHECK(bmo_scan(step).level == 4);
}

TEST_CASE("spatial_norm dispatch") {
  const GridSpec g = make_grid(2, 64, 2.0 * pi);
  const Field f = synthesize_field(g, band(2, 1, 3));
  CHECK(spatial_norm(f, Lebesgue{3.0}) == lp_norm(f, 3.0));
  CHECK(spatial_norm(f, Sobolev{1.0, 2.0, true}) == sobolev_norm(f, 1.0, 2.0, true));
  CHECK(spatial_norm(f, Bmo{}) == bmo_norm(f));
  CHECK(describe(Lebesgue{kInf}) == "L^inf");
}
