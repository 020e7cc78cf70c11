#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frac/errors.hpp"
#include "frac/field_io.hpp"
#include "frac/grid.hpp"
#include "frac/norms.hpp"
#include "frac/recipes.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace frac;
using oracle::pi;

namespace {

double max_abs(const ComplexArray& a) { return a.abs().maxCoeff(); }

}  // namespace

TEST_CASE("make_grid lattice") {
  const GridSpec g = make_grid(1, 8, 2.0 * pi);
  const auto f = g.frequencies();
  REQUIRE(f.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(f[i] == doctest::Approx(i - 4.0).epsilon(1e-14));

  const GridSpec g2 = make_grid(2, 64, 32.0);
  CHECK(g2.size() == 64 * 64);
  CHECK(g2.spectral_spacing() == doctest::Approx(2.0 * pi / 32.0));
  CHECK(g2.cell_volume() == doctest::Approx(0.25));

  CHECK_THROWS_AS(make_grid(3, 4, 1.0), PreconditionError);
  CHECK_THROWS_AS(make_grid(2, 48, 1.0), PreconditionError);
  CHECK_THROWS_AS(make_grid(4, 8, 1.0), PreconditionError);
  CHECK_THROWS_AS(make_grid(1, 8, 0.0), PreconditionError);
}

TEST_CASE("lattice is symmetric apart from Nyquist") {
  const GridSpec g = make_grid(2, 16, 3.0);
  for (int i = 0; i < 16; ++i) {
    if (g.is_nyquist(i)) continue;
    const int k = g.wavenumber(i);
    const int j = (16 - i) % 16;
    CHECK(g.wavenumber(j) == -k);
  }
}

TEST_CASE("plane wave is a single spectral mode") {
  const GridSpec g = make_grid(2, 16, 2.0 * pi);
  const Field f = synthesize_field(g, PlaneWave{{1, 0}});
  const Field ref = oracle::sample(g, [](const auto& x) { return std::exp(Complex(0.0, x[0])); });
  CHECK(max_abs(f.data() - ref.data()) < 1e-13);
  const Field s = to_spectral(f);
  int nonzero = 0;
  for (Index i = 0; i < g.size(); ++i)
    if (std::abs(s.data()[i]) > 1e-10) {
      ++nonzero;
      const auto idx = g.unflatten(i);
      CHECK(g.wavenumber(idx[0]) == 1);
      CHECK(g.wavenumber(idx[1]) == 0);
    }
  CHECK(nonzero == 1);
}

TEST_CASE("round trip and Parseval") {
  for (int n = 1; n <= 3; ++n) {
    const GridSpec g = make_grid(n, n == 3 ? 16 : 32, 5.0);
    const Field f = oracle::white_noise(g, 11 + n);
    const Field s = to_spectral(f);
    const Field back = to_physical(s);
    CHECK(max_abs(back.data() - f.data()) / max_abs(f.data()) < 1e-12);
    const double phys = f.data().abs2().sum() * g.cell_volume();
    const double spec = s.data().abs2().sum() * g.spectral_cell_volume();
    CHECK(std::abs(phys - spec) / phys < 1e-10);
  }
}

TEST_CASE("transform rejects a representation mismatch") {
  const GridSpec g = make_grid(1, 8, 1.0);
  const Field f(g, Representation::physical);
  CHECK_THROWS_AS(transform(f, Direction::inverse), PreconditionError);
  CHECK_THROWS_AS(transform(to_spectral(f), Direction::forward), PreconditionError);
}

TEST_CASE("real bump has conjugate-symmetric coefficients") {
  const GridSpec g = make_grid(2, 32, 10.0);
  const Field s = to_spectral(synthesize_field(g, GaussianBump{{}, 1.5, 1.0}));
  double worst = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    auto idx = g.unflatten(i);
    if (g.is_nyquist(idx[0]) || g.is_nyquist(idx[1])) continue;
    std::array<int, 3> neg{(32 - idx[0]) % 32, (32 - idx[1]) % 32, 0};
    worst = std::max(worst, std::abs(s.data()[i] - std::conj(s.data()[g.flatten(neg)])));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("gaussian bump sits in the central half-box") {
  const double L = 16.0;
  const GridSpec g = make_grid(2, 64, L);
  const Field f = synthesize_field(g, GaussianBump{{L / 2}, L / 16, 1.0});
  CHECK(is_real(f));
  CHECK(f.data().real().minCoeff() > 0.0);
  Index arg;
  f.data().real().maxCoeff(&arg);
  const auto idx = g.unflatten(arg);
  CHECK(idx[0] == 32);
  CHECK(idx[1] == 32);
  CHECK(boundary_contamination(f) < 1e-8);
  CHECK_THROWS_AS(synthesize_field(g, GaussianBump{{}, L / 3, 1.0}), PreconditionError);
}

TEST_CASE("random_bandlimited is real, zero-mean and in band") {
  const GridSpec g = make_grid(2, 64, 2.0 * pi);
  RandomBandlimited r;
  r.seed = 7;
  r.j_min = 2;
  r.j_max = 4;
  const Field f = synthesize_field(g, r);
  CHECK(is_real(f));
  CHECK(std::abs(mean(f)) < 1e-12);
  CHECK(lp_norm(f, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  const Field s = to_spectral(f);
  double outside = 0.0, total = s.data().abs2().sum();
  for (Index i = 0; i < g.size(); ++i) {
    const double k = g.xi_norm()[i];
    if (k < 4.0 || k >= 32.0) outside += std::norm(s.data()[i]);
  }
  CHECK(outside / total < 1e-28);
  // Same seed, same field.
  CHECK(max_abs(synthesize_field(g, r).data() - f.data()) == 0.0);
  r.j_max = 6;
  CHECK_THROWS_AS(synthesize_field(g, r), PreconditionError);
}

TEST_CASE("translation by one cell is a phase") {
  const GridSpec g = make_grid(1, 64, 8.0);
  const double dx = g.spacing();
  const Field a = synthesize_field(g, GaussianBump{{4.0}, 1.0, 1.0});
  const Field b = synthesize_field(g, GaussianBump{{4.0 + dx}, 1.0, 1.0});
  for (int i = 1; i < 64; ++i) CHECK(std::abs(b.data()[i] - a.data()[i - 1]) < 1e-15);
  const Field sa = to_spectral(a), sb = to_spectral(b);
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    const Complex phase = std::exp(Complex(0.0, -g.xi(0)[i] * dx));
    worst = std::max(worst, std::abs(sb.data()[i] - phase * sa.data()[i]));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("time grids") {
  const auto u = uniform_times(1.0, 4);
  CHECK(u == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(classify_grading(u) == Grading::uniform);
  const auto g = geometric_times(1e-3, 1.0, 1.25);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  for (std::size_t i = 3; i + 1 < g.size(); ++i)
    CHECK((g[i] - g[i - 1]) / (g[i - 1] - g[i - 2]) == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("field files round-trip and hash like git blobs") {
  const GridSpec g = make_grid(2, 8, 3.0);
  const Field f = oracle::white_noise(g, 3);
  const std::string bytes = serialize_field(f);
  CHECK(bytes.size() == 32 + 16 * 64);
  CHECK(bytes.substr(0, 4) == "FRSF");
  const Field back = deserialize_field(bytes);
  CHECK(back.grid() == g);
  CHECK(max_abs(back.data() - f.data()) == 0.0);
  // `printf 'hello\n' | git hash-object --stdin`
  CHECK(blob_hash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
  CHECK(blob_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK_THROWS(deserialize_field(bytes.substr(0, 40)));
}
