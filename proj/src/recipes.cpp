#include "frac/recipes.hpp"

#include "frac/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace frac {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::array<double, 3> resolve_center(const GridSpec& g, const std::vector<double>& c) {
  std::array<double, 3> out{0, 0, 0};
  for (int a = 0; a < g.dim(); ++a) {
    if (c.empty())
      out[a] = 0.5 * g.length();
    else if (c.size() == 1)
      out[a] = c[0];
    else if (static_cast<int>(c.size()) == g.dim())
      out[a] = c[a];
    else
      throw PreconditionError("recipe centre has the wrong number of coordinates");
  }
  return out;
}

// Squared distance of sample `flat` from c, without periodic wrap (data are
// meant to sit in the central half-box).
double dist2(const GridSpec& g, Index flat, const std::array<double, 3>& c) {
  const auto idx = g.unflatten(flat);
  double r2 = 0.0;
  for (int a = 0; a < g.dim(); ++a) {
    const double d = g.coordinate(idx[a]) - c[a];
    r2 += d * d;
  }
  return r2;
}

double envelope(double r) { return r < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r * r)) : 0.0; }

void require_band(const GridSpec& g, int j_min, int j_max, double scale) {
  if (j_max < j_min) throw PreconditionError("band needs j_min <= j_max");
  const double nyquist = kPi * g.points() / g.length();
  if (std::ldexp(1.0, j_max + 1) * scale > nyquist)
    throw PreconditionError("band [2^j_min, 2^(j_max+1)] exceeds the grid Nyquist frequency");
}

Field gaussian(const GridSpec& g, const GaussianBump& r) {
  if (!(r.width > 0.0)) throw PreconditionError("gaussian_bump width must be positive");
  if (r.width > 0.25 * g.length())
    throw PreconditionError("gaussian_bump width exceeds L/4 (boundary contamination guard)");
  const auto c = resolve_center(g, r.center);
  const double s = sigma_from_fwhm(r.width);
  Field f(g);
  for (Index i = 0; i < g.size(); ++i) f.data()[i] = r.amplitude * std::exp(-dist2(g, i, c) / (2 * s * s));
  return f;
}

Field plane_wave(const GridSpec& g, const PlaneWave& r) {
  if (static_cast<int>(r.k.size()) != g.dim()) throw PreconditionError("plane_wave needs one index per axis");
  for (int k : r.k)
    if (std::abs(k) >= g.points() / 2) throw PreconditionError("plane_wave index at or above Nyquist");
  Field f(g);
  const double dxi = g.spectral_spacing();
  for (Index i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(i);
    double phase = 0.0;
    for (int a = 0; a < g.dim(); ++a) phase += r.k[a] * dxi * g.coordinate(idx[a]);
    f.data()[i] = std::polar(1.0, phase);
  }
  return f;
}

VectorField taylor_green(const GridSpec& g, const TaylorGreen& r) {
  if (g.dim() < 2) throw PreconditionError("taylor_green needs n >= 2");
  if (r.kx == 0 || r.ky == 0 || (g.dim() == 3 && r.kz == 0))
    throw PreconditionError("taylor_green wavenumbers must be nonzero");
  const int nyq = g.points() / 2;
  if (std::abs(r.kx) >= nyq || std::abs(r.ky) >= nyq || std::abs(r.kz) >= nyq)
    throw PreconditionError("taylor_green wavenumber at or above Nyquist");
  const double dxi = g.spectral_spacing();
  const double a = r.kx * dxi, b = r.ky * dxi, c = r.kz * dxi;
  VectorField u = VectorField::zeros(g);
  for (Index i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(i);
    const double x = g.coordinate(idx[0]), y = g.coordinate(idx[1]);
    const double zf = g.dim() == 3 ? std::sin(c * g.coordinate(idx[2])) : 1.0;
    u.components[0].data()[i] = r.amplitude * std::cos(a * x) * std::sin(b * y) * zf;
    u.components[1].data()[i] = -r.amplitude * (a / b) * std::sin(a * x) * std::cos(b * y) * zf;
  }
  return u;
}

Field random_bandlimited(const GridSpec& g, const RandomBandlimited& r) {
  if (r.scale < 1) throw PreconditionError("random_bandlimited scale must be a positive integer");
  require_band(g, r.j_min, r.j_max, r.scale);
  const auto c = resolve_center(g, r.center);
  const double lo = std::ldexp(1.0, r.j_min), hi = std::ldexp(1.0, r.j_max + 1);
  const double dxi = g.spectral_spacing();
  std::mt19937_64 rng(r.seed);
  std::normal_distribution<double> normal;

  // Coefficients are drawn on the unscaled lattice, in flat order, so every
  // dilate() of one seed shares its draws.
  Field s(g, Representation::spectral);
  for (Index i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(i);
    bool nyquist = false;
    double k2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      nyquist = nyquist || g.is_nyquist(idx[a]);
      const double k = g.wavenumber(idx[a]) * dxi;
      k2 += k * k;
    }
    const double km = std::sqrt(k2);
    bool keep = !nyquist && km >= lo * (1 - 1e-12) && km < hi * (1 - 1e-12);
    if (keep && r.shells_only) {
      const double j = std::log2(km);
      keep = std::abs(j - std::round(j)) < 1e-12;
    }
    const double re = normal(rng), im = normal(rng);
    if (!keep) continue;
    std::array<int, 3> target{0, 0, 0};
    double phase = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const int k = g.wavenumber(idx[a]);
      const int ks = k * r.scale;
      target[a] = ks >= 0 ? ks : ks + g.points();
      phase += k * dxi * c[a] * (1.0 - r.scale);
    }
    s.data()[g.flatten(target)] = Complex(re, im) * std::polar(1.0, phase);
  }
  Field f = real_part(to_physical(s));
  const double norm = std::sqrt(f.data().abs2().sum() * g.cell_volume());
  if (norm == 0.0) throw PreconditionError("random_bandlimited band contains no lattice modes");
  // A periodic field keeps its box L2 norm under integer dilation, so the
  // normalization commutes with dilate().
  f.data() /= norm;
  return f;
}

Field packet(const GridSpec& g, const BandlimitedPacket& r) {
  if (r.modes < 1) throw PreconditionError("packet needs at least one mode");
  if (!(r.radius > 0.0) || !(r.scale > 0.0)) throw PreconditionError("packet radius and scale must be positive");
  require_band(g, r.j_min, r.j_max, r.scale);
  const auto c = resolve_center(g, r.center);
  const double R = r.radius / r.scale;
  for (int a = 0; a < g.dim(); ++a)
    if (c[a] - R < 0.0 || c[a] + R > g.length()) throw PreconditionError("packet support leaves the box");

  std::mt19937_64 rng(r.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> normal;
  const double lo = std::ldexp(1.0, r.j_min), hi = std::ldexp(1.0, r.j_max + 1);
  std::vector<std::array<double, 3>> xi(r.modes);
  std::vector<double> amp(r.modes), ph(r.modes);
  for (int m = 0; m < r.modes; ++m) {
    const double mag = lo + (hi - lo) * uni(rng);
    std::array<double, 3> dir{0, 0, 0};
    if (g.dim() == 1) {
      dir[0] = 1.0;
    } else {
      double nn = 0.0;
      for (int a = 0; a < g.dim(); ++a) {
        dir[a] = normal(rng);
        nn += dir[a] * dir[a];
      }
      for (int a = 0; a < g.dim(); ++a) dir[a] /= std::sqrt(nn);
    }
    for (int a = 0; a < 3; ++a) xi[m][a] = mag * dir[a] * r.scale;
    amp[m] = normal(rng);
    ph[m] = 2 * kPi * uni(rng);
  }

  Field f(g);
  RealArray env(g.size());
  for (Index i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(i);
    double r2 = 0.0, waves = 0.0;
    std::array<double, 3> d{0, 0, 0};
    for (int a = 0; a < g.dim(); ++a) {
      d[a] = g.coordinate(idx[a]) - c[a];
      r2 += d[a] * d[a];
    }
    env[i] = envelope(std::sqrt(r2) / R);
    if (env[i] == 0.0) continue;
    for (int m = 0; m < r.modes; ++m) {
      double phase = ph[m];
      for (int a = 0; a < g.dim(); ++a) phase += xi[m][a] * d[a];
      waves += amp[m] * std::cos(phase);
    }
    f.data()[i] = env[i] * waves;
  }
  const double mu = f.data().real().sum() / env.sum();
  f.data() -= (mu * env).cast<Complex>();
  return f;
}

Field laplacian_bump(const GridSpec& g, const LaplacianBump& r) {
  if (r.order < 0) throw PreconditionError("laplacian_bump order must be >= 0");
  Field base = gaussian(g, GaussianBump{r.center, r.width, r.amplitude});
  RealArray sym = g.xi_norm().pow(2.0 * r.order);
  return real_part(apply_symbol(base, sym));
}

}  // namespace

double sigma_from_fwhm(double width) { return width / (2.0 * std::sqrt(2.0 * std::log(2.0))); }
double fwhm_from_sigma(double sigma) { return sigma * 2.0 * std::sqrt(2.0 * std::log(2.0)); }

Field synthesize_field(const GridSpec& grid, const Recipe& recipe) {
  return std::visit(overloaded{
                        [&](const GaussianBump& r) { return gaussian(grid, r); },
                        [&](const PlaneWave& r) { return plane_wave(grid, r); },
                        [&](const TaylorGreen& r) { return taylor_green(grid, r).components[0]; },
                        [&](const RandomBandlimited& r) { return random_bandlimited(grid, r); },
                        [&](const BandlimitedPacket& r) { return packet(grid, r); },
                        [&](const LaplacianBump& r) { return laplacian_bump(grid, r); },
                    },
                    recipe);
}

VectorField synthesize_vector_field(const GridSpec& grid, const Recipe& recipe) {
  if (const auto* tg = std::get_if<TaylorGreen>(&recipe)) return taylor_green(grid, *tg);
  return VectorField({synthesize_field(grid, recipe)});
}

namespace {

int integer_factor(double lambda) {
  const double r = std::round(lambda);
  if (r < 1.0 || std::abs(r - lambda) > 1e-12)
    throw PreconditionError("lattice recipes dilate by positive integers only");
  return static_cast<int>(r);
}

}  // namespace

Recipe dilate(const Recipe& recipe, double lambda) {
  if (!(lambda > 0.0)) throw PreconditionError("dilation factor must be positive");
  return std::visit(overloaded{
                        [&](GaussianBump r) -> Recipe {
                          r.width /= lambda;
                          return r;
                        },
                        [&](PlaneWave r) -> Recipe {
                          const int m = integer_factor(lambda);
                          for (int& k : r.k) k *= m;
                          return r;
                        },
                        [&](TaylorGreen r) -> Recipe {
                          const int m = integer_factor(lambda);
                          r.kx *= m;
                          r.ky *= m;
                          r.kz *= m;
                          return r;
                        },
                        [&](RandomBandlimited r) -> Recipe {
                          r.scale *= integer_factor(lambda);
                          return r;
                        },
                        [&](BandlimitedPacket r) -> Recipe {
                          r.scale *= lambda;
                          return r;
                        },
                        [&](LaplacianBump r) -> Recipe {
                          r.width /= lambda;
                          r.amplitude *= std::pow(lambda, -2.0 * r.order);
                          return r;
                        },
                    },
                    recipe);
}

std::string recipe_name(const Recipe& recipe) {
  static const char* names[] = {"gaussian_bump",     "plane_wave",         "taylor_green",
                                "random_bandlimited", "bandlimited_packet", "laplacian_bump"};
  return names[recipe.index()];
}

}  // namespace frac
