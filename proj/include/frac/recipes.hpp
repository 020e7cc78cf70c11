#pragma once

#include "frac/grid.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace frac {

// Test-data recipes. Every recipe is deterministic in (grid, parameters) and
// can be dilated about its own centre, f_lambda(x) = f(c + lambda (x - c)),
// without resampling.
//
// A centre given as an empty vector means the box centre; a single value is
// broadcast to every axis.

/// exp(-|x-c|^2 / (2 sigma^2)) * amplitude, with `width` the full width at
/// half maximum (sigma = width / (2 sqrt(2 ln 2))).
struct GaussianBump {
  std::vector<double> center;
  double width = 1.0;
  double amplitude = 1.0;
};

/// e^{i xi.x} with xi = 2 pi k / L.
struct PlaneWave {
  std::vector<int> k;
};

/// Divergence-free cellular flow
///   u = A (cos(a x) sin(b y) [sin(c z)], -(a/b) sin(a x) cos(b y) [sin(c z)], 0)
/// with a = 2 pi kx / L etc. As a scalar recipe it yields the first component.
struct TaylorGreen {
  double amplitude = 1.0;
  int kx = 1;
  int ky = 1;
  int kz = 1;
};

/// Real, zero-mean periodic field with random coefficients on the lattice
/// annulus 2^{j_min} <= |xi| < 2^{j_max+1}. With `shells_only` the support is
/// further restricted to the dyadic spheres |xi| = 2^j. Normalized to unit L2.
/// `scale` (a positive integer) maps every mode k to scale * k.
struct RandomBandlimited {
  std::uint64_t seed = 0;
  int j_min = 0;
  int j_max = 0;
  bool shells_only = false;
  int scale = 1;
  std::vector<double> center;
};

/// Localized random wave packet
///   env(|x-c|/R) * sum_m a_m cos(xi_m.(x-c) + phi_m) - mu * env(|x-c|/R)
/// with env(r) = exp(1 - 1/(1-r^2)) on r < 1, |xi_m| drawn in
/// [2^{j_min}, 2^{j_max+1}), and mu chosen so that the mean vanishes.
/// Evaluated pointwise, so any dilation factor is admissible.
struct BandlimitedPacket {
  std::uint64_t seed = 0;
  int j_min = 0;
  int j_max = 0;
  int modes = 8;
  double radius = 1.0;
  double scale = 1.0;
  std::vector<double> center;
};

/// (-Laplacian)^order applied to a Gaussian bump; zero mean for order >= 1.
struct LaplacianBump {
  std::vector<double> center;
  double width = 1.0;
  int order = 1;
  double amplitude = 1.0;
};

using Recipe =
    std::variant<GaussianBump, PlaneWave, TaylorGreen, RandomBandlimited, BandlimitedPacket, LaplacianBump>;

double sigma_from_fwhm(double width);
double fwhm_from_sigma(double sigma);

Field synthesize_field(const GridSpec& grid, const Recipe& recipe);
/// Taylor-Green gives the full velocity; scalar recipes give a single
/// component field.
VectorField synthesize_vector_field(const GridSpec& grid, const Recipe& recipe);

/// Recipe for x -> f(c + lambda (x - c)). Lattice recipes (plane waves,
/// Taylor-Green, random_bandlimited) accept positive integer lambda only.
Recipe dilate(const Recipe& recipe, double lambda);

/// Short name used in reports, e.g. "gaussian_bump".
std::string recipe_name(const Recipe& recipe);

}  // namespace frac
