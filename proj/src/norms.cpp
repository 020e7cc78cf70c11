#include "frac/norms.hpp"

#include "frac/errors.hpp"
#include "frac/semigroup.hpp"

#include <algorithm>
#include <charconv>
#include <numbers>
#include <cmath>
#include <sstream>

namespace frac {

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInf;
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw PreconditionError("cannot parse exponent '" + text + "'");
  if (v < 1.0) throw PreconditionError("exponent must be >= 1 (got " + text + ")");
  return v;
}

std::string format_exponent(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << p;
  return os.str();
}

double conjugate(double p) {
  if (p < 1.0) throw PreconditionError("conjugate exponent needs p >= 1");
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

namespace {

void require_exponent(double p) {
  if (!(p >= 1.0)) throw PreconditionError("Lebesgue exponent must satisfy p >= 1");
}

double lp_of_magnitudes(const RealArray& mag, double p, double cell) {
  require_exponent(p);
  const double peak = mag.size() ? mag.maxCoeff() : 0.0;
  if (std::isinf(p) || peak == 0.0) return peak;
  // Scaling by the peak keeps large p away from overflow.
  return peak * std::pow((mag / peak).pow(p).sum() * cell, 1.0 / p);
}

}  // namespace

double lp_norm(const Field& f, double p) {
  const Field x = to_physical(f);
  return lp_of_magnitudes(x.data().abs(), p, x.grid().cell_volume());
}

double lp_norm(const VectorField& u, double p) {
  const VectorField x = to_physical(u);
  RealArray m2 = RealArray::Zero(x.grid().size());
  for (const auto& c : x.components) m2 += c.data().abs2();
  return lp_of_magnitudes(m2.sqrt(), p, x.grid().cell_volume());
}

double time_norm(const std::vector<double>& times, const std::vector<double>& values, double q) {
  require_exponent(q);
  if (times.size() != values.size()) throw PreconditionError("time norm needs one value per time");
  if (times.size() < 2) throw PreconditionError("mixed norm needs at least two time samples");
  if (std::isinf(q)) return *std::max_element(values.begin(), values.end());
  const double peak = *std::max_element(values.begin(), values.end());
  if (peak == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double a = std::pow(values[i] / peak, q), b = std::pow(values[i + 1] / peak, q);
    acc += 0.5 * (times[i + 1] - times[i]) * (a + b);
  }
  return peak * std::pow(acc, 1.0 / q);
}

// ---------------------------------------------------------------- Littlewood-Paley

double DyadicPartition::eta(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double a = std::exp(-1.0 / (2.0 - r));
  const double b = std::exp(-1.0 / (r - 1.0));
  return a / (a + b);
}

double DyadicPartition::psi(int j, double xi) const {
  return eta(xi / std::ldexp(1.0, j)) - eta(xi / std::ldexp(1.0, j - 1));
}

RealArray DyadicPartition::psi_symbol(const GridSpec& grid, int j) const {
  const RealArray& k = grid.xi_norm();
  RealArray s(k.size());
  for (Index i = 0; i < k.size(); ++i) s[i] = psi(j, k[i]);
  return s;
}

RealArray DyadicPartition::low_symbol(const GridSpec& grid) const {
  const RealArray& k = grid.xi_norm();
  RealArray s(k.size());
  const double scale = std::ldexp(1.0, j_min - 1);
  for (Index i = 0; i < k.size(); ++i) s[i] = eta(k[i] / scale);
  return s;
}

DyadicPartition grid_partition(const GridSpec& grid) {
  const double lo = grid.spectral_spacing();
  const double hi = std::numbers::pi * grid.points() / grid.length();
  DyadicPartition p;
  p.j_min = static_cast<int>(std::ceil(std::log2(lo) - 1e-12)) + 1;
  p.j_max = static_cast<int>(std::floor(std::log2(hi) + 1e-12)) - 1;
  if (p.j_max < p.j_min) throw PreconditionError("grid is too coarse for a single Littlewood-Paley band");
  return p;
}

DyadicPartition make_partition(const GridSpec& grid, int j_min, int j_max) {
  const DyadicPartition w = grid_partition(grid);
  if (j_min > j_max || j_min < w.j_min || j_max > w.j_max) {
    std::ostringstream msg;
    msg << "bands " << j_min << ".." << j_max << " fall outside the grid window " << w.j_min << ".." << w.j_max;
    throw PreconditionError(msg.str());
  }
  return {j_min, j_max};
}

Field lp_block(const Field& f, int j, const DyadicPartition& partition) {
  if (!partition.contains(j)) throw PreconditionError("band index outside the partition");
  return apply_symbol(f, partition.psi_symbol(f.grid(), j));
}

double sobolev_norm(const Field& f, double s, double p, bool homogeneous) {
  return lp_norm(fractional_derivative(f, s, homogeneous ? DerivativeKind::homogeneous : DerivativeKind::inhomogeneous),
                 p);
}

double besov_norm(const Field& f, double s, double p, double q, bool homogeneous, const DyadicPartition& partition) {
  require_exponent(p);
  require_exponent(q);
  if (homogeneous) require_zero_mean(f, "a homogeneous Besov norm");
  const Field spec = to_spectral(f);
  std::vector<double> terms;
  for (int j = partition.j_min; j <= partition.j_max; ++j)
    terms.push_back(std::pow(2.0, j * s) * lp_norm(lp_block(spec, j, partition), p));
  double sum = 0.0;
  if (std::isinf(q)) {
    for (double t : terms) sum = std::max(sum, t);
  } else {
    for (double t : terms) sum += std::pow(t, q);
    sum = std::pow(sum, 1.0 / q);
  }
  if (!homogeneous) sum += lp_norm(apply_symbol(spec, partition.low_symbol(f.grid())), p);
  return sum;
}

// ---------------------------------------------------------------- BMO

BmoResult bmo_scan(const Field& f) {
  const Field x = to_physical(f);
  const GridSpec& g = x.grid();
  const int n = g.dim(), N = g.points();

  // Per-cube mean and sum of squared deviations, merged level by level with
  // the pairwise-variance update so large cubes do not lose precision.
  int side = N;  // cubes per axis at the current level
  ComplexArray mean = x.data();
  RealArray m2 = RealArray::Zero(g.size());
  double count = 1.0;
  BmoResult best;

  for (int level = 1; (1 << level) <= N; ++level) {
    const int child = side;
    side /= 2;
    Index cubes = 1;
    for (int a = 0; a < n; ++a) cubes *= side;
    ComplexArray nmean = ComplexArray::Zero(cubes);
    RealArray nm2 = RealArray::Zero(cubes);
    const int kids = 1 << n;
    for (Index c = 0; c < cubes; ++c) {
      std::array<int, 3> ci{0, 0, 0};
      Index rem = c;
      for (int a = n - 1; a >= 0; --a) {
        ci[a] = static_cast<int>(rem % side);
        rem /= side;
      }
      std::array<Index, 8> idx{};
      for (int k = 0; k < kids; ++k) {
        Index flat = 0;
        for (int a = 0; a < n; ++a) flat = flat * child + (2 * ci[a] + ((k >> (n - 1 - a)) & 1));
        idx[k] = flat;
      }
      Complex mu = 0.0;
      for (int k = 0; k < kids; ++k) mu += mean[idx[k]];
      mu /= static_cast<double>(kids);
      double acc = 0.0;
      for (int k = 0; k < kids; ++k) acc += m2[idx[k]] + count * std::norm(mean[idx[k]] - mu);
      nmean[c] = mu;
      nm2[c] = acc;
    }
    count *= kids;
    mean = std::move(nmean);
    m2 = std::move(nm2);
    Index arg = 0;
    const double top = m2.maxCoeff(&arg);
    const double value = std::sqrt(top / count);
    if (value > best.value) {
      best.value = value;
      best.level = level;
      Index rem = arg;
      for (int a = n - 1; a >= 0; --a) {
        best.corner[a] = static_cast<int>(rem % side) << level;
        rem /= side;
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------- norm kinds

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

double spatial_norm(const Field& f, const NormSpec& spec, const std::optional<DyadicPartition>& partition) {
  return std::visit(overloaded{
                        [&](const Lebesgue& k) { return lp_norm(f, k.p); },
                        [&](const Sobolev& k) { return sobolev_norm(f, k.s, k.p, k.homogeneous); },
                        [&](const Besov& k) {
                          return besov_norm(f, k.s, k.p, k.q, k.homogeneous,
                                            partition ? *partition : grid_partition(f.grid()));
                        },
                        [&](const Bmo&) { return bmo_norm(f); },
                    },
                    spec);
}

std::string describe(const NormSpec& spec) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Lebesgue& k) { os << "L^" << format_exponent(k.p); },
                 [&](const Sobolev& k) {
                   os << (k.homogeneous ? "Hdot^{" : "H^{") << k.s << "," << format_exponent(k.p) << "}";
                 },
                 [&](const Besov& k) {
                   os << (k.homogeneous ? "Bdot^" : "B^") << k.s << "_{" << format_exponent(k.p) << ","
                      << format_exponent(k.q) << "}";
                 },
                 [&](const Bmo&) { os << "BMO"; },
             },
             spec);
  return os.str();
}

std::vector<double> spatial_norms(const ScalarSeries& u, const NormSpec& spec,
                                  const std::optional<DyadicPartition>& partition) {
  std::vector<double> out;
  out.reserve(u.size());
  for (const auto& f : u.snapshots) out.push_back(spatial_norm(f, spec, partition));
  return out;
}

double mixed_norm(const ScalarSeries& u, double q, double p) { return mixed_norm(u, q, Lebesgue{p}); }

double mixed_norm(const ScalarSeries& u, double q, const NormSpec& spec,
                  const std::optional<DyadicPartition>& partition) {
  if (u.empty()) throw PreconditionError("mixed norm of an empty series");
  validate(u);
  return time_norm(u.times, spatial_norms(u, spec, partition), q);
}

double mixed_norm(const VectorSeries& u, double q, double p) {
  if (u.empty()) throw PreconditionError("mixed norm of an empty series");
  validate(u);
  std::vector<double> v;
  for (const auto& s : u.snapshots) v.push_back(lp_norm(s, p));
  return time_norm(u.times, v, q);
}

}  // namespace frac
