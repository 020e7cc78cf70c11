#pragma once

#include "frac/grid.hpp"
#include "frac/norms.hpp"
#include "frac/recipes.hpp"
#include "frac/semigroup.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace frac {

/// Exponents (q, p, r) and the scaling weight sigma = n / (2 alpha).
struct Triplet {
  double q;
  double p;
  double r;
  double sigma;
};

/// 1/q - sigma (1/r - 1/p); zero means admissible. Throws when r > p or an
/// exponent lies outside [1, inf].
double check_admissible(const Triplet& t);
/// (1/q1' - 1/q) + (n/2alpha)(1/p1' - 1/p) - 1.
double check_scaling_relation(double q, double p, double q1, double p1, double alpha, int n);
/// 1/q + (n/2alpha)(1/p - 1/2) - 3/2, the exponent relation of the Sobolev
/// variant of the inhomogeneous estimate.
double check_sobolev_relation(double q, double p, double alpha, int n);

/// `numerator / denominator` plus the boundary diagnostics of one
/// evaluation. `contamination` refers to the input data, `evolved` to the
/// largest value seen on the computed solution.
struct RatioSample {
  double ratio = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double contamination = 0.0;
  double evolved_contamination = 0.0;
};

/// Spatial norm kinds of the estimates: the exponent comes from the estimate,
/// `order` is beta (Sobolev) or s (Besov).
struct EstimateNorm {
  enum Kind { lebesgue, sobolev, besov, bmo } kind = lebesgue;
  double order = 0.0;
  bool homogeneous = true;
  /// l^q index for Besov kinds (2 in all estimates of this library).
  double besov_q = 2.0;

  NormSpec at(double p) const;
};

/// 0 followed by `points` geometric samples from t_min_fraction * T to T.
std::vector<double> default_time_grid(double final_time, int points = 60, double t_min_fraction = 1e-4);

/// e^{-t Lambda} f on the given time grid.
ScalarSeries free_evolution(const Field& f, const std::vector<double>& times, const Alpha& alpha);

struct HomogeneousSetup {
  double q = 2.0;
  double p = 2.0;
  double alpha = 1.0;
  std::vector<double> times;  ///< covers [0, T]
  EstimateNorm norm;
  std::optional<DyadicPartition> partition;
};

/// ||e^{-t Lambda} f||_{L^q_t X_1} / ||f||_{X_2}, with (X_1, X_2) =
/// (L^p, L^2), (Hdot^{beta,p}, Hdot^{beta,2}), (Bdot^s_{p,2}, Bdot^s_{2,2}) or
/// (BMO, L^2).
RatioSample homogeneous_ratio(const Field& f, const HomogeneousSetup& setup);

struct InhomogeneousSetup {
  double q = 2.0;
  double p = 2.0;
  double q1 = 2.0;
  double p1 = 2.0;
  double alpha = 1.0;
  std::vector<double> t_eval;
  EstimateNorm lhs;
  EstimateNorm rhs;
  enum Relation { scaling, sobolev_variant, none } relation = scaling;
  std::optional<DyadicPartition> partition;
};

/// ||Duhamel(F)||_{L^q_t Y_1(p)} / ||F||_{L^{q1'}_t Y_2(p1')}.
RatioSample inhomogeneous_ratio(const ScalarSeries& forcing, const InhomogeneousSetup& setup);

struct ParabolicResult {
  RatioSample sample;
  double tail_error = 0.0;  ///< relative change of the last s_max doubling
  double s_max = 0.0;
  double head = 0.0;        ///< analytic contribution of (0, s_min)
};

/// b-form: (int_0^inf s^{-2/p} ||e^{-s Lambda} f||_p^2 ds)^{1/2} / ||f||_2,
/// requires n = 2 alpha and p > 2. The s-grid is geometric with the given
/// ratio from s_min; s_max starts at s_max0 and doubles until the relative
/// change drops below tail_tol.
ParabolicResult parabolic_ratio(const Field& f, double p, double alpha, double s_min = 1e-8, double s_max0 = 1.0,
                                double tail_tol = 1e-6, double ratio = 1.25, int max_doublings = 60);
/// a-form: int_0^T s^{-nr/(2p alpha)} ||e^{-s Lambda} f||_p^r ds / (T^{1-n/2alpha} ||f||_r^r),
/// requires n < 2 alpha and r <= p.
ParabolicResult parabolic_ratio_a(const Field& f, double r, double p, double alpha, double T, double s_min_fraction = 1e-8,
                                  double ratio = 1.25);

struct DecayFit {
  double slope = 0.0;
  double predicted = 0.0;
  double contamination = 0.0;  ///< worst evolved-field contamination over the window
  double data_contamination = 0.0;
  std::vector<double> times;
  std::vector<double> norms;
};

struct DecaySetup {
  double r = 1.0;
  double p = kInf;
  double alpha = 1.0;
  std::vector<double> times;
  bool gradient = false;
  /// Dilate the data with t (f_t(x) = f(c + (x-c) / (t/t_0)^{1/2alpha})) and fit
  /// ||e^{-t Lambda} f_t||_p / ||f_t||_r. Needs a recipe instead of a field.
  bool matched_scale = false;
};

/// Least-squares slope of log ||e^{-t Lambda} f||_p (or of its gradient)
/// against log t. Throws ContaminationError if the data itself leaks.
DecayFit decay_fit(const Field& f, const DecaySetup& setup);
DecayFit decay_fit(const GridSpec& grid, const Recipe& recipe, const DecaySetup& setup);

/// Grid, bump and time window for which the decay fit of (n, alpha, r, p) is
/// resolved on a desk-scale grid: a direct fit on a 4096-point line when
/// n = 1 and r = 1, the matched-scale fit otherwise.
struct DecayCase {
  GridSpec grid;
  Recipe recipe;
  DecaySetup setup;
};
DecayCase recommended_decay_case(int n, double alpha, double r, double p, bool gradient = false);

struct KernelNormFit {
  double norm_T = 0.0;
  double norm_2T = 0.0;
  double exponent = 0.0;
  double predicted = 0.0;
  double contamination = 0.0;  ///< kernel at 2T
};

/// ||K_t||_{L^h_t((0,T]; L^r_x)} from a geometric t-grid (ratio 1.25,
/// starting at the first time the lattice resolves the kernel,
/// 20 (dx/pi)^{2 alpha}) plus an analytic power-law head, at T and 2T.
KernelNormFit kernel_mixed_norm_fit(const GridSpec& grid, double alpha, double h, double r, double T,
                                    double contamination_tol = 1e-6);

/// Result of a dilation sweep; ratios are relative to the lambda = 1 entry.
struct RatioReport {
  std::string estimate_id;
  std::map<std::string, std::string> params;
  std::vector<double> lambdas;
  std::vector<double> ratios;
  std::vector<double> contamination;
  std::vector<double> evolved_contamination;
  double max_drift = 0.0;
  double drift_tolerance = 0.01;
  bool monotone = false;  ///< ratios strictly monotone in lambda
  std::string verdict;    ///< "invariant" or "drift"
};

/// Evaluates `ratio_at(lambda)` for every lambda (concurrently, assembled in
/// input order) and reports max |r(lambda)/r(lambda_0) - 1| with lambda_0 the
/// first entry. Throws ContaminationError if any input data leaks beyond
/// `contamination_tol`.
RatioReport dilation_sweep(const std::string& estimate_id, const std::vector<double>& lambdas,
                           const std::function<RatioSample(double)>& ratio_at, double drift_tolerance = 0.01,
                           double contamination_tol = 1e-6, bool parallel = true);

/// Spatial profile times a(t); `tau` sets the time scale of the profile.
struct TimeProfile {
  enum Kind { constant, ramp_decay, oscillating } kind = ramp_decay;
  double tau = 1.0;
  double operator()(double t) const;
};

/// F(t, x) = sum_i profile_i(t) g_i(x) on the given times.
ScalarSeries forcing_series(const std::vector<Field>& shapes, const std::vector<TimeProfile>& profiles,
                            const std::vector<double>& times);

/// Parabolic dilation of a time grid: t -> t / lambda^{2 alpha}.
std::vector<double> scale_times(const std::vector<double>& times, double lambda, double alpha);

}  // namespace frac
