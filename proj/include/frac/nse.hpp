#pragma once

#include "frac/grid.hpp"
#include "frac/semigroup.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace frac {

/// delta_jk - xi_j xi_k / |xi|^2 on the odd lattice; modes with xi_odd = 0
/// pass through. Returns the representation of the input.
VectorField leray_project(const VectorField& u);
/// sum_j i xi_j u_j on the odd lattice.
Field divergence(const VectorField& u);
/// max |div u| over the grid.
double max_divergence(const VectorField& u);

/// 1 where every |k_i| <= N/3, 0 elsewhere.
RealArray dealias_mask(const GridSpec& grid);
VectorField dealias(const VectorField& u);

/// P div(u (x) v) at one time, dealiased, in spectral form:
///   [P div(u (x) v)]_i = P_ik sum_j d_j (u_j v_k).
VectorField projected_divergence(const VectorField& u, const VectorField& v);

/// B(u, v)(t) = int_0^t e^{-(t-s)Lambda} P div(u (x) v)(s) ds on t_eval.
/// u and v must share one time grid starting at 0.
VectorSeries bilinear_B(const VectorSeries& u, const VectorSeries& v, double alpha, const std::vector<double>& t_eval);

/// Mixed L^q_t L^p_x norm of a vector series (pointwise Euclidean magnitude).
double x_norm(const VectorSeries& u, double q, double p);

struct PicardOptions {
  int steps = 128;            ///< uniform time steps on [0, T]
  double tol = 1e-10;
  int max_iter = 20;
  int ensemble = 4;           ///< extra seeded fields for the bilinear constant
  std::uint64_t seed = 1;
  bool enforce_smallness = true;
};

struct PicardReport {
  std::vector<double> residuals;  ///< relative X-norm change per iteration
  std::vector<double> ratios;     ///< residual(m+1) / residual(m)
  bool converged = false;
  int iterations = 0;
  double final_norm = 0.0;        ///< ||v||_{L^q_t L^p_x}
  double data_size = 0.0;         ///< a
  double radius = 0.0;            ///< R = 2a
  double bilinear_constant = 0.0; ///< C_est
  double max_divergence = 0.0;    ///< over every iterate and stored time
};

/// Checks the hypotheses of the existence statement; throws
/// PreconditionError naming the violated one.
void check_nse_hypotheses(int n, double alpha, double q, double p);

/// Picard iteration v^{m+1} = e^{-t Lambda} g + Duhamel(P h) - B(v^m, v^m)
/// from v^0 = e^{-t Lambda} g + Duhamel(P h). `forcing` may be empty (h = 0);
/// otherwise it must be sampled on the solver's uniform grid.
std::pair<VectorSeries, PicardReport> solve_nse_picard(const VectorField& g, const std::optional<VectorSeries>& forcing,
                                                        double alpha, double T, double q, double p,
                                                        const PicardOptions& options = {});

/// Largest ||B(u_i, u_j)|| / (||u_i|| ||u_j||) over the given fields.
double measure_bilinear_constant(const std::vector<VectorSeries>& fields, double alpha, double q, double p);

struct DerivativeNorm {
  std::array<int, 3> multi_index{0, 0, 0};
  int order = 0;
  double norm = 0.0;
  bool finite = true;
};

/// ||D^j v||_{L^q_t L^p_x} for every multi-index with |j| <= order.
std::vector<DerivativeNorm> regularity_check(const VectorSeries& v, int order, double q, double p);

}  // namespace frac
