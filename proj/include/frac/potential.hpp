#pragma once

#include "frac/grid.hpp"
#include "frac/norms.hpp"

#include <vector>

namespace frac {

struct PotentialOptions {
  double r = 2.0;  ///< time exponent of the potential norm
  double s = 1.0;  ///< space exponent; must satisfy 1/r + n/(2 alpha s) = 1
  double tol = 1e-12;
  int max_iter = 200;
  double max_factor = 0.5;  ///< contraction factor allowed per subinterval
  double q = kInf;          ///< solution norm L^q_t L^p_x used for the bound
  double p = 2.0;
  bool check_relation = true;
};

struct Subinterval {
  double t_begin = 0.0;
  double t_end = 0.0;
  int iterations = 0;
  double factor = 0.0;  ///< largest measured d_{m+1} / d_m
};

struct PotentialReport {
  std::vector<Subinterval> subintervals;
  bool converged = false;
  double solution_norm = 0.0;  ///< ||v||_{L^q_t L^p_x}
  double data_norm = 0.0;      ///< ||f||_2 + ||F||_{L^1_t L^2_x}
  double bound_constant = 0.0; ///< solution_norm / data_norm
  double potential_norm = 0.0; ///< ||V||_{L^r_t L^s_x}
};

/// Solves v = e^{-t Lambda} f + int_0^t e^{-(t-s) Lambda} (F - V v)(s) ds on the
/// common time grid of F and V (which must start at 0). The interval is split
/// greedily, halving a subinterval until the measured contraction factor of
/// the fixed-point map is at most `max_factor`. Throws ConvergenceError when
/// a subinterval of a single step still does not contract.
std::pair<ScalarSeries, PotentialReport> solve_potential_eq(const Field& f, const ScalarSeries& forcing,
                                                            const ScalarSeries& potential, double alpha,
                                                            const PotentialOptions& options = {});

}  // namespace frac
