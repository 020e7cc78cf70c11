#include "frac/potential.hpp"

#include "frac/errors.hpp"
#include "frac/semigroup.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace frac {

namespace {

// max_i ||w_i||_2 over nodes, the default norm on a subinterval.
double sup_l2(const std::vector<ComplexArray>& w, double cell) {
  double m = 0.0;
  for (const auto& a : w) m = std::max(m, std::sqrt(a.abs2().sum() * cell));
  return m;
}

}  // namespace

std::pair<ScalarSeries, PotentialReport> solve_potential_eq(const Field& f, const ScalarSeries& forcing,
                                                            const ScalarSeries& potential, double alpha_value,
                                                            const PotentialOptions& opt) {
  validate(forcing);
  validate(potential);
  const GridSpec& g = f.grid();
  const Alpha alpha(alpha_value, g.dim());
  if (forcing.snapshots.front().grid() != g || potential.snapshots.front().grid() != g)
    throw PreconditionError("data, forcing and potential must share one grid");
  if (forcing.times != potential.times) throw PreconditionError("forcing and potential must share one time grid");
  if (forcing.times.front() != 0.0) throw PreconditionError("time grid must start at t = 0");
  if (opt.check_relation) {
    const double res = inv(opt.r) + g.dim() / (2.0 * alpha_value * opt.s) - 1.0;
    if (std::abs(res) > 1e-9) {
      std::ostringstream msg;
      msg << "potential exponents violate 1/r + n/(2 alpha s) = 1 (residual " << res << ")";
      throw PreconditionError(msg.str());
    }
  }
  for (const auto& v : potential.snapshots)
    if (!is_real(v)) throw PreconditionError("the potential V must be real");

  const std::vector<double>& t = forcing.times;
  const std::size_t M = t.size() - 1;
  const double cell = g.cell_volume();
  const RealArray rates = g.xi_norm().pow(2.0 * alpha_value);
  std::vector<ComplexArray> Fhat, V;
  for (const auto& s : forcing.snapshots) Fhat.push_back(to_spectral(s).data());
  for (const auto& s : potential.snapshots) V.push_back(to_physical(s).data().real().cast<Complex>());

  std::vector<ComplexArray> v(M + 1);
  v[0] = to_physical(f).data();
  PotentialReport rep;
  rep.converged = true;

  std::size_t a = 0;
  while (a < M) {
    std::size_t b = M;
    for (;;) {
      const std::size_t m = b - a;
      std::vector<double> tau(m + 1);
      for (std::size_t i = 0; i <= m; ++i) tau[i] = t[a + i] - t[a];
      const Field start = to_spectral(Field(g, Representation::physical, v[a]));
      std::vector<ComplexArray> free(m + 1), w(m + 1);
      for (std::size_t i = 0; i <= m; ++i) {
        free[i] = (-tau[i] * rates).exp().cast<Complex>() * start.data();
        w[i] = to_physical(Field(g, Representation::spectral, free[i])).data();
      }

      Subinterval sub{t[a], t[b], 0, 0.0};
      bool contracts = true, done = false;
      double d_prev = -1.0;
      std::vector<ComplexArray> G(m + 1);
      std::vector<const ComplexArray*> ptrs(m + 1);
      for (int it = 1; it <= opt.max_iter; ++it) {
        for (std::size_t i = 0; i <= m; ++i) {
          G[i] = Fhat[a + i] - to_spectral(Field(g, Representation::physical, V[a + i] * w[i])).data();
          ptrs[i] = &G[i];
        }
        auto duh = duhamel_modes(tau, ptrs, rates, tau);
        std::vector<ComplexArray> next(m + 1), diff(m + 1);
        for (std::size_t i = 0; i <= m; ++i) {
          next[i] = to_physical(Field(g, Representation::spectral, free[i] + duh[i])).data();
          diff[i] = next[i] - w[i];
        }
        const double d = sup_l2(diff, cell);
        const double size = sup_l2(next, cell);
        w = std::move(next);
        sub.iterations = it;
        // Ratios of differences near round-off carry no information.
        const double floor = 1e3 * std::numeric_limits<double>::epsilon() * std::max(size, 1e-300);
        if (d_prev > floor && d > floor) sub.factor = std::max(sub.factor, d / d_prev);
        if (sub.factor > opt.max_factor) {
          contracts = false;
          break;
        }
        if (d <= opt.tol * size || d == 0.0) {
          done = true;
          break;
        }
        d_prev = d;
      }
      if (!contracts) {
        if (m == 1) {
          std::ostringstream msg;
          msg << "fixed-point map does not contract on the single step [" << t[a] << ", " << t[b]
              << "] (factor " << sub.factor << ")";
          throw ConvergenceError(msg.str());
        }
        b = a + m / 2;
        continue;
      }
      if (!done) {
        rep.converged = false;
        throw ConvergenceError("potential equation did not converge within the iteration budget");
      }
      for (std::size_t i = 1; i <= m; ++i) v[a + i] = std::move(w[i]);
      rep.subintervals.push_back(sub);
      a = b;
      break;
    }
  }

  ScalarSeries out;
  out.times = t;
  out.grading = forcing.grading;
  for (auto& x : v) out.snapshots.emplace_back(g, Representation::physical, std::move(x));

  rep.solution_norm = mixed_norm(out, opt.q, opt.p);
  rep.data_norm = lp_norm(f, 2.0) + mixed_norm(forcing, 1.0, 2.0);
  rep.bound_constant = rep.data_norm > 0.0 ? rep.solution_norm / rep.data_norm : 0.0;
  rep.potential_norm = mixed_norm(potential, opt.r, opt.s);
  return {std::move(out), rep};
}

}  // namespace frac
