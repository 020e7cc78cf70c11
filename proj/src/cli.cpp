#include "frac/cli.hpp"

#include "frac/config.hpp"
#include "frac/errors.hpp"
#include "frac/estimates.hpp"
#include "frac/field_io.hpp"
#include "frac/norms.hpp"
#include "frac/nse.hpp"
#include "frac/potential.hpp"
#include "frac/recipes.hpp"
#include "frac/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <mutex>
#include <numbers>
#include <ostream>
#include <set>

namespace frac {

namespace {

// Reads values through the config and records every value the run used,
// defaults included, so the report carries the fully resolved config.
class Params {
 public:
  explicit Params(Config c) : cfg_(std::move(c)) {}

  std::string text(const std::string& k, const std::string& d) { return keep(k, cfg_.get_string(k, d)); }
  std::optional<std::string> maybe(const std::string& k) {
    auto v = cfg_.find(k);
    if (v) keep(k, *v);
    return v;
  }
  double num(const std::string& k, double d) {
    const double v = cfg_.get_double(k, d);
    keep(k, cell(v));
    return v;
  }
  int integer(const std::string& k, int d) {
    const int v = cfg_.get_int(k, d);
    keep(k, std::to_string(v));
    return v;
  }
  std::uint64_t seed(std::uint64_t d) {
    const std::uint64_t v = cfg_.get_seed("seed", d);
    keep("seed", std::to_string(v));
    return v;
  }
  bool flag(const std::string& k, bool d) {
    const bool v = cfg_.get_bool(k, d);
    keep(k, v ? "true" : "false");
    return v;
  }
  double exponent(const std::string& k, double d) {
    const double v = cfg_.get_exponent(k, d);
    keep(k, format_exponent(v));
    return v;
  }
  std::vector<double> list(const std::string& k, const std::vector<double>& d) {
    const auto v = cfg_.get_list(k, d);
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + cell(v[i]);
    keep(k, s);
    return v;
  }
  void record(const std::string& k, const std::string& v) { used_[k] = v; }

  /// Every key in the file must have been read; catches typos.
  void check_consumed() const {
    for (const auto& [section, kv] : cfg_.sections())
      for (const auto& [k, v] : kv)
        if (!used_.count(k))
          throw PreconditionError("unknown config key '" + (section.empty() ? k : section + "." + k) +
                                  "' for this command");
  }

  Json resolved() const {
    Json j = Json::object();
    for (const auto& [k, v] : used_) j[k] = v;
    return j;
  }

 private:
  std::string keep(const std::string& k, std::string v) {
    used_[k] = v;
    return v;
  }

  Config cfg_;
  std::map<std::string, std::string> used_;
};

struct Outcome {
  Json result;
  Table table;
};

struct Context {
  Params& params;
  Json& inputs;
  std::string out_dir;
  bool deterministic;
};

GridSpec read_grid(Params& P, int n, int N, double L) {
  return GridSpec(P.integer("n", n), P.integer("N", N), P.num("L", L));
}

Field sum_fields(const GridSpec& g, const std::vector<Recipe>& recipes) {
  Field f = synthesize_field(g, recipes.front());
  for (std::size_t i = 1; i < recipes.size(); ++i) f += synthesize_field(g, recipes[i]);
  return f;
}

void note_input(Json& inputs, const std::string& role, const std::string& source, const Field& f) {
  Json e;
  e["role"] = role;
  e["source"] = source;
  e["hash"] = field_hash(f);
  inputs.push_back(e);
}

// A scalar field from `input` (a field file, which also fixes the grid) or
// from the `recipe` key on the configured grid.
Field scalar_data(Context& c, int n, int N, double L, const std::string& default_recipe) {
  if (auto path = c.params.maybe("input")) {
    Field f = read_field(*path);
    c.params.record("n", std::to_string(f.grid().dim()));
    c.params.record("N", std::to_string(f.grid().points()));
    c.params.record("L", cell(f.grid().length()));
    note_input(c.inputs, "data", *path, f);
    return f;
  }
  const GridSpec g = read_grid(c.params, n, N, L);
  const std::string text = c.params.text("recipe", default_recipe);
  Field f = sum_fields(g, parse_recipes(text));
  note_input(c.inputs, "data", text, f);
  return f;
}

TimeProfile read_profile(Params& P, const std::string& prefix, double tau_default) {
  TimeProfile prof;
  const std::string kind = P.text(prefix + "profile", "ramp_decay");
  if (kind == "constant") prof.kind = TimeProfile::constant;
  else if (kind == "ramp_decay") prof.kind = TimeProfile::ramp_decay;
  else if (kind == "oscillating") prof.kind = TimeProfile::oscillating;
  else throw PreconditionError("unknown time profile '" + kind + "'");
  prof.tau = P.num(prefix + "tau", tau_default);
  return prof;
}

EstimateNorm read_norm_kind(Params& P, const std::string& key, const std::string& d) {
  EstimateNorm k;
  const std::string kind = P.text(key, d);
  if (kind == "lebesgue") k.kind = EstimateNorm::lebesgue;
  else if (kind == "sobolev") k.kind = EstimateNorm::sobolev;
  else if (kind == "besov") k.kind = EstimateNorm::besov;
  else if (kind == "bmo") k.kind = EstimateNorm::bmo;
  else throw PreconditionError("unknown norm '" + kind + "'");
  if (k.kind == EstimateNorm::sobolev || k.kind == EstimateNorm::besov) {
    k.order = P.num(key + "_order", 0.0);
    k.homogeneous = P.flag(key + "_homogeneous", true);
  }
  return k;
}

std::vector<double> time_samples(Params& P, double T) {
  const int points = P.integer("time_points", 60);
  return default_time_grid(T, points, P.num("t_min_fraction", 1e-4));
}

// ---------------------------------------------------------------- commands

Outcome cmd_propagate(Context& c) {
  Params& P = c.params;
  const Field f = scalar_data(c, 2, 64, 2.0 * std::numbers::pi, "gaussian_bump(width=1)");
  const Alpha alpha(P.num("alpha", 1.0), f.grid().dim());
  const double T = P.num("T", 0.1);
  const auto times = uniform_times(T, P.integer("steps", 10));
  const Field base = to_spectral(f);
  Outcome o;
  o.table.columns = {"t", "l2", "linf", "contamination"};
  Json samples = Json::array();
  Field last = f;
  for (double t : times) {
    last = to_physical(apply_semigroup(base, t, alpha));
    const double l2 = lp_norm(last, 2.0), li = lp_norm(last, kInf), bc = boundary_contamination(last);
    o.table.add({cell(t), cell(l2), cell(li), cell(bc)});
    Json s;
    s["t"] = number(t);
    s["l2"] = number(l2);
    s["linf"] = number(li);
    s["contamination"] = number(bc);
    samples.push_back(s);
  }
  write_field((std::filesystem::path(c.out_dir) / "field_T.frsf").string(), last);
  o.result["samples"] = samples;
  o.result["output_field"] = "field_T.frsf";
  o.result["output_hash"] = field_hash(last);
  return o;
}

Outcome cmd_norm(Context& c) {
  Params& P = c.params;
  const Field f = scalar_data(c, 2, 64, 2.0 * std::numbers::pi, "gaussian_bump(width=1)");
  const std::string kind = P.text("norm", "lebesgue");
  NormSpec spec;
  if (kind == "lebesgue") spec = Lebesgue{P.exponent("p", 2.0)};
  else if (kind == "sobolev") spec = Sobolev{P.num("s", 1.0), P.exponent("p", 2.0), P.flag("homogeneous", true)};
  else if (kind == "besov")
    spec = Besov{P.num("s", 0.0), P.exponent("p", 2.0), P.exponent("q", 2.0), P.flag("homogeneous", true)};
  else if (kind == "bmo") spec = Bmo{};
  else throw PreconditionError("unknown norm '" + kind + "'");
  Outcome o;
  o.result["norm"] = describe(spec);
  o.table.columns = {"norm", "value"};
  if (kind == "bmo") {
    const BmoResult b = bmo_scan(f);
    o.result["value"] = number(b.value);
    o.result["level"] = b.level;
    o.result["corner"] = b.corner;
    o.table.add({describe(spec), cell(b.value)});
  } else {
    const double v = spatial_norm(f, spec);
    o.result["value"] = number(v);
    o.table.add({describe(spec), cell(v)});
  }
  return o;
}

Outcome cmd_verify(Context& c, const std::string& estimate) {
  Params& P = c.params;
  P.record("estimate", estimate);
  const bool is_bmo = estimate == "bmo";
  const bool is_inhom = estimate == "inhomogeneous";
  const bool is_parabolic = estimate == "parabolic";
  const bool is_besov = estimate == "besov";
  if (!(estimate == "homogeneous" || is_bmo || is_inhom || is_parabolic || is_besov))
    throw PreconditionError("unknown estimate '" + estimate +
                            "' (expected homogeneous, inhomogeneous, bmo, parabolic or besov)");

  // Defaults that are resolved on a desk-scale grid for each estimate.
  struct Defaults {
    int n, N;
    double L, T;
    std::string recipe;
    std::vector<double> lambdas;
  } d{2, 128, 128.0, 10.0, "gaussian_bump(width=12)", {1.0, 2.0, 4.0}};
  if (is_bmo) {
    // Dyadic cubes map onto dyadic cubes only for a dilation about a cell corner.
    const double L = 2.0 * std::numbers::pi, c0 = L / 2.0 - L / 256.0;
    d = {2, 128, L, 0.05,
         "bandlimited_packet(seed=1, j_min=0, j_max=1, radius=" + cell(0.95 * L / 4.0) + ", center=[" + cell(c0) +
             " " + cell(c0) + "])",
         {1.0, 2.0, 4.0}};
  } else if (is_parabolic) {
    d = {2, 128, 128.0, 0.0, "laplacian_bump(width=" + cell(fwhm_from_sigma(5.0)) + ")", {1.0, 1.5, 2.0}};
  } else if (is_besov) {
    d = {1, 4096, 4096.0, 0.0, "bandlimited_packet(seed=1, j_min=-4, j_max=-3, radius=256)", {1.0, 2.0, 4.0}};
  }
  const GridSpec g = read_grid(P, d.n, d.N, d.L);
  const double alpha = P.num("alpha", 1.0);
  const Alpha a(alpha, g.dim());
  const std::string recipe_text = P.text("recipe", d.recipe);
  const auto recipes = parse_recipes(recipe_text);
  note_input(c.inputs, "data", recipe_text, sum_fields(g, recipes));
  const auto lambdas = P.list("lambdas", d.lambdas);
  const double drift_tol = P.num("drift_tolerance", 0.01);

  auto dilated = [&](double lambda) {
    std::vector<Recipe> rs;
    for (const auto& r : recipes) rs.push_back(dilate(r, lambda));
    return rs;
  };

  std::map<std::string, std::string> params;
  std::function<RatioSample(double)> ratio_at;
  std::mutex mu;
  double worst_tail = 0.0;

  if (estimate == "homogeneous" || is_bmo) {
    HomogeneousSetup s;
    s.alpha = alpha;
    s.q = P.exponent("q", is_bmo ? 2.0 : 4.0);
    s.p = is_bmo ? kInf : P.exponent("p", 4.0);
    s.norm = is_bmo ? EstimateNorm{EstimateNorm::bmo} : read_norm_kind(P, "norm", "lebesgue");
    const auto times = time_samples(P, P.num("T", d.T));
    params = {{"q", format_exponent(s.q)}, {"p", format_exponent(s.p)}, {"alpha", cell(alpha)}};
    if (!is_bmo) params["admissibility_residual"] = cell(check_admissible({s.q, s.p, 2.0, a.sigma()}));
    ratio_at = [&, s, times](double lambda) {
      HomogeneousSetup local = s;
      local.times = scale_times(times, lambda, alpha);
      return homogeneous_ratio(sum_fields(g, dilated(lambda)), local);
    };
  } else if (is_inhom) {
    InhomogeneousSetup s;
    s.alpha = alpha;
    s.q = P.exponent("q", 4.0);
    s.p = P.exponent("p", 4.0);
    s.q1 = P.exponent("q1", 4.0);
    s.p1 = P.exponent("p1", 4.0);
    const std::string rel = P.text("relation", "scaling");
    if (rel == "scaling") s.relation = InhomogeneousSetup::scaling;
    else if (rel == "sobolev") s.relation = InhomogeneousSetup::sobolev_variant;
    else if (rel == "none") s.relation = InhomogeneousSetup::none;
    else throw PreconditionError("unknown relation '" + rel + "'");
    s.lhs = read_norm_kind(P, "lhs_norm", "lebesgue");
    s.rhs = read_norm_kind(P, "rhs_norm", "lebesgue");
    const double T = P.num("T", d.T);
    const TimeProfile profile = read_profile(P, "", T / 4.0);
    const auto times = time_samples(P, T);
    params = {{"q", format_exponent(s.q)},   {"p", format_exponent(s.p)}, {"q1", format_exponent(s.q1)},
              {"p1", format_exponent(s.p1)}, {"alpha", cell(alpha)},      {"relation", rel}};
    ratio_at = [&, s, times, profile](double lambda) {
      InhomogeneousSetup local = s;
      const auto t = scale_times(times, lambda, alpha);
      local.t_eval = t;
      std::vector<Field> shapes;
      for (const auto& r : dilated(lambda)) shapes.push_back(synthesize_field(g, r));
      TimeProfile prof = profile;
      prof.tau *= std::pow(lambda, -2.0 * alpha);
      return inhomogeneous_ratio(forcing_series(shapes, std::vector<TimeProfile>(shapes.size(), prof), t), local);
    };
  } else if (is_parabolic) {
    const double p = P.exponent("p", 4.0);
    const double s_min = P.num("s_min", 1e-8), s_max = P.num("s_max", 1.0), tail = P.num("tail_tol", 1e-6);
    params = {{"p", format_exponent(p)}, {"alpha", cell(alpha)}};
    ratio_at = [&, p, s_min, s_max, tail](double lambda) {
      const double k = std::pow(lambda, -2.0 * alpha);
      const ParabolicResult r = parabolic_ratio(sum_fields(g, dilated(lambda)), p, alpha, s_min * k, s_max * k, tail);
      std::lock_guard lock(mu);
      worst_tail = std::max(worst_tail, r.tail_error);
      return r.sample;
    };
  } else {
    const double p = P.exponent("p", 4.0);
    const double s = P.num("s", (2.0 - p) * g.dim() / (2.0 * p));
    const DyadicPartition part = grid_partition(g);
    params = {{"p", format_exponent(p)}, {"s", cell(s)}};
    ratio_at = [&, p, s, part](double lambda) {
      const Field f = sum_fields(g, dilated(lambda));
      RatioSample r;
      r.numerator = besov_norm(f, s, p, 2.0, true, part);
      r.denominator = lp_norm(f, 2.0);
      r.ratio = r.numerator / r.denominator;
      r.contamination = boundary_contamination(f);
      r.evolved_contamination = r.contamination;
      return r;
    };
  }

  RatioReport rep = dilation_sweep(estimate, lambdas, ratio_at, drift_tol, 1e-6, !c.deterministic);
  rep.params = params;
  if (is_parabolic) rep.params["max_tail_error"] = cell(worst_tail);
  Outcome o;
  o.result = to_json(rep);
  o.table = ratio_table(rep);
  return o;
}

Outcome cmd_decay_fit(Context& c) {
  Params& P = c.params;
  const int n = P.integer("n", 1);
  const double alpha = P.num("alpha", 1.0);
  const double r = P.exponent("r", 1.0), p = P.exponent("p", kInf);
  const bool gradient = P.flag("gradient", false);
  DecayCase dc = recommended_decay_case(n, alpha, r, p, gradient);
  dc.grid = GridSpec(n, P.integer("N", dc.grid.points()), P.num("L", dc.grid.length()));
  if (auto text = P.maybe("recipe")) dc.recipe = parse_recipe(*text);
  else P.record("recipe", format_recipe(dc.recipe));
  dc.setup.matched_scale = P.flag("matched_scale", dc.setup.matched_scale);
  const double t_min = P.num("t_min", dc.setup.times.front());
  const double t_max = P.num("t_max", dc.setup.times.back());
  const int points = P.integer("time_points", static_cast<int>(dc.setup.times.size()));
  if (!(t_min > 0.0 && t_max > t_min) || points < 2)
    throw PreconditionError("decay fit needs 0 < t_min < t_max and two or more time points");
  dc.setup.times.resize(points);
  for (int i = 0; i < points; ++i) dc.setup.times[i] = t_min * std::pow(t_max / t_min, double(i) / (points - 1));

  const Field f = synthesize_field(dc.grid, dc.recipe);
  note_input(c.inputs, "data", format_recipe(dc.recipe), f);
  const DecayFit fit = decay_fit(dc.grid, dc.recipe, dc.setup);
  Outcome o;
  o.result = to_json(fit);
  o.result["matched_scale"] = dc.setup.matched_scale;
  o.table = decay_table(fit);
  return o;
}

Outcome cmd_kernel_norm(Context& c) {
  Params& P = c.params;
  const GridSpec g = read_grid(P, 2, 128, 96.0);
  const KernelNormFit fit = kernel_mixed_norm_fit(g, P.num("alpha", 1.0), P.exponent("h", 1.0), P.exponent("r", 2.0),
                                                  P.num("T", 4.0));
  Outcome o;
  o.result = to_json(fit);
  o.table.columns = {"norm_T", "norm_2T", "exponent", "predicted"};
  o.table.add({cell(fit.norm_T), cell(fit.norm_2T), cell(fit.exponent), cell(fit.predicted)});
  return o;
}

Outcome cmd_nse_solve(Context& c) {
  Params& P = c.params;
  const GridSpec g = read_grid(P, 2, 64, 2.0 * std::numbers::pi);
  const double alpha = P.num("alpha", 1.0);
  const double q = P.exponent("q", 4.0), p = P.exponent("p", 4.0);
  check_nse_hypotheses(g.dim(), alpha, q, p);
  PicardOptions opt;
  opt.steps = P.integer("steps", opt.steps);
  opt.tol = P.num("tol", opt.tol);
  opt.max_iter = P.integer("max_iter", opt.max_iter);
  opt.ensemble = P.integer("ensemble", opt.ensemble);
  opt.seed = P.seed(opt.seed);
  opt.enforce_smallness = P.flag("enforce_smallness", true);
  const double T = P.num("T", 1.0);
  const std::string text =
      P.text("recipe", "taylor_green(amplitude=0.05) + taylor_green(amplitude=0.025, ky=2)");
  VectorField v0 = VectorField::zeros(g, Representation::physical);
  for (const auto& r : parse_recipes(text)) v0 += synthesize_vector_field(g, r);
  for (int i = 0; i < v0.dim(); ++i) note_input(c.inputs, "data[" + std::to_string(i) + "]", text, v0.components[i]);
  const int order = P.integer("regularity_order", 0);

  auto [v, rep] = solve_nse_picard(v0, std::nullopt, alpha, T, q, p, opt);
  Outcome o;
  o.result = to_json(rep);
  if (order > 0) {
    Json reg = Json::array();
    for (const auto& d : regularity_check(v, order, q, p)) {
      Json e;
      e["multi_index"] = d.multi_index;
      e["order"] = d.order;
      e["norm"] = number(d.norm);
      e["finite"] = d.finite;
      reg.push_back(e);
    }
    o.result["regularity"] = reg;
  }
  o.table.columns = {"t", "l2", "max_divergence"};
  for (std::size_t i = 0; i < v.size(); ++i)
    o.table.add({cell(v.times[i]), cell(lp_norm(v.snapshots[i], 2.0)), cell(max_divergence(v.snapshots[i]))});
  if (!rep.converged)
    throw ConvergenceError("Picard iteration did not converge within max_iter = " + std::to_string(opt.max_iter));
  return o;
}

Outcome cmd_potential_solve(Context& c) {
  Params& P = c.params;
  const Field f = scalar_data(c, 1, 64, 2.0 * std::numbers::pi, "gaussian_bump(width=1)");
  const GridSpec& g = f.grid();
  const double alpha = P.num("alpha", 1.0);
  PotentialOptions opt;
  opt.r = P.exponent("r", opt.r);
  opt.s = P.exponent("s", g.dim() / (2.0 * alpha * (1.0 - inv(opt.r))));
  opt.tol = P.num("tol", opt.tol);
  opt.max_iter = P.integer("max_iter", opt.max_iter);
  opt.max_factor = P.num("max_factor", opt.max_factor);
  opt.q = P.exponent("q", opt.q);
  opt.p = P.exponent("p", opt.p);
  opt.check_relation = P.flag("check_relation", true);
  const double T = P.num("T", 1.0);
  const auto times = uniform_times(T, P.integer("steps", 64));

  const double scale = P.num("potential_scale", 1.0);
  Field vshape = Field(g, Representation::physical, ComplexArray::Constant(g.size(), Complex(scale, 0.0)));
  if (auto text = P.maybe("potential")) {
    vshape = Complex(scale, 0.0) * to_physical(sum_fields(g, parse_recipes(*text)));
    note_input(c.inputs, "potential", *text, vshape);
  }
  ScalarSeries V, F;
  V.times = F.times = times;
  V.grading = F.grading = Grading::uniform;
  const Field zero(g, Representation::physical, ComplexArray::Zero(g.size()));
  std::optional<Field> fshape;
  TimeProfile prof;
  if (auto text = P.maybe("forcing")) {
    fshape = to_physical(sum_fields(g, parse_recipes(*text)));
    prof = read_profile(P, "forcing_", T / 4.0);
    note_input(c.inputs, "forcing", *text, *fshape);
  }
  for (double t : times) {
    V.snapshots.push_back(vshape);
    F.snapshots.push_back(fshape ? Complex(prof(t), 0.0) * *fshape : zero);
  }
  auto [v, rep] = solve_potential_eq(f, F, V, alpha, opt);
  Outcome o;
  o.result = to_json(rep);
  o.table.columns = {"t", "l2"};
  for (std::size_t i = 0; i < v.size(); ++i) o.table.add({cell(v.times[i]), cell(lp_norm(v.snapshots[i], 2.0))});
  return o;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional heat semigroup experiments"};
  app.name("fraclab");
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path, out_dir = "fraclab_out", estimate;
  std::optional<std::uint64_t> seed;
  bool deterministic = false;
  app.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "seed for ensembles");
  app.add_option("--out", out_dir, "directory for report.json and report.csv");
  app.add_flag("--deterministic", deterministic, "run sweeps sequentially");

  std::optional<int> dn;
  std::optional<std::string> dalpha, dr, dp;
  bool dgrad = false;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"propagate", "evolve a recipe and write field_T.frsf"},
      {"norm", "norms of a field file or recipe"},
      {"verify", "dilation sweep for one estimate"},
      {"decay-fit", "fit the large-time decay slope"},
      {"kernel-norm", "kernel norms against t"},
      {"nse-solve", "Picard iteration for the fractional Navier-Stokes system"},
      {"potential-solve", "equation with a time-dependent potential"}};
  for (const auto& [name, about] : commands) {
    CLI::App* sub = app.add_subcommand(name, about);
    if (name == "verify") sub->add_option("--estimate", estimate, "homogeneous | inhomogeneous | bmo | parabolic | besov");
    if (name == "decay-fit") {
      sub->add_option("--n", dn, "dimension");
      sub->add_option("--alpha", dalpha, "order of the fractional Laplacian");
      sub->add_option("--r", dr, "data exponent");
      sub->add_option("--p", dp, "target exponent (inf allowed)");
      sub->add_flag("--gradient", dgrad, "fit the gradient variant");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
    if (seed) cfg.set("seed", std::to_string(*seed));
    if (dn) cfg.set("n", std::to_string(*dn));
    if (dalpha) cfg.set("alpha", *dalpha);
    if (dr) cfg.set("r", *dr);
    if (dp) cfg.set("p", *dp);
    if (dgrad) cfg.set("gradient", "true");
    if (command == "verify" && estimate.empty()) estimate = cfg.get_string("estimate", "");
    if (command == "verify" && estimate.empty()) throw PreconditionError("verify needs --estimate");

    std::filesystem::create_directories(out_dir);
    Params params(cfg);
    Json inputs = Json::array();
    Context ctx{params, inputs, out_dir, deterministic};
    Outcome o;
    if (command == "propagate") o = cmd_propagate(ctx);
    else if (command == "norm") o = cmd_norm(ctx);
    else if (command == "verify") o = cmd_verify(ctx, estimate);
    else if (command == "decay-fit") o = cmd_decay_fit(ctx);
    else if (command == "kernel-norm") o = cmd_kernel_norm(ctx);
    else if (command == "nse-solve") o = cmd_nse_solve(ctx);
    else o = cmd_potential_solve(ctx);
    if (cfg.has("seed")) params.seed(0);
    params.check_consumed();

    Json report;
    report["command"] = command;
    report["config"] = params.resolved();
    report["inputs"] = inputs;
    report["result"] = o.result;
    write_report(out_dir, report, o.table);
    out << "wrote " << (std::filesystem::path(out_dir) / "report.json").string() << "\n";
    return 0;
  } catch (const ContaminationError& e) {
    err << "fraclab: contamination: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "fraclab: precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    err << "fraclab: no convergence: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "fraclab: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace frac
