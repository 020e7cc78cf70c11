#include "frac/report.hpp"

#include "frac/errors.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace frac {

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

namespace {

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

}  // namespace

Json to_json(const RatioReport& r) {
  Json j;
  j["estimate_id"] = r.estimate_id;
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["lambdas"] = numbers(r.lambdas);
  j["ratios"] = numbers(r.ratios);
  j["max_drift"] = number(r.max_drift);
  j["drift_tolerance"] = number(r.drift_tolerance);
  j["contamination"] = numbers(r.contamination);
  j["evolved_contamination"] = numbers(r.evolved_contamination);
  j["monotone"] = r.monotone;
  j["verdict"] = r.verdict;
  return j;
}

Json to_json(const PicardReport& r) {
  Json j;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["residuals"] = numbers(r.residuals);
  j["residual_ratios"] = numbers(r.ratios);
  j["final_norm"] = number(r.final_norm);
  j["data_size"] = number(r.data_size);
  j["radius"] = number(r.radius);
  j["bilinear_constant"] = number(r.bilinear_constant);
  j["smallness"] = number(2.0 * r.bilinear_constant * r.data_size);
  j["max_divergence"] = number(r.max_divergence);
  return j;
}

Json to_json(const PotentialReport& r) {
  Json j;
  j["converged"] = r.converged;
  Json subs = Json::array();
  for (const auto& s : r.subintervals) {
    Json e;
    e["t_begin"] = number(s.t_begin);
    e["t_end"] = number(s.t_end);
    e["iterations"] = s.iterations;
    e["factor"] = number(s.factor);
    subs.push_back(e);
  }
  j["subintervals"] = subs;
  j["solution_norm"] = number(r.solution_norm);
  j["data_norm"] = number(r.data_norm);
  j["bound_constant"] = number(r.bound_constant);
  j["potential_norm"] = number(r.potential_norm);
  return j;
}

Json to_json(const DecayFit& f) {
  Json j;
  j["slope"] = number(f.slope);
  j["predicted"] = number(f.predicted);
  j["relative_error"] = number(f.predicted != 0.0 ? std::abs(f.slope / f.predicted - 1.0) : std::abs(f.slope));
  j["contamination"] = number(f.contamination);
  j["data_contamination"] = number(f.data_contamination);
  j["times"] = numbers(f.times);
  j["norms"] = numbers(f.norms);
  return j;
}

Json to_json(const KernelNormFit& f) {
  Json j;
  j["norm_T"] = number(f.norm_T);
  j["norm_2T"] = number(f.norm_2T);
  j["exponent"] = number(f.exponent);
  j["predicted"] = number(f.predicted);
  j["contamination"] = number(f.contamination);
  return j;
}

std::string cell(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("CSV row width does not match the header");
  rows.push_back(std::move(row));
}

std::string Table::csv() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return os.str();
}

Table ratio_table(const RatioReport& r) {
  Table t;
  t.columns = {"estimate_id", "lambda", "ratio", "contamination", "evolved_contamination"};
  for (std::size_t i = 0; i < r.lambdas.size(); ++i)
    t.add({r.estimate_id, cell(r.lambdas[i]), cell(r.ratios[i]), cell(r.contamination[i]),
           cell(r.evolved_contamination[i])});
  return t;
}

Table decay_table(const DecayFit& f) {
  Table t;
  t.columns = {"t", "norm"};
  for (std::size_t i = 0; i < f.times.size(); ++i) t.add({cell(f.times[i]), cell(f.norms[i])});
  return t;
}

void write_report(const std::string& dir, const Json& json, const Table& table) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
  {
    std::ofstream os(fs::path(dir) / "report.json", std::ios::binary);
    os << json.dump(2) << "\n";
    if (!os) throw std::runtime_error("cannot write report.json in " + dir);
  }
  std::ofstream os(fs::path(dir) / "report.csv", std::ios::binary);
  os << table.csv();
  if (!os) throw std::runtime_error("cannot write report.csv in " + dir);
}

}  // namespace frac
