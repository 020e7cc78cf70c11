#pragma once

#include "frac/estimates.hpp"
#include "frac/nse.hpp"
#include "frac/potential.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace frac {

using Json = nlohmann::ordered_json;

/// Finite doubles stay numbers; infinities become "inf" / "-inf" and NaN
/// becomes "nan" so that exponents survive a JSON round trip.
Json number(double x);

Json to_json(const RatioReport& report);
Json to_json(const PicardReport& report);
Json to_json(const PotentialReport& report);
Json to_json(const DecayFit& fit);
Json to_json(const KernelNormFit& fit);

/// Plain CSV; cells are written as given, numbers with 17 significant digits.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
  std::string csv() const;
};

std::string cell(double x);

Table ratio_table(const RatioReport& report);
Table decay_table(const DecayFit& fit);

/// Writes <dir>/report.json (pretty, two-space indent, trailing newline) and
/// <dir>/report.csv, creating `dir` if needed.
void write_report(const std::string& dir, const Json& json, const Table& table);

}  // namespace frac
