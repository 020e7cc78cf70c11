#include "frac/config.hpp"

#include "frac/errors.hpp"
#include "frac/norms.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace frac {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
    throw PreconditionError("config value for '" + key + "' is not a number: '" + text + "'");
  return v;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream is(text);
  std::string line, section;
  int number = 0;
  while (std::getline(is, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3)
        throw PreconditionError("malformed config section header on line " + std::to_string(number));
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw PreconditionError("malformed config line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw PreconditionError("empty config key on line " + std::to_string(number));
    if (c.data_[section].count(key))
      throw PreconditionError("duplicate config key '" + key + "' on line " + std::to_string(number));
    c.data_[section][key] = trim(t.substr(eq + 1));
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw PreconditionError("config file not found: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse(ss.str());
}

std::string Config::serialize() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [section, kv] : data_) {
    if (kv.empty()) continue;
    if (!section.empty()) {
      if (!first) os << "\n";
      os << "[" << section << "]\n";
    }
    for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
    first = false;
  }
  return os.str();
}

void Config::set(const std::string& key, const std::string& value, const std::string& section) {
  data_[section][key] = value;
}

bool Config::has(const std::string& key) const { return find(key).has_value(); }

std::optional<std::string> Config::find(const std::string& key) const {
  if (auto top = data_.find(""); top != data_.end())
    if (auto it = top->second.find(key); it != top->second.end()) return it->second;
  std::optional<std::string> hit;
  for (const auto& [section, kv] : data_) {
    if (section.empty()) continue;
    if (auto it = kv.find(key); it != kv.end()) {
      if (hit) throw PreconditionError("config key '" + key + "' appears in more than one section");
      hit = it->second;
    }
  }
  return hit;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  auto v = find(key);
  return v ? *v : fallback;
}

std::string Config::require_string(const std::string& key) const {
  auto v = find(key);
  if (!v) throw PreconditionError("config is missing required key '" + key + "'");
  return *v;
}

double Config::get_double(const std::string& key, double fallback) const {
  auto v = find(key);
  return v ? to_double(key, *v) : fallback;
}

double Config::require_double(const std::string& key) const { return to_double(key, require_string(key)); }

int Config::get_int(const std::string& key, int fallback) const {
  auto v = find(key);
  if (!v) return fallback;
  const double d = to_double(key, *v);
  if (d != static_cast<int>(d)) throw PreconditionError("config value for '" + key + "' must be an integer");
  return static_cast<int>(d);
}

std::uint64_t Config::get_seed(const std::string& key, std::uint64_t fallback) const {
  auto v = find(key);
  if (!v) return fallback;
  std::uint64_t s = 0;
  const std::string t = trim(*v);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), s);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw PreconditionError("config value for '" + key + "' must be a nonnegative integer");
  return s;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  auto v = find(key);
  if (!v) return fallback;
  std::string t = *v;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
  if (t == "false" || t == "no" || t == "0" || t == "off") return false;
  throw PreconditionError("config value for '" + key + "' is not a boolean");
}

double Config::get_exponent(const std::string& key, double fallback) const {
  auto v = find(key);
  return v ? parse_exponent(trim(*v)) : fallback;
}

std::vector<double> Config::get_list(const std::string& key, const std::vector<double>& fallback) const {
  auto v = find(key);
  if (!v) return fallback;
  std::string t = *v;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream is(t);
  std::vector<double> out;
  std::string item;
  while (is >> item) out.push_back(to_double(key, item));
  if (out.empty()) throw PreconditionError("config list '" + key + "' is empty");
  return out;
}

// ---------------------------------------------------------------- recipes

namespace {

struct Call {
  std::string name;
  std::map<std::string, std::string> args;
};

// Splits on `sep` outside brackets and parentheses.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

Call parse_call(const std::string& text) {
  const std::string t = trim(text);
  const auto open = t.find('(');
  Call c;
  if (open == std::string::npos) {
    c.name = t;
    return c;
  }
  if (t.back() != ')') throw PreconditionError("malformed recipe '" + text + "'");
  c.name = trim(t.substr(0, open));
  const std::string body = t.substr(open + 1, t.size() - open - 2);
  if (trim(body).empty()) return c;
  for (const auto& part : split_top(body, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw PreconditionError("recipe argument '" + part + "' needs key=value");
    c.args[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
  }
  return c;
}

class Args {
 public:
  explicit Args(Call c) : c_(std::move(c)) {}
  double num(const std::string& k, double fallback) {
    used_.push_back(k);
    auto it = c_.args.find(k);
    return it == c_.args.end() ? fallback : to_double(c_.name + "." + k, it->second);
  }
  std::vector<double> vec(const std::string& k) {
    used_.push_back(k);
    auto it = c_.args.find(k);
    if (it == c_.args.end()) return {};
    std::string v = it->second;
    if (!v.empty() && v.front() == '[') {
      if (v.back() != ']') throw PreconditionError("unterminated list in recipe argument '" + k + "'");
      v = v.substr(1, v.size() - 2);
    }
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream is(v);
    std::vector<double> out;
    std::string item;
    while (is >> item) out.push_back(to_double(c_.name + "." + k, item));
    return out;
  }
  void finish() const {
    for (const auto& [k, v] : c_.args)
      if (std::find(used_.begin(), used_.end(), k) == used_.end())
        throw PreconditionError("unknown argument '" + k + "' for recipe " + c_.name);
  }

 private:
  Call c_;
  std::vector<std::string> used_;
};

int as_int(double v, const std::string& what) {
  if (v != static_cast<int>(v)) throw PreconditionError(what + " must be an integer");
  return static_cast<int>(v);
}

std::string format_vec(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_number(v[i]);
  return s + "]";
}

}  // namespace

Recipe parse_recipe(const std::string& text) {
  Call call = parse_call(text);
  const std::string name = call.name;
  Args a(std::move(call));
  Recipe out;
  if (name == "gaussian_bump") {
    GaussianBump r;
    r.center = a.vec("center");
    r.width = a.num("width", r.width);
    r.amplitude = a.num("amplitude", r.amplitude);
    out = r;
  } else if (name == "plane_wave") {
    PlaneWave r;
    for (double k : a.vec("k")) r.k.push_back(as_int(k, "plane_wave k"));
    out = r;
  } else if (name == "taylor_green") {
    TaylorGreen r;
    r.amplitude = a.num("amplitude", r.amplitude);
    r.kx = as_int(a.num("kx", r.kx), "taylor_green kx");
    r.ky = as_int(a.num("ky", r.ky), "taylor_green ky");
    r.kz = as_int(a.num("kz", r.kz), "taylor_green kz");
    out = r;
  } else if (name == "random_bandlimited") {
    RandomBandlimited r;
    r.seed = static_cast<std::uint64_t>(as_int(a.num("seed", 0), "seed"));
    r.j_min = as_int(a.num("j_min", 0), "j_min");
    r.j_max = as_int(a.num("j_max", r.j_min), "j_max");
    r.shells_only = a.num("shells_only", 0) != 0.0;
    r.scale = as_int(a.num("scale", 1), "scale");
    r.center = a.vec("center");
    out = r;
  } else if (name == "bandlimited_packet") {
    BandlimitedPacket r;
    r.seed = static_cast<std::uint64_t>(as_int(a.num("seed", 0), "seed"));
    r.j_min = as_int(a.num("j_min", 0), "j_min");
    r.j_max = as_int(a.num("j_max", r.j_min), "j_max");
    r.modes = as_int(a.num("modes", r.modes), "modes");
    r.radius = a.num("radius", r.radius);
    r.scale = a.num("scale", r.scale);
    r.center = a.vec("center");
    out = r;
  } else if (name == "laplacian_bump") {
    LaplacianBump r;
    r.center = a.vec("center");
    r.width = a.num("width", r.width);
    r.order = as_int(a.num("order", r.order), "order");
    r.amplitude = a.num("amplitude", r.amplitude);
    out = r;
  } else {
    throw PreconditionError("unknown recipe '" + name + "'");
  }
  a.finish();
  return out;
}

std::vector<Recipe> parse_recipes(const std::string& text) {
  std::vector<Recipe> out;
  for (const auto& term : split_top(text, '+'))
    if (!term.empty()) out.push_back(parse_recipe(term));
  if (out.empty()) throw PreconditionError("empty recipe");
  return out;
}

std::string format_recipe(const Recipe& recipe) {
  std::ostringstream os;
  os << recipe_name(recipe) << "(";
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, GaussianBump>) {
          os << "center=" << format_vec(r.center) << ", width=" << format_number(r.width)
             << ", amplitude=" << format_number(r.amplitude);
        } else if constexpr (std::is_same_v<T, PlaneWave>) {
          os << "k=" << format_vec(std::vector<double>(r.k.begin(), r.k.end()));
        } else if constexpr (std::is_same_v<T, TaylorGreen>) {
          os << "amplitude=" << format_number(r.amplitude) << ", kx=" << r.kx << ", ky=" << r.ky << ", kz=" << r.kz;
        } else if constexpr (std::is_same_v<T, RandomBandlimited>) {
          os << "seed=" << r.seed << ", j_min=" << r.j_min << ", j_max=" << r.j_max
             << ", shells_only=" << (r.shells_only ? 1 : 0) << ", scale=" << r.scale
             << ", center=" << format_vec(r.center);
        } else if constexpr (std::is_same_v<T, BandlimitedPacket>) {
          os << "seed=" << r.seed << ", j_min=" << r.j_min << ", j_max=" << r.j_max << ", modes=" << r.modes
             << ", radius=" << format_number(r.radius) << ", scale=" << format_number(r.scale)
             << ", center=" << format_vec(r.center);
        } else if constexpr (std::is_same_v<T, LaplacianBump>) {
          os << "center=" << format_vec(r.center) << ", width=" << format_number(r.width) << ", order=" << r.order
             << ", amplitude=" << format_number(r.amplitude);
        }
      },
      recipe);
  os << ")";
  return os.str();
}

}  // namespace frac
