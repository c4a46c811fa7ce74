#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dcstring/error.hpp"

namespace dcstring::cli {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string("config: missing '") + key + "' in " + where);
  return *it;
}

double number(const json& j, const char* key) {
  if (!j.is_number()) throw ValidationError(std::string("config: '") + key + "' must be a number");
  return j.get<double>();
}

std::string text(const json& j, const char* key) {
  if (!j.is_string()) throw ValidationError(std::string("config: '") + key + "' must be a string");
  return j.get<std::string>();
}

int integer(const json& j, const char* key) {
  if (!j.is_number_integer()) throw ValidationError(std::string("config: '") + key + "' must be an integer");
  return j.get<int>();
}

std::vector<int> index_list(const json& j, const char* key) {
  if (j.is_string()) return parse_index_list(j.get<std::string>());
  if (!j.is_array() || j.empty()) throw ValidationError(std::string("config: '") + key + "' must be a nonempty list");
  std::vector<int> out;
  for (const auto& v : j) {
    const int n = integer(v, key);
    if (n < 1) throw ValidationError(std::string("config: indices in '") + key + "' must be >= 1");
    out.push_back(n);
  }
  return out;
}

std::optional<double> maybe(const json& row, const char* key) {
  auto it = row.find(key);
  if (it == row.end() || it->is_null()) return std::nullopt;
  return number(*it, key);
}

}  // namespace

std::vector<int> parse_index_list(std::string_view t) {
  auto to_int = [&t](std::string_view s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || v < 1) {
      throw ValidationError("bad index list '" + std::string(t) + "'");
    }
    return v;
  };
  std::vector<int> out;
  if (const auto dots = t.find(".."); dots != std::string_view::npos) {
    const int lo = to_int(t.substr(0, dots)), hi = to_int(t.substr(dots + 2));
    if (lo > hi) throw ValidationError("bad index range '" + std::string(t) + "'");
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = t.find(',', start);
    out.push_back(to_int(t.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

RunConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: invalid JSON (") + e.what() + ")");
  }
  if (!j.is_object()) throw ValidationError("config: top level must be an object");

  RunConfig cfg;
  const json& c = require(j, "coefficients", "config");
  cfg.sources.a = number(require(c, "a", "coefficients"), "a");
  cfg.sources.b = number(require(c, "b", "coefficients"), "b");
  cfg.sources.k = text(require(c, "k", "coefficients"), "k");
  cfg.sources.r = text(require(c, "r", "coefficients"), "r");
  cfg.sources.kappa = text(require(c, "kappa", "coefficients"), "kappa");
  cfg.sources.rho = text(require(c, "rho", "coefficients"), "rho");

  cfg.epsilon = number(require(j, "epsilon", "config"), "epsilon");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw ValidationError("config: epsilon must lie in (0, 1)");

  if (auto it = j.find("indices"); it != j.end()) cfg.indices = index_list(*it, "indices");
  if (auto it = j.find("convergence_indices"); it != j.end()) {
    cfg.convergence_indices = index_list(*it, "convergence_indices");
  }
  if (auto it = j.find("epsilons"); it != j.end()) {
    if (!it->is_array()) throw ValidationError("config: 'epsilons' must be a list");
    cfg.epsilons.clear();
    for (const auto& v : *it) {
      const double e = number(v, "epsilons");
      if (!(e > 0.0 && e < 1.0)) throw ValidationError("config: every entry of 'epsilons' must lie in (0, 1)");
      cfg.epsilons.push_back(e);
    }
  }
  if (auto it = j.find("figure_index"); it != j.end()) cfg.figure_index = integer(*it, "figure_index");
  if (auto it = j.find("grid_points"); it != j.end()) cfg.grid_points = integer(*it, "grid_points");
  if (cfg.figure_index < 1) throw ValidationError("config: 'figure_index' must be >= 1");
  if (cfg.grid_points < 2) throw ValidationError("config: 'grid_points' must be >= 2");

  if (auto it = j.find("tolerances"); it != j.end()) {
    if (auto t = it->find("rel_tol"); t != it->end()) cfg.ivp.rel_tol = number(*t, "rel_tol");
    if (auto t = it->find("abs_tol"); t != it->end()) cfg.ivp.abs_tol = number(*t, "abs_tol");
    if (!(cfg.ivp.rel_tol > 0 && cfg.ivp.abs_tol > 0)) throw ValidationError("config: tolerances must be positive");
  }

  if (auto it = j.find("check_table"); it != j.end()) {
    TableCheck tc;
    if (auto t = it->find("tolerance_shooting"); t != it->end()) tc.tolerance_shooting = number(*t, "tolerance_shooting");
    if (auto t = it->find("tolerance_wkb"); t != it->end()) tc.tolerance_wkb = number(*t, "tolerance_wkb");
    const json& rows = require(*it, "rows", "check_table");
    if (!rows.is_array()) throw ValidationError("config: 'check_table.rows' must be a list");
    for (const auto& row : rows) {
      ReferenceRow r;
      r.n = integer(require(row, "n", "check_table row"), "n");
      r.sqrt_exact = maybe(row, "sqrt_exact");
      r.sqrt_lowfreq = maybe(row, "sqrt_lowfreq");
      r.omega = maybe(row, "omega");
      r.omega1 = maybe(row, "omega1");
      r.delta = maybe(row, "delta");
      r.sqrt_highfreq = maybe(row, "sqrt_highfreq");
      tc.rows.push_back(r);
    }
    cfg.check_table = std::move(tc);
  }

  coefficient_set(cfg);  // validates the coefficients up front
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

CoefficientSet coefficient_set(const RunConfig& cfg) {
  const auto& s = cfg.sources;
  return make_coefficient_set(s.a, s.b, s.k, s.r, s.kappa, s.rho);
}

}  // namespace dcstring::cli
