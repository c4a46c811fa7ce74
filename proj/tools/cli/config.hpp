#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcstring/coeffs.hpp"
#include "dcstring/ode.hpp"

namespace dcstring::cli {

struct CoefficientSources {
  double a = 0.0;
  double b = 0.0;
  std::string k, r, kappa, rho;
};

/// Reference values for `compare --check-table`. Missing entries are not checked.
struct ReferenceRow {
  int n = 0;
  std::optional<double> sqrt_exact, sqrt_lowfreq, omega, omega1, delta, sqrt_highfreq;
};

struct TableCheck {
  double tolerance_shooting = 2e-4;  // sqrt_exact, sqrt_lowfreq
  double tolerance_wkb = 5e-3;       // omega, omega1, delta, sqrt_highfreq
  std::vector<ReferenceRow> rows;
};

struct RunConfig {
  CoefficientSources sources;
  double epsilon = 0.0;
  std::vector<int> indices{5, 10, 15};
  std::vector<double> epsilons{0.1, 0.05, 0.025, 0.0125};
  std::vector<int> convergence_indices{1, 2, 3};
  int figure_index = 5;
  int grid_points = 401;
  IvpOptions ivp{};
  std::optional<TableCheck> check_table;
};

/// Parses and validates a JSON config: the coefficients must form a valid
/// CoefficientSet and epsilon must lie in (0, 1). Throws ValidationError or ParseError.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

CoefficientSet coefficient_set(const RunConfig& cfg);

/// "5", "1..20" (inclusive) or "5,10,15".
std::vector<int> parse_index_list(std::string_view text);

}  // namespace dcstring::cli
