#include "run.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "csv.hpp"
#include "dcstring/compare.hpp"
#include "dcstring/error.hpp"
#include "dcstring/exact.hpp"
#include "dcstring/highfreq.hpp"
#include "dcstring/lowfreq.hpp"

namespace dcstring::cli {

namespace {

const char* case_name(PencilCase k) {
  switch (k) {
    case PencilCase::kRegular: return "regular";
    case PencilCase::kDeltaZero: return "delta_zero";
    case PencilCase::kDeltaHalfPi: return "delta_half_pi";
  }
  return "?";
}

struct Options {
  std::string config;
  std::string out;
  std::string indices;  // lo..hi or a comma list; empty means "from the config"
  std::string kind = "all";
  int figure_n = 0;
  int grid = 0;
  bool check_table = false;
};

std::vector<int> indices_or(const Options& o, const std::vector<int>& fallback) {
  return o.indices.empty() ? fallback : parse_index_list(o.indices);
}

CsvTable cmd_exact(const RunConfig& cfg, const Options& o, std::ostream&) {
  const ProblemInstance inst = make_instance(coefficient_set(cfg), cfg.epsilon, cfg.ivp);
  CsvTable t{{"n", "lambda", "sqrt_lambda"}, {}};
  for (int n : indices_or(o, cfg.indices)) {
    const double lam = eigenvalue(inst, n);
    t.rows.push_back({static_cast<long long>(n), lam, std::sqrt(lam)});
  }
  return t;
}

CsvTable cmd_lowfreq(const RunConfig& cfg, const Options& o, std::ostream&) {
  const CoefficientSet cs = coefficient_set(cfg);
  CsvTable t{{"n", "mu", "nu", "sqrt_eps_mu", "lambda_pred"}, {}};
  for (int n : indices_or(o, cfg.indices)) {
    const LowFreqApprox ap = build_lowfreq(cs, n, cfg.ivp);
    const double pred = lowfreq_prediction(ap, cfg.epsilon).lambda;
    t.rows.push_back({static_cast<long long>(n), ap.mu, ap.nu, std::sqrt(cfg.epsilon * ap.mu), pred});
  }
  return t;
}

CsvTable cmd_highfreq(const RunConfig& cfg, const Options& o, std::ostream& err) {
  const CoefficientSet cs = coefficient_set(cfg);
  const WkbFrame frame = build_wkb_frame(cs, cfg.ivp);
  const double eps = cfg.epsilon;
  CsvTable t{{"l", "omega", "omega1", "delta", "beta0", "lambda_pred", "sqrt_highfreq", "case", "roots"}, {}};
  for (int l : indices_or(o, cfg.indices)) {
    const AdmissibleFrequency af = admissible_frequency(frame, cs, eps, l, cfg.ivp);
    const double gamma = af.omega / eps + af.omega1;
    if (af.pencil.kind == PencilCase::kDeltaHalfPi) {
      err << "warning: l=" << l << " sits at delta = pi/2; the approximation is not reliable there\n";
    }
    t.rows.push_back({static_cast<long long>(l), af.omega, af.omega1, af.delta, af.beta0, eps * gamma * gamma,
                      af.omega / std::sqrt(eps) + std::sqrt(eps) * af.omega1, std::string(case_name(af.pencil.kind)),
                      static_cast<long long>(af.roots.size())});
  }
  return t;
}

struct Gate {
  bool ok = true;
};

void check(Gate& g, std::ostream& err, int n, const char* col, double got, const std::optional<double>& want,
           double tol) {
  if (!want) return;
  const double diff = std::abs(got - *want);
  const bool pass = diff <= tol;
  g.ok = g.ok && pass;
  err << "check n=" << n << ' ' << col << ": computed " << format_double(got) << ", reference "
      << format_double(*want) << ", |diff| " << format_double(diff) << " (tol " << format_double(tol) << ") "
      << (pass ? "ok" : "FAIL") << '\n';
}

CsvTable cmd_compare(const RunConfig& cfg, const Options& o, std::ostream& err, bool& gate_failed) {
  std::vector<int> ns = cfg.indices;
  if (o.check_table) {
    if (!cfg.check_table) throw ValidationError("config: --check-table needs a 'check_table' section");
    ns.clear();
    for (const auto& r : cfg.check_table->rows) ns.push_back(r.n);
  }
  if (!o.indices.empty()) ns = parse_index_list(o.indices);

  const ProblemInstance inst = make_instance(coefficient_set(cfg), cfg.epsilon, cfg.ivp);
  const std::vector<ComparisonRow> rows = comparison_table(inst, ns);
  CsvTable t{{"n", "sqrt_exact", "sqrt_lowfreq", "omega", "omega1", "delta", "sqrt_highfreq"}, {}};
  for (const auto& r : rows) {
    if (r.l != r.n) {
      err << "note: n=" << r.n << " uses quantization index l=" << r.l << " (" << r.wraps
          << " Neumann frequency(ies) of the stiff part below omega)\n";
    }
    if (r.kind == PencilCase::kDeltaHalfPi) err << "warning: n=" << r.n << " sits at delta = pi/2\n";
    t.rows.push_back({static_cast<long long>(r.n), r.sqrt_exact, r.sqrt_lowfreq, r.omega, r.omega1, r.delta,
                      r.sqrt_highfreq});
  }

  if (o.check_table) {
    const TableCheck& tc = *cfg.check_table;
    Gate g;
    for (const auto& ref : tc.rows) {
      const ComparisonRow* row = nullptr;
      for (const auto& r : rows) {
        if (r.n == ref.n) row = &r;
      }
      if (!row) {
        err << "check n=" << ref.n << ": not computed FAIL\n";
        g.ok = false;
        continue;
      }
      check(g, err, ref.n, "sqrt_exact", row->sqrt_exact, ref.sqrt_exact, tc.tolerance_shooting);
      check(g, err, ref.n, "sqrt_lowfreq", row->sqrt_lowfreq, ref.sqrt_lowfreq, tc.tolerance_shooting);
      check(g, err, ref.n, "omega", row->omega, ref.omega, tc.tolerance_wkb);
      check(g, err, ref.n, "omega1", row->omega1, ref.omega1, tc.tolerance_wkb);
      check(g, err, ref.n, "delta", row->delta, ref.delta, tc.tolerance_wkb);
      check(g, err, ref.n, "sqrt_highfreq", row->sqrt_highfreq, ref.sqrt_highfreq, tc.tolerance_wkb);
    }
    err << (g.ok ? "table check passed\n" : "table check FAILED\n");
    gate_failed = !g.ok;
  }
  return t;
}

CsvTable cmd_figure(const RunConfig& cfg, const Options& o, std::ostream& err) {
  const ProblemInstance inst = make_instance(coefficient_set(cfg), cfg.epsilon, cfg.ivp);
  const int n = o.figure_n > 0 ? o.figure_n : cfg.figure_index;
  const int grid = o.grid > 0 ? o.grid : cfg.grid_points;
  const FigureData fd = figure_data(inst, n, grid);
  err << "n=" << n << ": L2 distance to exact, low " << format_double(fd.distance_low) << ", high "
      << format_double(fd.distance_high) << '\n';
  CsvTable t{{"x", "u_exact", "u_low", "u_high"}, {}};
  for (const auto& r : fd.rows) t.rows.push_back({r.x, r.u_exact, r.u_low, r.u_high});
  return t;
}

CsvTable cmd_converge(const RunConfig& cfg, const Options& o, std::ostream&) {
  std::vector<ConvergenceKind> kinds;
  const std::vector<std::pair<const char*, ConvergenceKind>> all = {
      {"lowfreq-eigenvalue", ConvergenceKind::kLowFreqEigenvalue},
      {"lowfreq-eigenfunction", ConvergenceKind::kLowFreqEigenfunction},
      {"highfreq-eigenvalue", ConvergenceKind::kHighFreqEigenvalue}};
  for (const auto& [name, k] : all) {
    if (o.kind == "all" || o.kind == name) kinds.push_back(k);
  }
  if (kinds.empty()) throw ValidationError("unknown convergence kind '" + o.kind + "'");

  const CoefficientSet cs = coefficient_set(cfg);
  CsvTable t{{"kind", "n", "epsilon", "error", "slope"}, {}};
  for (ConvergenceKind k : kinds) {
    for (int n : indices_or(o, cfg.convergence_indices)) {
      const ConvergenceReport rep = convergence_study(cs, n, cfg.epsilons, k, cfg.ivp);
      for (std::size_t i = 0; i < rep.epsilons.size(); ++i) {
        t.rows.push_back({std::string(to_string(k)), static_cast<long long>(n), rep.epsilons[i], rep.errors[i],
                          rep.fitted_slope});
      }
    }
  }
  return t;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eigenpairs of a two-part string with doubly contrasting coefficients", "dcstring"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON run configuration")->required();
    sub->add_option("--out", o.out, "CSV output path (default: standard output)");
  };
  CLI::App* exact = app.add_subcommand("exact", "exact eigenvalues by shooting");
  CLI::App* low = app.add_subcommand("lowfreq", "low-frequency approximation");
  CLI::App* high = app.add_subcommand("highfreq", "admissible frequencies by quantization index");
  CLI::App* cmp = app.add_subcommand("compare", "exact vs low- vs high-frequency table");
  CLI::App* fig = app.add_subcommand("figure", "eigenfunction comparison data");
  CLI::App* conv = app.add_subcommand("converge", "convergence rates in epsilon");
  for (CLI::App* s : {exact, low, high, cmp, fig, conv}) common(s);
  for (CLI::App* s : {exact, low, cmp, conv}) s->add_option("--n", o.indices, "indices, lo..hi or a,b,c");
  high->add_option("--l", o.indices, "quantization indices, lo..hi or a,b,c");
  cmp->add_flag("--check-table", o.check_table, "compare against the reference rows of the config");
  fig->add_option("--n", o.figure_n, "eigen index");
  fig->add_option("--grid", o.grid, "number of grid points");
  conv->add_option("--kind", o.kind, "lowfreq-eigenvalue, lowfreq-eigenfunction, highfreq-eigenvalue or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  bool gate_failed = false;
  try {
    const RunConfig cfg = load_config(o.config);
    CsvTable table;
    if (exact->parsed()) table = cmd_exact(cfg, o, err);
    else if (low->parsed()) table = cmd_lowfreq(cfg, o, err);
    else if (high->parsed()) table = cmd_highfreq(cfg, o, err);
    else if (cmp->parsed()) table = cmd_compare(cfg, o, err, gate_failed);
    else if (fig->parsed()) table = cmd_figure(cfg, o, err);
    else table = cmd_converge(cfg, o, err);

    if (o.out.empty()) {
      emit_csv(table, out);
    } else {
      std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
      if (!file) throw IoError("cannot open '" + o.out + "' for writing");
      emit_csv(table, file);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  }
  return gate_failed ? kGateFailure : kOk;
}

}  // namespace dcstring::cli
