// gpurity: batch front-end for the Gaussian-channel purity toolkit.
//
// Subcommands: validate, purity, optimize, multiplicativity, majorization,
// sweep. Every run emits a CSV table (17 significant digits) and a JSON
// summary; both are deterministic for a fixed seed.
//
// Exit codes: 0 success, 2 invalid input, 3 hypothesis violation,
// 4 non-convergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gauss/channels.hpp"
#include "gauss/fock_oracle.hpp"
#include "gauss/optimizer.hpp"

namespace {

using nlohmann::json;

constexpr int kExitInvalidInput = 2;
constexpr int kExitHypothesis = 3;
constexpr int kExitNonConvergence = 4;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) {
      throw std::invalid_argument("bad value in p list: " + item);
    }
    if (!(v > 1.0)) {
      throw std::invalid_argument("p values must be > 1");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty p list");
  return out;
}

struct RunOutput {
  std::string csv;
  json summary;

  void emit(const std::string& out_path) const {
    if (out_path.empty()) {
      std::cout << csv;
      std::cout << summary.dump(2) << "\n";
      return;
    }
    std::ofstream csv_file(out_path);
    if (!csv_file) {
      throw std::invalid_argument("cannot write " + out_path);
    }
    csv_file << csv;
    std::ofstream json_file(out_path + ".json");
    if (!json_file) {
      throw std::invalid_argument("cannot write " + out_path + ".json");
    }
    json_file << summary.dump(2) << "\n";
  }
};

json report_to_json(const gauss::PurityReport& rep) {
  json j;
  j["channel"] = rep.channel_description;
  j["p"] = rep.p;
  j["inf_f_p"] = rep.inf_f_p;
  j["xi_p"] = rep.xi_p;
  j["trace_power_opt"] = rep.trace_power_opt;
  j["argmin_asymptotic"] = rep.argmin_asymptotic;
  j["reduction_used"] = rep.reduction_used;
  j["log_z_bound_may_be_active"] = rep.log_z_bound_may_be_active;
  j["gradient_norm_at_argmin"] = rep.gradient_norm_at_argmin;
  j["status"] = rep.status == gauss::OptStatus::kConverged
                    ? "converged"
                    : "non-convergence";
  if (!rep.per_factor_inf.empty()) {
    j["per_factor_inf"] = rep.per_factor_inf;
    j["multiplicativity_ratio"] = rep.multiplicativity_ratio;
  }
  if (!rep.verdict.empty()) j["verdict"] = rep.verdict;
  return j;
}

gauss::OptimizerConfig make_config(int starts, unsigned seed) {
  gauss::OptimizerConfig cfg;
  if (starts > 0) cfg.starts = starts;
  cfg.seed = seed;
  return cfg;
}

int run_validate(const std::string& spec_path, const std::string& out_path) {
  const gauss::GaussianChannel ch = gauss::channel_from_json_file(spec_path);
  const gauss::ChannelVerdict verdict = gauss::validate(ch);

  RunOutput out;
  std::ostringstream csv;
  csv << "# gpurity validate v1\n";
  csv << "valid,lmi_margin,det_check_applicable,det_check_valid,det_margin,"
         "pure_channel\n";
  csv << (verdict.valid ? 1 : 0) << "," << fmt(verdict.lmi_margin) << ","
      << (verdict.det_check_applicable ? 1 : 0) << ","
      << (verdict.det_check_valid ? 1 : 0) << "," << fmt(verdict.det_margin)
      << "," << (gauss::is_pure_channel(ch) ? 1 : 0) << "\n";
  out.csv = csv.str();
  out.summary = {{"command", "validate"},
                 {"schema", "v1"},
                 {"spec", spec_path},
                 {"valid", verdict.valid},
                 {"lmi_margin", verdict.lmi_margin},
                 {"det_check_applicable", verdict.det_check_applicable},
                 {"det_margin", verdict.det_margin},
                 {"pure_channel", gauss::is_pure_channel(ch)}};
  out.emit(out_path);
  return verdict.valid ? 0 : kExitInvalidInput;
}

int run_purity(const std::string& spec_path, const std::string& gamma_path,
               const std::vector<double>& ps, double tail_tol,
               const std::string& out_path) {
  const gauss::CovarianceMatrix gamma = gauss::cm_from_json_file(gamma_path);
  gauss::CovarianceMatrix state = gamma;
  if (!spec_path.empty()) {
    const gauss::GaussianChannel ch = gauss::channel_from_json_file(spec_path);
    state = gauss::apply(ch, gamma);
  }
  const auto nus = gauss::symplectic_eigenvalues(state);

  RunOutput out;
  std::ostringstream csv;
  csv << "# gpurity purity v1\n";
  csv << "p,trace_power,p_norm,renyi,oracle_trace_power,oracle_error_bound\n";
  json rows = json::array();
  for (double p : ps) {
    const gauss::PurityValue pv = gauss::purity_from_spectrum(nus, p);
    const gauss::OracleValue ov = gauss::oracle_trace_power(nus, p, tail_tol);
    csv << fmt(p) << "," << fmt(pv.trace_power) << "," << fmt(pv.p_norm) << ","
        << fmt(pv.renyi) << "," << fmt(ov.value) << "," << fmt(ov.error_bound)
        << "\n";
    rows.push_back({{"p", p},
                    {"trace_power", pv.trace_power},
                    {"p_norm", pv.p_norm},
                    {"renyi", pv.renyi}});
  }
  const double svn = gauss::von_neumann_entropy_from_spectrum(nus);
  out.csv = csv.str();
  out.summary = {{"command", "purity"},
                 {"schema", "v1"},
                 {"symplectic_spectrum", nus},
                 {"von_neumann_entropy", svn},
                 {"rows", rows}};
  out.emit(out_path);
  return 0;
}

int run_optimize(const std::string& spec_path, const std::vector<double>& ps,
                 int starts, unsigned seed, const std::string& out_path) {
  const gauss::GaussianChannel ch = gauss::channel_from_json_file(spec_path);

  RunOutput out;
  std::ostringstream csv;
  csv << "# gpurity optimize v1\n";
  csv << "p,inf_f_p,xi_p,trace_power_opt,gradient_norm,reduction_used,"
         "asymptotic,status\n";
  json rows = json::array();
  bool nonconverged = false;
  for (double p : ps) {
    gauss::OptimizerConfig cfg = make_config(starts, seed);
    cfg.p = p;
    const gauss::PurityReport rep = gauss::optimize(ch, cfg);
    nonconverged |= rep.status == gauss::OptStatus::kNonConvergence;
    csv << fmt(p) << "," << fmt(rep.inf_f_p) << "," << fmt(rep.xi_p) << ","
        << fmt(rep.trace_power_opt) << "," << fmt(rep.gradient_norm_at_argmin)
        << "," << (rep.reduction_used ? 1 : 0) << ","
        << (rep.argmin_asymptotic ? 1 : 0) << ","
        << (rep.status == gauss::OptStatus::kConverged ? "converged"
                                                       : "non-convergence")
        << "\n";
    rows.push_back(report_to_json(rep));
  }
  out.csv = csv.str();
  out.summary = {{"command", "optimize"},
                 {"schema", "v1"},
                 {"spec", spec_path},
                 {"seed", seed},
                 {"rows", rows}};
  out.emit(out_path);
  return nonconverged ? kExitNonConvergence : 0;
}

int run_multiplicativity(const std::string& spec_path,
                         const std::vector<double>& ps, int starts,
                         unsigned seed, const std::string& out_path) {
  const gauss::GaussianChannel ch = gauss::channel_from_json_file(spec_path);
  if (ch.factor_count() < 2) {
    throw gauss::HypothesisError(
        "multiplicativity needs a channel with at least two factors");
  }
  std::vector<gauss::GaussianChannel> factors;
  for (int i = 0; i < ch.factor_count(); ++i) factors.push_back(ch.factor(i));

  RunOutput out;
  std::ostringstream csv;
  csv << "# gpurity multiplicativity v1\n";
  csv << "p,joint_inf,factor_product,ratio,off_block_norm,multiplicative,"
         "case\n";
  json rows = json::array();
  bool nonconverged = false;
  for (double p : ps) {
    const gauss::OptimizerConfig cfg = make_config(starts, seed);
    const gauss::MultiplicativityReport rep =
        gauss::multiplicativity_check(factors, p, cfg);
    nonconverged |= rep.joint.status == gauss::OptStatus::kNonConvergence;
    double product = 1.0;
    for (const auto& f : rep.factors) product *= f.inf_f_p;
    csv << fmt(p) << "," << fmt(rep.joint.inf_f_p) << "," << fmt(product)
        << "," << fmt(rep.ratio) << "," << fmt(rep.off_block_norm) << ","
        << (rep.multiplicative ? 1 : 0) << ","
        << static_cast<int>(rep.covered_case) << "\n";
    json row;
    row["p"] = p;
    row["ratio"] = rep.ratio;
    row["off_block_norm"] = rep.off_block_norm;
    row["multiplicative"] = rep.multiplicative;
    row["case"] = static_cast<int>(rep.covered_case);
    row["joint"] = report_to_json(rep.joint);
    rows.push_back(row);
  }
  out.csv = csv.str();
  out.summary = {{"command", "multiplicativity"},
                 {"schema", "v1"},
                 {"spec", spec_path},
                 {"seed", seed},
                 {"rows", rows}};
  out.emit(out_path);
  return nonconverged ? kExitNonConvergence : 0;
}

int run_majorization(const std::string& spec_path, int samples, int starts,
                     unsigned seed, double eps, const std::string& out_path) {
  const gauss::GaussianChannel ch = gauss::channel_from_json_file(spec_path);
  const gauss::OptimizerConfig cfg = make_config(starts, seed);
  const gauss::MajorizationAudit audit =
      gauss::majorization_audit(ch, samples, cfg, eps);

  RunOutput out;
  std::ostringstream csv;
  csv << "# gpurity majorization v1\n";
  csv << "samples,passed,worst_margin,eps\n";
  csv << audit.samples << "," << audit.passed << ","
      << fmt(audit.worst_margin) << "," << fmt(eps) << "\n";
  out.csv = csv.str();
  out.summary = {{"command", "majorization"},
                 {"schema", "v1"},
                 {"spec", spec_path},
                 {"seed", seed},
                 {"samples", audit.samples},
                 {"passed", audit.passed},
                 {"worst_margin", audit.worst_margin},
                 {"optimal_spectrum", audit.optimal_spectrum}};
  out.emit(out_path);
  return audit.passed == audit.samples ? 0 : kExitHypothesis;
}

// Sweeps a noise-scale parameter t over the grid: Y -> t * Y, optimizing at
// each grid point. Rows are ordered by (t, p).
int run_sweep(const std::string& spec_path, const std::vector<double>& grid,
              const std::vector<double>& ps, int starts, unsigned seed,
              const std::string& out_path) {
  const gauss::GaussianChannel base = gauss::channel_from_json_file(spec_path);
  if (grid.empty()) throw std::invalid_argument("empty sweep grid");

  RunOutput out;
  std::ostringstream csv;
  csv << "# gpurity sweep v1\n";
  csv << "t,p,inf_f_p,xi_p,trace_power_opt,status\n";
  json rows = json::array();
  bool nonconverged = false;
  for (double t : grid) {
    if (!(t > 0.0)) {
      throw std::invalid_argument("sweep grid values must be > 0");
    }
    const gauss::GaussianChannel ch(base.x, t * base.y, base.mode_partition);
    if (!gauss::validate(ch).valid) {
      throw std::invalid_argument("sweep point t=" + fmt(t) +
                                  " leaves the CP region");
    }
    for (double p : ps) {
      gauss::OptimizerConfig cfg = make_config(starts, seed);
      cfg.p = p;
      const gauss::PurityReport rep = gauss::optimize(ch, cfg);
      nonconverged |= rep.status == gauss::OptStatus::kNonConvergence;
      csv << fmt(t) << "," << fmt(p) << "," << fmt(rep.inf_f_p) << ","
          << fmt(rep.xi_p) << "," << fmt(rep.trace_power_opt) << ","
          << (rep.status == gauss::OptStatus::kConverged ? "converged"
                                                         : "non-convergence")
          << "\n";
      rows.push_back({{"t", t}, {"p", p}, {"inf_f_p", rep.inf_f_p}});
    }
  }
  out.csv = csv.str();
  out.summary = {{"command", "sweep"},
                 {"schema", "v1"},
                 {"spec", spec_path},
                 {"seed", seed},
                 {"rows", rows}};
  out.emit(out_path);
  return nonconverged ? kExitNonConvergence : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian channel output purity toolkit"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string gamma_path;
  std::string out_path;
  std::string p_list = "2";
  std::string grid_list;
  unsigned seed = 1;
  int starts = 0;
  int samples = 100;
  double tail_tol = 1e-12;
  double eps = 1e-10;

  auto add_common = [&](CLI::App* cmd, bool needs_spec) {
    auto* opt = cmd->add_option("--spec", spec_path, "channel JSON file");
    if (needs_spec) opt->required();
    cmd->add_option("--out", out_path, "output CSV path (JSON beside it)");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--starts", starts, "optimizer multi-start count");
    cmd->add_option("--p", p_list, "comma-separated p values (> 1)");
    cmd->add_option("--tail-tol", tail_tol, "oracle tail tolerance");
  };

  CLI::App* c_validate = app.add_subcommand("validate", "CP check");
  add_common(c_validate, true);
  CLI::App* c_purity =
      app.add_subcommand("purity", "purities of a state (optionally after a "
                                   "channel)");
  add_common(c_purity, false);
  c_purity->add_option("--gamma", gamma_path, "covariance matrix JSON file")
      ->required();
  CLI::App* c_optimize = app.add_subcommand("optimize", "maximal output "
                                                        "purity");
  add_common(c_optimize, true);
  CLI::App* c_mult = app.add_subcommand("multiplicativity",
                                        "joint vs per-factor optimum");
  add_common(c_mult, true);
  CLI::App* c_major = app.add_subcommand("majorization", "optimal-output "
                                                         "majorization audit");
  add_common(c_major, true);
  c_major->add_option("--samples", samples, "number of random inputs");
  c_major->add_option("--eps", eps, "truncation tolerance");
  CLI::App* c_sweep = app.add_subcommand("sweep", "optimize over a noise "
                                                  "scale grid (Y -> t*Y)");
  add_common(c_sweep, true);
  c_sweep->add_option("--grid", grid_list, "comma-separated t values")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const std::vector<double> ps = parse_p_list(p_list);
    if (c_validate->parsed()) return run_validate(spec_path, out_path);
    if (c_purity->parsed()) {
      return run_purity(spec_path, gamma_path, ps, tail_tol, out_path);
    }
    if (c_optimize->parsed()) {
      return run_optimize(spec_path, ps, starts, seed, out_path);
    }
    if (c_mult->parsed()) {
      return run_multiplicativity(spec_path, ps, starts, seed, out_path);
    }
    if (c_major->parsed()) {
      return run_majorization(spec_path, samples, starts, seed, eps, out_path);
    }
    if (c_sweep->parsed()) {
      std::vector<double> grid;
      std::stringstream ss(grid_list);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) grid.push_back(std::stod(item));
      }
      return run_sweep(spec_path, grid, ps, starts, seed, out_path);
    }
  } catch (const gauss::HypothesisError& e) {
    std::cerr << R"({"error":"hypothesis","message":")" << e.what()
              << "\"}\n";
    return kExitHypothesis;
  } catch (const gauss::TruncationError& e) {
    std::cerr << R"({"error":"non-convergence","message":")" << e.what()
              << "\"}\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << R"({"error":"invalid-input","message":")" << e.what()
              << "\"}\n";
    return kExitInvalidInput;
  }
  return 0;
}
