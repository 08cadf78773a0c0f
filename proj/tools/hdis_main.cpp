// hdis command line: run the six-covariance benchmark, emit partial-KL
// sweep data, or dump the ell-spectrum of an estimated optimal covariance.
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hdis/bench.hpp"

namespace {

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Applies a flat key=value config file by injecting the corresponding flags
// after the subcommand token; flags already on the command line win.
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);

  std::set<std::string> given;
  for (const std::string& a : args) {
    if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));
  }

  std::vector<std::string> extra;
  std::string line;
  while (std::getline(in, line)) {
    line = trimmed(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config file: expected key=value, got '" +
                               line + "'");
    }
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    const std::string flag = "--" + key;
    if (key == "config" || given.count(flag)) continue;
    if (key == "reuse-gstar") {
      if (value == "true" || value == "1" || value == "yes" || value == "on") {
        extra.push_back(flag);
      }
      continue;
    }
    extra.push_back(flag);
    extra.push_back(value);
  }
  // insert right after the subcommand name
  args.insert(args.size() > 1 ? args.begin() + 1 : args.end(), extra.begin(),
              extra.end());
  return args;
}

std::vector<int> parse_dim_range(const std::string& spec) {
  // "start:stop:step" (step optional, default 1), inclusive
  std::vector<int> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(std::stoi(tok));
  if (parts.size() < 2 || parts.size() > 3) {
    throw CLI::ValidationError("--dim-range", "expected start:stop[:step]");
  }
  const int start = parts[0];
  const int stop = parts[1];
  const int step = parts.size() == 3 ? parts[2] : 1;
  if (step <= 0 || stop < start) {
    throw CLI::ValidationError("--dim-range", "need stop >= start and step > 0");
  }
  std::vector<int> dims;
  for (int d = start; d <= stop; d += step) dims.push_back(d);
  return dims;
}

std::size_t parse_k(const std::string& k) {
  if (k == "auto") return 0;
  const long v = std::stol(k);
  if (v < 1) throw CLI::ValidationError("--k", "expected 'auto' or an integer >= 1");
  return static_cast<std::size_t>(v);
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) return;
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + out_path);
  out << text;
}

struct CommonOpts {
  hdis::ExperimentConfig cfg;
  std::string k_mode = "auto";
  std::string format = "csv";
  std::string out_path;
  std::string config_path;
};

void add_common(CLI::App* sub, CommonOpts& o, std::size_t default_m) {
  o.cfg.gstar_m = default_m;
  sub->add_option("--problem", o.cfg.problem, "problem name")
      ->required()
      ->check(CLI::IsMember(hdis::problem_names()));
  sub->add_option("--M", o.cfg.gstar_m, "g* sample size per replication")
      ->capture_default_str();
  sub->add_option("--reps", o.cfg.reps, "replication count")
      ->capture_default_str();
  sub->add_option("--seed", o.cfg.seed, "64-bit seed")->capture_default_str();
  sub->add_option("--pool", o.cfg.pool,
                  "SIR pool size (0 = max(100000, 200*M))")
      ->capture_default_str();
  sub->add_option("--oracle-samples", o.cfg.oracle_samples,
                  "crude Monte Carlo budget for oracle references")
      ->capture_default_str();
  sub->add_option("--k", o.k_mode, "'auto' or a fixed direction count")
      ->capture_default_str();
  sub->add_option("--out", o.out_path, "also write the output to this file");
  sub->add_option("--config", o.config_path,
                  "key=value config file; flags override it");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian importance sampling with low-rank covariance projection"};
  app.require_subcommand(1);

  // run
  CommonOpts run_o;
  std::vector<std::string> strategy_names;
  auto* run = app.add_subcommand("run", "six-covariance benchmark tables");
  add_common(run, run_o, 500);
  run->add_option("--dims", run_o.cfg.dims, "comma-separated dimensions")
      ->required()
      ->delimiter(',');
  run->add_option("--strategies", strategy_names,
                  "subset of opt,empirical,proj_d_true,proj_d_hat,"
                  "proj_m_true,proj_m_hat")
      ->delimiter(',');
  run->add_option("--N", run_o.cfg.is_n, "importance-sampling sample size")
      ->capture_default_str();
  run->add_flag("--reuse-gstar", run_o.cfg.reuse_gstar,
                "reuse one g* sample across replications");
  run->add_option("--format", run_o.format, "csv or md")
      ->check(CLI::IsMember({"csv", "md"}))
      ->capture_default_str();

  // sweep
  CommonOpts sweep_o;
  std::string dim_range;
  auto* sweep = app.add_subcommand(
      "sweep", "partial KL divergence vs dimension (figure data)");
  add_common(sweep, sweep_o, 200);
  sweep->add_option("--dim-range", dim_range, "start:stop[:step]")->required();

  // spectrum
  CommonOpts spec_o;
  int spec_dim = 0;
  auto* spectrum = app.add_subcommand(
      "spectrum", "ell-values of the reference and estimated spectra");
  add_common(spectrum, spec_o, 200);
  spectrum->add_option("--dim", spec_dim, "dimension")->required();

  try {
    std::vector<std::string> args =
        apply_config_file(std::vector<std::string>(argv + 1, argv + argc));
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "hdis: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*run) {
      run_o.cfg.fixed_k = parse_k(run_o.k_mode);
      if (!strategy_names.empty()) {
        run_o.cfg.strategies.clear();
        for (const std::string& s : strategy_names) {
          run_o.cfg.strategies.push_back(hdis::strategy_from_string(s));
        }
      }
      const hdis::ExperimentReport report = hdis::run_experiment(run_o.cfg);
      const std::string csv =
          hdis::render_report(report, hdis::ReportFormat::Csv);
      std::cout << csv;
      if (!run_o.out_path.empty()) {
        write_output(
            hdis::render_report(report,
                                hdis::report_format_from_string(run_o.format)),
            run_o.out_path);
      }
    } else if (*sweep) {
      sweep_o.cfg.fixed_k = parse_k(sweep_o.k_mode);
      sweep_o.cfg.dims = parse_dim_range(dim_range);
      const std::string csv =
          hdis::render_sweep_csv(hdis::run_dimension_sweep(sweep_o.cfg));
      std::cout << csv;
      write_output(csv, sweep_o.out_path);
    } else if (*spectrum) {
      spec_o.cfg.fixed_k = parse_k(spec_o.k_mode);
      spec_o.cfg.dims = {spec_dim};
      const std::string csv = hdis::render_spectrum_csv(
          hdis::spectrum_plot_data(spec_o.cfg, spec_dim));
      std::cout << csv;
      write_output(csv, spec_o.out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "hdis: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
