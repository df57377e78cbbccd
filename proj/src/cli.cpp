#include "gausvol/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "gausvol/config.hpp"
#include "gausvol/error.hpp"
#include "gausvol/format.hpp"
#include "gausvol/harness.hpp"
#include "gausvol/path.hpp"

namespace gausvol {
namespace {

// Flag name -> config key. Every subcommand accepts the full set.
const std::vector<std::pair<std::string, std::string>>& flag_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys{
      {"process", "process"},
      {"hurst", "hurst"},
      {"h0", "h0"},
      {"k0", "k0"},
      {"sigma", "sigma"},
      {"theta", "ou.theta"},
      {"x0", "ou.x0"},
      {"n", "n_list"},
      {"refinement", "refinement"},
      {"replications", "replications"},
      {"seed", "seed"},
      {"horizon", "horizon"},
      {"out", "out"},
      {"workers", "workers"},
      {"centering", "centering"},
      {"method", "method"},
      {"cholesky-cap", "cholesky_cap"},
      {"truncation", "limits.truncation"},
      {"input", "input"},
      {"series", "series"},
  };
  return keys;
}

struct Invocation {
  std::string config_file;
  bool check = false;
  bool allow_supercritical = false;
  std::map<std::string, std::string> flags;
  std::vector<std::string> sets;  // raw key=value
};

void add_common(CLI::App& sub, Invocation& inv) {
  sub.add_option("--config", inv.config_file, "key = value config file");
  sub.add_flag("--check", inv.check, "verify acceptance thresholds; exit 4 on failure");
  sub.add_flag("--allow-supercritical", inv.allow_supercritical,
               "accept 3/4 <= H < 1 (sample/diagnose only)");
  for (const auto& [flag, key] : flag_keys()) {
    sub.add_option("--" + flag, inv.flags[flag], "config key " + key);
  }
  sub.add_option("--set", inv.sets, "extra key=value override (repeatable)");
}

ExperimentConfig build_config(const CLI::App& sub, const Invocation& inv, Experiment experiment) {
  ExperimentConfig config = ExperimentConfig::with_defaults();
  if (experiment == Experiment::SAMPLE) config.out = "-";
  if (!inv.config_file.empty()) load_config_file(inv.config_file, config);
  config.experiment = experiment;
  for (const auto& [flag, key] : flag_keys()) {
    if (sub.count("--" + flag) > 0) config.set(key, inv.flags.at(flag));
  }
  for (const auto& kv : inv.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--set expects key=value, got '" + kv + "'");
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (inv.allow_supercritical) config.spec.allow_supercritical = true;
  config.finalize();
  return config;
}

int report_problems(const std::vector<std::string>& problems) {
  for (const auto& p : problems) std::cerr << "check failed: " << p << '\n';
  if (problems.empty()) {
    std::cout << "check: PASS\n";
    return kExitOk;
  }
  std::cout << "check: FAIL\n";
  return kExitCheckFailed;
}

void print_summary(const std::vector<SummaryRow>& rows) {
  for (const auto& r : rows) {
    std::cout << r.quantity;
    if (r.n != 0) std::cout << "[n=" << r.n << "]";
    std::cout << " = " << format_double(r.value) << '\n';
  }
}

int run(Experiment experiment, const ExperimentConfig& config, bool check) {
  switch (experiment) {
    case Experiment::SAMPLE: {
      const SamplePath path = run_sample(config);
      if (config.out == "-") {
        write_path_csv(std::cout, path);
      } else {
        write_path_csv(config.out, path);
      }
      if (!check || config.out == "-") return kExitOk;
      const SamplePath back = read_path_csv(config.out);
      std::vector<std::string> problems;
      if (back.values != path.values || !(back.grid == path.grid)) {
        problems.push_back("path CSV does not round-trip");
      }
      return report_problems(problems);
    }
    case Experiment::ESTIMATE: {
      const EstimateResult result = run_estimate(config);
      std::filesystem::create_directories(config.out);
      for (const auto& series : result.series) {
        std::ofstream f(std::filesystem::path(config.out) / ("qv_n" + std::to_string(series.n) + ".csv"));
        write_variation_csv(f, series);
      }
      {
        std::ofstream f(std::filesystem::path(config.out) / "summary.csv");
        write_summary_csv(f, result.summary);
        std::ofstream e(std::filesystem::path(config.out) / "config.echo");
        e << echo_config(config);
      }
      print_summary(result.summary);
      return kExitOk;
    }
    case Experiment::DIAGNOSE: {
      const auto rows = run_diagnose(config);
      std::filesystem::create_directories(config.out);
      {
        std::ofstream f(std::filesystem::path(config.out) / "diagnostics.csv");
        write_diagnostics_csv(f, rows);
        std::ofstream e(std::filesystem::path(config.out) / "config.echo");
        e << echo_config(config);
      }
      write_diagnostics_csv(std::cout, rows);
      return check ? report_problems(check_diagnostics(rows, config)) : kExitOk;
    }
    case Experiment::CONSISTENCY:
    case Experiment::CLT: {
      const bool clt = experiment == Experiment::CLT;
      const ExperimentReport report = clt ? run_clt(config) : run_consistency(config);
      write_report(report, config.out);
      print_summary(report.summary);
      if (!check) return kExitOk;
      std::vector<std::string> problems = audit_report(config.out);
      const auto more = clt ? check_clt(report, config) : check_consistency(report, config);
      problems.insert(problems.end(), more.begin(), more.end());
      return report_problems(problems);
    }
  }
  return kExitOk;
}

}  // namespace

int cli(int argc, const char* const* argv) {
  CLI::App app{"Integrated-volatility estimation for self-similar Gaussian drivers"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, Experiment>> commands{
      {"sample", Experiment::SAMPLE},
      {"estimate", Experiment::ESTIMATE},
      {"consistency", Experiment::CONSISTENCY},
      {"clt", Experiment::CLT},
      {"diagnose", Experiment::DIAGNOSE},
  };
  const std::map<std::string, std::string> help{
      {"sample", "synthesize a driver / integral / OU path to CSV"},
      {"estimate", "quadratic-variation estimate from a path CSV"},
      {"consistency", "Monte Carlo consistency experiment"},
      {"clt", "Monte Carlo CLT experiment"},
      {"diagnose", "kernel assumption diagnostics"},
  };
  std::vector<Invocation> invocations(commands.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, help.at(commands[i].first));
    add_common(*sub, invocations[i]);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      const ExperimentConfig config = build_config(*subs[i], invocations[i], commands[i].second);
      return run(commands[i].second, config, invocations[i].check);
    } catch (const InvalidArgument& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitNumerical;
    }
  }
  return kExitConfig;
}

}  // namespace gausvol
