#include "gausvol/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "gausvol/error.hpp"
#include "gausvol/format.hpp"
#include "gausvol/integrate.hpp"
#include "gausvol/kernels.hpp"
#include "gausvol/limits.hpp"
#include "gausvol/rng.hpp"
#include "gausvol/sampler.hpp"
#include "gausvol/stats.hpp"

namespace gausvol {
namespace {

using Clock = std::chrono::steady_clock;

template <class Fn>
void parallel_for(std::int64_t count, int workers, Fn&& fn) {
  std::int64_t threads = workers > 0 ? workers : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    while (!failed.load()) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  if (threads <= 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    for (std::int64_t t = 0; t < threads; ++t) pool.emplace_back(body);
  }
  if (error) std::rethrow_exception(error);
}

struct Pipeline {
  ProcessSpec spec;
  double hurst = 0.5;
  double kappa = 1.0;
  std::int64_t refinement = 1;
  Grid fine;
  std::shared_ptr<const IncrementSynthesizer> synth;
};

Pipeline make_pipeline(const ExperimentConfig& config) {
  validate(config.spec);
  Pipeline p;
  p.spec = config.spec;
  p.hurst = effective_index(config.spec);
  p.kappa = qv_normalizer(config.spec);
  const std::int64_t max_n = config.n_list.back();
  const SampleMethod method = config.resolved_method();
  p.refinement = config.refinement;
  if (method == SampleMethod::CHOLESKY && max_n * p.refinement > config.cholesky_cap) {
    p.refinement = std::max<std::int64_t>(1, config.cholesky_cap / max_n);
    std::clog << "note: cholesky synthesis capped at " << config.cholesky_cap
              << " steps; refinement reduced from " << config.refinement << " to "
              << p.refinement << '\n';
  }
  p.fine = Grid(max_n * p.refinement, config.horizon);
  for (std::int64_t n : config.n_list) {
    if (p.fine.n_steps % n != 0) {
      throw InvalidArgument("n=" + std::to_string(n) + " does not divide the synthesis grid of " +
                            std::to_string(p.fine.n_steps) + " steps");
    }
  }
  SamplerOptions options;
  options.cholesky_cap = config.cholesky_cap;
  p.synth = IncrementSynthesizer::create(config.spec, p.fine.n_steps, method, options);
  return p;
}

SamplePath observed_path(const Pipeline& p, const ExperimentConfig& config, std::uint64_t seed) {
  const SamplePath g = p.synth->sample(p.fine, seed);
  return ou_path(config.ou, config.sigma, g);
}

void require_theorem_regime(const ExperimentConfig& config, bool clt) {
  validate(config.spec);
  const double h = effective_index(config.spec);
  if (h >= kCriticalHurst) {
    throw HypothesisViolation("H=" + format_double(h) +
                              " violates the hypothesis H < 3/4 required by the "
                              "quadratic-variation limit theorems; supercritical specs are "
                              "refused by theorem-based experiments");
  }
  const double beta = config.sigma.holder_order();
  const double need = clt ? std::max(1.0 - h, 0.5) : 1.0 - h;
  if (!(beta > need)) {
    throw HypothesisViolation("volatility Hölder order beta=" + format_double(beta) +
                              " must exceed " + (clt ? "max(1-H, 1/2)" : "1-H") + " = " +
                              format_double(need) + (clt ? " for the CLT" : " for consistency"));
  }
  if (clt && !config.sigma.deterministic()) {
    throw InvalidArgument("the CLT experiment needs a deterministic sigma (mixed-normal limit); "
                          "use estimate for path-dependent volatility");
  }
}

std::vector<double> column(const std::vector<ReplicationRecord>& records, std::int64_t n,
                           double ReplicationRecord::*field) {
  std::vector<double> out;
  for (const auto& r : records) {
    if (r.n == n) out.push_back(r.*field);
  }
  return out;
}

std::vector<std::int64_t> distinct_n(const std::vector<ReplicationRecord>& records) {
  std::vector<std::int64_t> out;
  for (const auto& r : records) out.push_back(r.n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_clt_header(const std::vector<std::string>& header) {
  return std::find(header.begin(), header.end(), "standardized") != header.end();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

const DiagnosticRow* find_row(const std::vector<DiagnosticRow>& rows, const std::string& quantity,
                              const std::string& parameter) {
  for (const auto& r : rows) {
    if (r.quantity == quantity && r.parameter == parameter) return &r;
  }
  return nullptr;
}

}  // namespace

double ExperimentReport::value(const std::string& quantity, std::int64_t n) const {
  for (const auto& row : summary) {
    if (row.quantity == quantity && row.n == n) return row.value;
  }
  throw InvalidArgument("summary has no '" + quantity + "' for n=" + std::to_string(n));
}

std::vector<SummaryRow> summarize_records(Experiment experiment,
                                          const std::vector<ReplicationRecord>& records) {
  std::vector<SummaryRow> rows;
  for (std::int64_t n : distinct_n(records)) {
    auto add = [&](const std::string& q, double v) { rows.push_back({q, n, v}); };
    const std::vector<double> qv = column(records, n, &ReplicationRecord::qv_T);
    add("replications", static_cast<double>(qv.size()));
    add("qv_T_mean", mean(qv));
    add("qv_T_median", median(qv));
    if (experiment == Experiment::CLT) {
      const auto clt = column(records, n, &ReplicationRecord::clt);
      const auto exact = column(records, n, &ReplicationRecord::clt_exact);
      const auto std_ = column(records, n, &ReplicationRecord::standardized);
      add("clt_mean", mean(clt));
      add("clt_exact_mean", mean(exact));
      add("standardized_mean", mean(std_));
      if (qv.size() >= 2) {
        add("clt_variance", variance(clt));
        add("clt_exact_variance", variance(exact));
        add("standardized_variance", variance(std_));
      }
      if (qv.size() >= 8) {
        const KsResult ks = ks_test(std_, normal_cdf);
        add("ks_D", ks.statistic);
        add("ks_p", ks.p_value);
      }
    } else {
      const auto sup = column(records, n, &ReplicationRecord::sup_error);
      add("sup_error_median", median(sup));
      add("sup_error_q10", quantile(sup, 0.1));
      add("sup_error_q90", quantile(sup, 0.9));
      add("sup_error_mean", mean(sup));
    }
  }
  return rows;
}

ExperimentReport run_consistency(const ExperimentConfig& config) {
  const auto start = Clock::now();
  require_theorem_regime(config, false);
  const Pipeline p = make_pipeline(config);
  const auto reps = config.replications;
  const std::size_t per = config.n_list.size();
  std::vector<ReplicationRecord> records(static_cast<std::size_t>(reps) * per);

  parallel_for(reps, config.workers, [&](std::int64_t r) {
    const std::uint64_t seed = stream_seed(config.base_seed, static_cast<std::uint64_t>(r));
    const SamplePath x = observed_path(p, config, seed);
    for (std::size_t k = 0; k < per; ++k) {
      const std::int64_t n = config.n_list[k];
      const VariationSeries qv = qv_estimator(x, n, p.hurst, p.kappa);
      ReplicationRecord& rec = records[static_cast<std::size_t>(r) * per + k];
      rec.replication = r;
      rec.seed = seed;
      rec.n = n;
      rec.qv_T = qv.values.back();
      rec.sup_error =
          sup_error(qv, [&](double t) { return integrated_volatility(config.sigma, t); });
    }
  });

  ExperimentReport report;
  report.experiment = Experiment::CONSISTENCY;
  report.records = std::move(records);
  report.summary = summarize_records(report.experiment, report.records);
  report.summary.push_back({"target_T", 0, integrated_volatility(config.sigma, config.horizon)});
  report.summary.push_back({"normalizer", 0, p.kappa});
  report.summary.push_back({"refinement_effective", 0, static_cast<double>(p.refinement)});
  report.summary.push_back({"synthesis_steps", 0, static_cast<double>(p.fine.n_steps)});
  report.config_echo = echo_config(config);
  report.wall_clock_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

ExperimentReport run_clt(const ExperimentConfig& config) {
  const auto start = Clock::now();
  require_theorem_regime(config, true);
  const LimitVariance lv = v1_squared(config.spec, config.resolved_truncation());
  const double quarticity = integrated_quarticity(config.sigma, config.horizon);
  const double limit_variance = lv.v1_squared * quarticity;
  if (!(limit_variance > 0.0)) {
    throw InvalidArgument("degenerate CLT limit: v1^2·∫σ^4 = " + format_double(limit_variance));
  }
  const double scale = 1.0 / std::sqrt(limit_variance);
  const Pipeline p = make_pipeline(config);
  const std::size_t per = config.n_list.size();

  // n_eff^{2H-1}·E[V_n(T)]/κ, the exact-mean target of qv_T.
  std::vector<double> exact_target(per);
  for (std::size_t k = 0; k < per; ++k) {
    const std::int64_t n = config.n_list[k];
    const double density = static_cast<double>(n) / config.horizon;
    exact_target[k] = std::pow(density, 2.0 * p.hurst - 1.0) *
                      expected_variation(config.spec, config.sigma, p.fine, n, p.kappa).back();
  }

  std::vector<ReplicationRecord> records(static_cast<std::size_t>(config.replications) * per);
  parallel_for(config.replications, config.workers, [&](std::int64_t r) {
    const std::uint64_t seed = stream_seed(config.base_seed, static_cast<std::uint64_t>(r));
    const SamplePath x = observed_path(p, config, seed);
    for (std::size_t k = 0; k < per; ++k) {
      const std::int64_t n = config.n_list[k];
      const double root = std::sqrt(static_cast<double>(n) / config.horizon);
      ReplicationRecord& rec = records[static_cast<std::size_t>(r) * per + k];
      rec.replication = r;
      rec.seed = seed;
      rec.n = n;
      rec.qv_T = qv_estimator(x, n, p.hurst, p.kappa).values.back();
      rec.clt = clt_statistic(x, n, p.hurst, config.sigma, config.horizon, p.kappa);
      rec.clt_exact = root * (rec.qv_T - exact_target[k]);
      rec.standardized =
          (config.centering == Centering::THEORETICAL ? rec.clt : rec.clt_exact) * scale;
    }
  });

  ExperimentReport report;
  report.experiment = Experiment::CLT;
  report.records = std::move(records);
  report.summary = summarize_records(report.experiment, report.records);
  for (std::size_t k = 0; k < per; ++k) {
    report.summary.push_back({"expected_qv_T", config.n_list[k], exact_target[k]});
  }
  report.summary.push_back({"v1_squared", 0, lv.v1_squared});
  report.summary.push_back({"v1_tail_bound", 0, lv.tail_bound});
  report.summary.push_back({"v1_truncation", 0, static_cast<double>(lv.truncation)});
  report.summary.push_back({"quarticity", 0, quarticity});
  report.summary.push_back({"limit_variance", 0, limit_variance});
  report.summary.push_back({"target_T", 0, integrated_volatility(config.sigma, config.horizon)});
  report.summary.push_back({"normalizer", 0, p.kappa});
  report.summary.push_back({"refinement_effective", 0, static_cast<double>(p.refinement)});
  report.summary.push_back({"synthesis_steps", 0, static_cast<double>(p.fine.n_steps)});
  report.config_echo = echo_config(config);
  report.wall_clock_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

std::vector<DiagnosticRow> run_diagnose(const ExperimentConfig& config) {
  validate(config.spec);
  const ProcessSpec& spec = config.spec;
  const double h = effective_index(spec);
  std::vector<DiagnosticRow> rows;
  rows.push_back({"effective_index", "", h});
  rows.push_back({"normalizer", "", qv_normalizer(spec)});

  std::vector<double> log_n;
  std::vector<double> log_h;
  for (std::int64_t n : config.diag_n_list) {
    const std::string param = "n=" + std::to_string(n);
    const double value = check_concentration(spec, n);
    const double bound = concentration_bound(spec, n);
    rows.push_back({"concentration_h", param, value});
    rows.push_back({"concentration_bound", param, bound});
    rows.push_back({"concentration_ratio", param, value / bound});
    log_n.push_back(std::log(static_cast<double>(n)));
    log_h.push_back(std::log(value));
  }
  if (log_n.size() >= 2) {
    rows.push_back({"concentration_slope", "fit", least_squares_slope(log_n, log_h)});
    rows.push_back({"concentration_slope", "target", -std::min(1.0, 2.0 - 2.0 * h)});
  }

  for (std::int64_t m : config.diag_m_list) {
    const std::string param = "n=" + std::to_string(config.diag_blocks) + ";m=" + std::to_string(m);
    rows.push_back({"A3_deviation", param, check_A3(spec, config.diag_blocks, m)});
  }

  const DecaySeries decay = check_A4_decay(spec, config.diag_j_max, config.diag_points);
  for (std::size_t k = 0; k < decay.j.size(); ++k) {
    rows.push_back({"A4_decay", "j=" + std::to_string(decay.j[k]), decay.value[k]});
  }
  rows.push_back({"A4_final", "j=" + std::to_string(decay.j.back()), decay.value.back()});

  if (h < kCriticalHurst) {
    const LimitVariance lv = v1_squared(spec, config.resolved_truncation());
    const std::string param = "N=" + std::to_string(lv.truncation);
    rows.push_back({"v1_squared", param, lv.v1_squared});
    rows.push_back({"v1_tail_bound", param, lv.tail_bound});
    rows.push_back({"v1_rho_part", param, lv.rho_part});
    rows.push_back({"v1_theta_part", param, lv.theta_part});
    rows.push_back({"v1_unnormalized", param, lv.unnormalized});
  }
  return rows;
}

SamplePath run_sample(const ExperimentConfig& config) {
  validate(config.spec);
  const Grid grid(config.n_list.back(), config.horizon);
  SamplerOptions options;
  options.cholesky_cap = config.cholesky_cap;
  const SamplePath g = sample(config.spec, grid, config.base_seed, config.resolved_method(), options);
  switch (config.series) {
    case Series::DRIVER:
      return g;
    case Series::INTEGRAL:
      return integral_path(config.sigma, g);
    case Series::OU:
      return ou_path(config.ou, config.sigma, g);
  }
  return g;
}

EstimateResult run_estimate(const ExperimentConfig& config) {
  if (config.input.empty()) throw InvalidArgument("estimate needs an input path (input = file.csv)");
  validate(config.spec);
  const SamplePath path = read_path_csv(config.input);
  const double h = effective_index(config.spec);
  const double kappa = qv_normalizer(config.spec);
  EstimateResult out;
  for (std::int64_t n : config.n_list) {
    if (path.grid.n_steps % n != 0) {
      throw InvalidArgument("n=" + std::to_string(n) + " does not divide the input grid of " +
                            std::to_string(path.grid.n_steps) + " steps");
    }
    VariationSeries qv = qv_estimator(path, n, h, kappa);
    out.summary.push_back({"qv_T", n, qv.values.back()});
    if (config.sigma.deterministic()) {
      out.summary.push_back(
          {"sup_error", n,
           sup_error(qv, [&](double t) { return integrated_volatility(config.sigma, t); })});
      out.summary.push_back(
          {"clt_T", n, clt_statistic(path, n, h, config.sigma, path.grid.horizon, kappa)});
    }
    out.series.push_back(std::move(qv));
  }
  if (config.sigma.deterministic()) {
    out.summary.push_back({"target_T", 0, integrated_volatility(config.sigma, path.grid.horizon)});
  }
  out.summary.push_back({"normalizer", 0, kappa});
  return out;
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
  const bool clt = report.experiment == Experiment::CLT;
  out << (clt ? "replication,seed,n,qv_T,clt_theoretical,clt_exact_mean,standardized\n"
              : "replication,seed,n,qv_T,sup_error\n");
  for (const auto& r : report.records) {
    out << r.replication << ',' << r.seed << ',' << r.n << ',' << format_double(r.qv_T);
    if (clt) {
      out << ',' << format_double(r.clt) << ',' << format_double(r.clt_exact) << ','
          << format_double(r.standardized);
    } else {
      out << ',' << format_double(r.sup_error);
    }
    out << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows,
                       const double* wall_clock_seconds) {
  out << "quantity,n,value\n";
  for (const auto& r : rows) {
    out << r.quantity << ',';
    if (r.n != 0) out << r.n;
    out << ',' << format_double(r.value) << '\n';
  }
  if (wall_clock_seconds != nullptr) {
    out << "wall_clock_seconds,," << format_double(*wall_clock_seconds) << '\n';
  }
}

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticRow>& rows) {
  out << "quantity,parameter,value\n";
  for (const auto& r : rows) {
    out << r.quantity << ',' << r.parameter << ',' << format_double(r.value) << '\n';
  }
}

void write_report(const ExperimentReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  auto open = [&](const char* name) {
    std::ofstream f(base / name);
    if (!f) throw InvalidArgument("cannot write " + (base / name).string());
    return f;
  };
  {
    auto f = open("report.csv");
    write_report_csv(f, report);
  }
  {
    auto f = open("summary.csv");
    write_summary_csv(f, report.summary, &report.wall_clock_seconds);
  }
  {
    auto f = open("config.echo");
    f << report.config_echo;
  }
}

std::vector<ReplicationRecord> read_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("report.csv is empty");
  const std::vector<std::string> header = split_csv(line);
  const bool clt = is_clt_header(header);
  const std::size_t width = clt ? 7 : 5;
  if (header.size() != width) throw InvalidArgument("report.csv: unexpected header '" + line + "'");
  std::vector<ReplicationRecord> out;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    const std::string where = "report.csv:" + std::to_string(number);
    if (f.size() != width) throw InvalidArgument(where + ": expected " + std::to_string(width) + " fields");
    ReplicationRecord r;
    r.replication = parse_int(f[0], where);
    r.seed = parse_uint64(f[1], where);
    r.n = parse_int(f[2], where);
    r.qv_T = parse_double(f[3], where);
    if (clt) {
      r.clt = parse_double(f[4], where);
      r.clt_exact = parse_double(f[5], where);
      r.standardized = parse_double(f[6], where);
    } else {
      r.sup_error = parse_double(f[4], where);
    }
    out.push_back(r);
  }
  return out;
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "quantity,n,value") {
    throw InvalidArgument("summary.csv: unexpected header");
  }
  std::vector<SummaryRow> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 3) throw InvalidArgument("summary.csv: malformed row '" + line + "'");
    out.push_back({f[0], f[1].empty() ? 0 : parse_int(f[1], "n"), parse_double(f[2], f[0])});
  }
  return out;
}

std::vector<std::string> audit_report(const std::string& dir) {
  std::vector<std::string> problems;
  const std::filesystem::path base(dir);
  std::ifstream rin(base / "report.csv");
  std::ifstream sin(base / "summary.csv");
  if (!rin || !sin) return {"report.csv or summary.csv missing under " + dir};
  std::string header;
  std::getline(rin, header);
  const Experiment e = is_clt_header(split_csv(header)) ? Experiment::CLT : Experiment::CONSISTENCY;
  rin.seekg(0);
  const auto records = read_report_csv(rin);
  const auto stored = read_summary_csv(sin);
  for (const auto& row : summarize_records(e, records)) {
    auto it = std::find_if(stored.begin(), stored.end(), [&](const SummaryRow& s) {
      return s.quantity == row.quantity && s.n == row.n;
    });
    if (it == stored.end()) {
      problems.push_back("summary lacks " + row.quantity + " for n=" + std::to_string(row.n));
    } else if (it->value != row.value) {
      problems.push_back(row.quantity + " (n=" + std::to_string(row.n) + "): summary " +
                         format_double(it->value) + " but records give " +
                         format_double(row.value));
    }
  }
  return problems;
}

std::vector<std::string> check_consistency(const ExperimentReport& report,
                                           const ExperimentConfig& config) {
  std::vector<std::string> problems;
  const double target = report.value("target_T");
  double previous = 0.0;
  for (std::size_t k = 0; k < config.n_list.size(); ++k) {
    const std::int64_t n = config.n_list[k];
    const double med = report.value("sup_error_median", n);
    if (target == 0.0) {
      if (med != 0.0) problems.push_back("sigma = 0 but median sup_error " + format_double(med));
      continue;
    }
    if (k > 0 && !(med < previous)) {
      problems.push_back("median sup_error not decreasing at n=" + std::to_string(n) + ": " +
                         format_double(med) + " >= " + format_double(previous));
    }
    previous = med;
  }
  if (target != 0.0) {
    const std::int64_t n = config.n_list.back();
    const double med = report.value("sup_error_median", n);
    if (!(med < kConsistencyFraction * target)) {
      problems.push_back("median sup_error " + format_double(med) + " at n=" + std::to_string(n) +
                         " not below " + format_double(kConsistencyFraction * target));
    }
  }
  return problems;
}

std::vector<std::string> check_clt(const ExperimentReport& report, const ExperimentConfig& config) {
  std::vector<std::string> problems;
  for (std::int64_t n : config.n_list) {
    const std::string at = " at n=" + std::to_string(n);
    const double p = report.value("ks_p", n);
    const double var = report.value("standardized_variance", n);
    if (!(p > kKsLevel)) problems.push_back("KS p-value " + format_double(p) + at);
    if (!(std::abs(var - 1.0) <= kVarianceBand)) {
      problems.push_back("standardized variance " + format_double(var) + " outside [0.85, 1.15]" + at);
    }
  }
  return problems;
}

std::vector<std::string> check_diagnostics(const std::vector<DiagnosticRow>& rows,
                                           const ExperimentConfig& config) {
  std::vector<std::string> problems;
  for (std::int64_t n : config.diag_n_list) {
    const auto* ratio = find_row(rows, "concentration_ratio", "n=" + std::to_string(n));
    if (ratio != nullptr && !(ratio->value <= 10.0)) {
      problems.push_back("concentration h(n) exceeds 10x its bound at n=" + std::to_string(n));
    }
  }
  double previous = 0.0;
  for (std::size_t k = 0; k < config.diag_m_list.size(); ++k) {
    const std::string param = "n=" + std::to_string(config.diag_blocks) +
                              ";m=" + std::to_string(config.diag_m_list[k]);
    const auto* row = find_row(rows, "A3_deviation", param);
    if (row == nullptr) continue;
    if (config.spec.kind == ProcessKind::FBM) {
      if (row->value != 0.0) problems.push_back("fBm A3 deviation nonzero at " + param);
    } else if (k > 0 && !(row->value < previous)) {
      problems.push_back("A3 deviation not decreasing at " + param);
    }
    previous = row->value;
  }
  for (const auto& r : rows) {
    if (r.quantity == "A4_final" && !(r.value < 1e-3)) {
      problems.push_back("A4 decay " + format_double(r.value) + " at " + r.parameter +
                         " not below 1e-3");
    }
  }
  return problems;
}

}  // namespace gausvol
