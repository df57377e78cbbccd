#pragma once

// Monte Carlo orchestration. One driver path per replication is synthesized
// at m = R·max(n_list) and every n estimates from restrictions of it.
// Replication r draws from stream_seed(base_seed, r) and results are stored
// by replication index, so output does not depend on the worker count.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gausvol/config.hpp"
#include "gausvol/path.hpp"
#include "gausvol/variation.hpp"

namespace gausvol {

struct ReplicationRecord {
  std::int64_t replication = 0;
  std::uint64_t seed = 0;
  std::int64_t n = 0;
  double qv_T = 0.0;
  double sup_error = 0.0;     // consistency
  double clt = 0.0;           // centred by √n·∫σ²
  double clt_exact = 0.0;     // centred by the exact mean
  double standardized = 0.0;  // selected centring / √(v1²·∫σ⁴)

  bool operator==(const ReplicationRecord&) const = default;
};

// `n` = 0 marks experiment-wide quantities.
struct SummaryRow {
  std::string quantity;
  std::int64_t n = 0;
  double value = 0.0;
};

struct ExperimentReport {
  Experiment experiment = Experiment::CONSISTENCY;
  std::vector<ReplicationRecord> records;  // ordered by (replication, n)
  std::vector<SummaryRow> summary;
  std::string config_echo;
  double wall_clock_seconds = 0.0;

  // Throws InvalidArgument when absent.
  double value(const std::string& quantity, std::int64_t n = 0) const;
};

struct DiagnosticRow {
  std::string quantity;
  std::string parameter;
  double value = 0.0;
};

ExperimentReport run_consistency(const ExperimentConfig& config);
ExperimentReport run_clt(const ExperimentConfig& config);
std::vector<DiagnosticRow> run_diagnose(const ExperimentConfig& config);
SamplePath run_sample(const ExperimentConfig& config);

struct EstimateResult {
  std::vector<VariationSeries> series;  // one per n
  std::vector<SummaryRow> summary;
};
EstimateResult run_estimate(const ExperimentConfig& config);

// Record-derived summary rows (medians, moments, KS); the audit recomputes
// these from report.csv.
std::vector<SummaryRow> summarize_records(Experiment experiment,
                                          const std::vector<ReplicationRecord>& records);

void write_report_csv(std::ostream& out, const ExperimentReport& report);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows,
                       const double* wall_clock_seconds = nullptr);
void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticRow>& rows);
// report.csv, summary.csv and config.echo under `dir` (created if needed).
void write_report(const ExperimentReport& report, const std::string& dir);

std::vector<ReplicationRecord> read_report_csv(std::istream& in);
std::vector<SummaryRow> read_summary_csv(std::istream& in);

// Problems found when re-deriving summary.csv from report.csv under `dir`.
std::vector<std::string> audit_report(const std::string& dir);

// Acceptance thresholds of each experiment; empty when all hold.
std::vector<std::string> check_consistency(const ExperimentReport& report,
                                           const ExperimentConfig& config);
std::vector<std::string> check_clt(const ExperimentReport& report, const ExperimentConfig& config);
std::vector<std::string> check_diagnostics(const std::vector<DiagnosticRow>& rows,
                                           const ExperimentConfig& config);

inline constexpr double kKsLevel = 0.005;
inline constexpr double kVarianceBand = 0.15;
inline constexpr double kConsistencyFraction = 0.05;

}  // namespace gausvol
