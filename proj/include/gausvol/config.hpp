#pragma once

// Experiment configuration: `key = value` lines, `#` comments, dotted keys
// for nested fields (sigma.*, ou.*, limits.*, diag.*).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gausvol/integrate.hpp"
#include "gausvol/kernels.hpp"
#include "gausvol/path.hpp"

namespace gausvol {

enum class Experiment { CONSISTENCY, CLT, DIAGNOSE, SAMPLE, ESTIMATE };
enum class Centering { THEORETICAL, EXACT_MEAN };
enum class Series { DRIVER, INTEGRAL, OU };

std::string to_string(Experiment e);
std::string to_string(Centering c);
std::string to_string(Series s);
Experiment parse_experiment(const std::string& text);

struct ExperimentConfig {
  Experiment experiment = Experiment::CONSISTENCY;
  ProcessSpec spec;
  VolatilitySpec sigma;
  OUParams ou;
  std::vector<std::int64_t> n_list{256, 1024, 4096};
  std::int64_t refinement = 16;
  std::int64_t replications = 100;
  std::uint64_t base_seed = 1;
  double horizon = 1.0;
  std::string out = ".";
  int workers = 1;  // 0 = hardware concurrency
  Centering centering = Centering::THEORETICAL;
  std::optional<SampleMethod> method;  // unset: circulant for fBm, cholesky otherwise
  std::int64_t cholesky_cap = 8192;
  std::int64_t truncation = 0;  // 0: 100000 for fBm/sub-fBm, 4096 for bi-fBm
  std::string input;            // estimate: path CSV
  Series series = Series::DRIVER;
  std::vector<std::int64_t> diag_n_list{64, 128, 256, 512, 1024, 2048, 4096};
  std::vector<std::int64_t> diag_m_list{256, 1024, 4096};
  std::int64_t diag_blocks = 4;
  std::int64_t diag_j_max = 10000;
  int diag_points = 64;

  bool operator==(const ExperimentConfig&) const = default;

  // Defaults that depend on the environment (GAUSVOL_SEED).
  static ExperimentConfig with_defaults();

  // Applies one key. Throws InvalidArgument on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);

  // Loads deferred inputs (tabulated sigma) and checks cross-field
  // invariants.
  void finalize();

  SampleMethod resolved_method() const;
  std::int64_t resolved_truncation() const;
};

// Reads `key = value` lines into `config`. Errors carry `source:line:`.
void parse_config(std::istream& in, const std::string& source, ExperimentConfig& config);
void load_config_file(const std::string& filename, ExperimentConfig& config);

// Canonical echo; parse_config of it reproduces an equal config.
std::string echo_config(const ExperimentConfig& config);

}  // namespace gausvol
