#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gausvol/kernels.hpp"

namespace gausvol {

// Uniform grid t_k = k·T/n_steps, k = 0..n_steps.
struct Grid {
  std::int64_t n_steps = 1;
  double horizon = 1.0;

  Grid() = default;
  Grid(std::int64_t n, double T);

  double step() const { return horizon / static_cast<double>(n_steps); }
  double time(std::int64_t k) const {
    return horizon * static_cast<double>(k) / static_cast<double>(n_steps);
  }
  std::size_t size() const { return static_cast<std::size_t>(n_steps) + 1; }

  bool operator==(const Grid&) const = default;
};

enum class SampleMethod { CHOLESKY, CIRCULANT };

std::string to_string(SampleMethod method);
SampleMethod parse_sample_method(const std::string& text);

struct PathMeta {
  std::optional<ProcessSpec> spec;
  std::uint64_t seed = 0;
  std::optional<SampleMethod> method;
  std::string note;  // free text, e.g. "ou(theta=1,x0=0)"
};

struct SamplePath {
  Grid grid;
  std::vector<double> values;
  PathMeta meta;

  // Every `factor`-th point; requires grid.n_steps % factor == 0.
  SamplePath restrict_to(std::int64_t n_coarse) const;
};

// CSV with `#`-prefixed metadata, header `t,value`, 17 significant digits.
void write_path_csv(std::ostream& out, const SamplePath& path);
void write_path_csv(const std::string& filename, const SamplePath& path);
SamplePath read_path_csv(std::istream& in);
SamplePath read_path_csv(const std::string& filename);

}  // namespace gausvol
