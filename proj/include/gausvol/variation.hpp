#pragma once

// Realized power / quadratic variation on a uniform estimation grid and the
// integrated-volatility estimator built from it.
//
// Horizon convention: with n steps over [0,T] every n^{·} scaling uses the
// per-unit-time density n/T, which reproduces the unit-interval formulas at
// T = 1.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gausvol/integrate.hpp"
#include "gausvol/path.hpp"

namespace gausvol {

enum class Scaling { RAW, CONSISTENCY, CLT };

std::string to_string(Scaling scaling);

struct VariationSeries {
  std::int64_t n = 0;
  double horizon = 1.0;
  std::vector<double> times;   // t_i = i·T/n
  std::vector<double> values;  // running statistic, 0 at t = 0
  Scaling scaling = Scaling::RAW;
  double hurst = 0.0;  // 0 for RAW

  // Value at arbitrary t ∈ [0,T] with the floor convention: the statistic
  // sums increments up to ⌊n t / T⌋.
  double at(double t) const;
};

// V_p(t_k) = Σ_{i≤k} |ΔZ_i|^p on the path's own grid.
VariationSeries power_variation(const SamplePath& path, double p);

// (n/T)^{2H-1}·V_n(X)_t / normalizer. `path` must live on a grid whose step
// count is a multiple of n. The normalizer is 1 for fBm and sub-fBm and
// qv_normalizer(spec) in general.
VariationSeries qv_estimator(const SamplePath& path, std::int64_t n, double hurst,
                             double normalizer = 1.0);

// max_k |series(t_k) - target(t_k)|.
double sup_error(const VariationSeries& series, const std::function<double(double)>& target);

// (n/T)^{2H-1/2}·V_n(t)/normalizer - sqrt(n/T)·∫_0^t σ² at every grid time.
VariationSeries clt_series(const SamplePath& path, std::int64_t n, double hurst,
                           const VolatilitySpec& sigma, double normalizer = 1.0);

// clt_series at a single grid-aligned time t.
double clt_statistic(const SamplePath& path, std::int64_t n, double hurst,
                     const VolatilitySpec& sigma, double t, double normalizer = 1.0);

// `t,value` CSV with `#` metadata (n, H, scaling).
void write_variation_csv(std::ostream& out, const VariationSeries& series);

}  // namespace gausvol
