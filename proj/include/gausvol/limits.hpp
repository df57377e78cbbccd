#pragma once

// Limiting variance of the quadratic-variation CLT and numerical checks of
// the structural assumptions on the driver: block-averaged variance (A3),
// decay of the correction term (A4) and the row-sum concentration bound.

#include <cstdint>
#include <string>
#include <vector>

#include "gausvol/integrate.hpp"
#include "gausvol/kernels.hpp"
#include "gausvol/path.hpp"

namespace gausvol {

struct LimitVariance {
  double v1_squared = 0.0;  // (2/N)·Σ_{j,l≤N} ĉ(j,l)², ĉ = unit covariance / normalizer
  std::int64_t truncation = 0;
  // Bound on |v1²(∞) - v1²(N)|: analytic ρ tail plus the magnitude of the
  // non-stationary contribution at N (which vanishes in the limit).
  double tail_bound = 0.0;
  ProcessKind family = ProcessKind::FBM;
  double rho_part = 0.0;    // (2/N)·Σ ρ_H(|j-l|)², the stationary part
  double theta_part = 0.0;  // v1_squared - rho_part
  double normalizer = 1.0;
  double unnormalized = 0.0;  // normalizer²·v1_squared
};

inline constexpr std::int64_t kMinTruncation = 1000;

// Throws HypothesisViolation for H >= 3/4 (the series diverges) and
// InvalidArgument for N < 1000. O(N) for fBm and sub-fBm, O(N²) for bi-fBm.
LimitVariance v1_squared(const ProcessSpec& spec, std::int64_t truncation);

// max_j Σ_k |E(Δ_k G Δ_j G)| on the 1/n grid of [0,1]. n <= 4096.
double check_concentration(const ProcessSpec& spec, std::int64_t n);

// max_j d((j-1)/n, j/n) + (1/n)^{min(1,2H)}; check_concentration must stay
// within a constant multiple of it.
double concentration_bound(const ProcessSpec& spec, std::int64_t n);

// max over the n blocks of |m^{2H-1}·Σ_{j in block} d((j-1)/m, j/m)/normalizer - 1/n|.
// Requires m >= n and n | m.
double check_A3(const ProcessSpec& spec, std::int64_t n, std::int64_t m);

struct DecaySeries {
  std::vector<std::int64_t> j;
  std::vector<double> value;
};

// j ↦ j·max_{l≤j_max} θ(j,l)² at `points` log-spaced j in [1, j_max]
// (always including j_max). All zeros for fBm.
DecaySeries check_A4_decay(const ProcessSpec& spec, std::int64_t j_max, int points = 64);

// Exact E[V_n(Z)_{t_i}], i = 0..n, for Z = Σ σ(t_{j-1})ΔG_j on the fine
// grid `fine` (n | fine.n_steps). Within-block covariances only, O(n·R²).
// Ignores drift; divided by `normalizer`.
std::vector<double> expected_variation(const ProcessSpec& spec, const VolatilitySpec& sigma,
                                       const Grid& fine, std::int64_t n,
                                       double normalizer = 1.0);

}  // namespace gausvol
