#include "gausvol/limits.hpp"

#include <algorithm>
#include <cmath>

#include "gausvol/error.hpp"
#include "gausvol/format.hpp"

namespace gausvol {
namespace {

constexpr std::int64_t kConcentrationCap = 4096;

void require_convergent(const ProcessSpec& spec) {
  validate(spec);
  const double h = effective_index(spec);
  if (h >= kCriticalHurst) {
    throw HypothesisViolation("v1^2 series diverges for H=" + format_double(h) +
                              ": the limiting variance requires H < 3/4 (H = 3/4 is critical)");
  }
}

// ρ_H(0..count-1) in one pass.
std::vector<long double> rho_table(double hurst, std::int64_t count) {
  std::vector<long double> out(static_cast<std::size_t>(count));
  for (std::int64_t r = 0; r < count; ++r) out[r] = rho(hurst, r);
  return out;
}

// 4[(1/N)Σ_{r<N} r ρ(r)² + Σ_{r≥N} ρ(r)²] with the infinite tail bounded by
// C²∫_{N-1}^∞ x^{4H-4} dx, |ρ(r)| <= C·r^{2H-2} for r >= N.
double stationary_tail(double hurst, std::int64_t n, const std::vector<long double>& rho_n) {
  long double weighted = 0.0L;
  for (std::int64_t r = 1; r < n; ++r) weighted += static_cast<long double>(r) * rho_n[r] * rho_n[r];
  weighted /= static_cast<long double>(n);
  const double at_n = std::abs(rho(hurst, n)) * std::pow(static_cast<double>(n), 2.0 - 2.0 * hurst);
  const double asymptotic = std::abs(hurst * (2.0 * hurst - 1.0));
  const double c = std::max(at_n, asymptotic) * (1.0 + 1e-9);
  const double e = 3.0 - 4.0 * hurst;
  const double tail = c * c * std::pow(static_cast<double>(n - 1), -e) / e;
  return 4.0 * (static_cast<double>(weighted) + tail);
}

// Σ_{j,l≤N} ρ(|j-l|)² = N + 2Σ_{r<N}(N-r)ρ(r)².
long double stationary_sum(std::int64_t n, const std::vector<long double>& rho_n) {
  long double s = static_cast<long double>(n);
  for (std::int64_t r = 1; r < n; ++r) {
    s += 2.0L * static_cast<long double>(n - r) * rho_n[r] * rho_n[r];
  }
  return s;
}

// Sub-fBm, θ(j,l) = -ρ(j+l-1). Returns 2Σρθ + Σθ² over [1,N]², in O(N).
long double subfbm_theta_terms(double hurst, std::int64_t n) {
  const std::vector<long double> r = rho_table(hurst, 2 * n);
  // s = j+l-1 takes each value 1..2N-1 min(s, 2N-s) times.
  long double theta_sq = 0.0L;
  for (std::int64_t s = 1; s < 2 * n; ++s) {
    theta_sq += static_cast<long double>(std::min(s, 2 * n - s)) * r[s] * r[s];
  }
  // prefix[s] = ρ(s) + ρ(s-2) + ... (same parity).
  std::vector<long double> prefix(static_cast<std::size_t>(2 * n));
  for (std::int64_t s = 0; s < 2 * n; ++s) prefix[s] = r[s] + (s >= 2 ? prefix[s - 2] : 0.0L);
  auto stride_sum = [&](std::int64_t lo, std::int64_t hi) {
    return prefix[hi] - (lo >= 2 ? prefix[lo - 2] : 0.0L);
  };
  // For |j-l| = d the sums j+l-1 run over d+1, d+3, ..., 2N-d-1.
  long double cross = 0.0L;
  for (std::int64_t d = 0; d < n; ++d) {
    const long double mult = d == 0 ? 1.0L : 2.0L;
    cross -= mult * r[d] * stride_sum(d + 1, 2 * n - d - 1);
  }
  return 2.0L * cross + theta_sq;
}

// Generic O(N²) sum of ĉ² using symmetry.
long double direct_sum(const ProcessSpec& spec, std::int64_t n, double normalizer) {
  std::vector<double> row(static_cast<std::size_t>(n));
  long double total = 0.0L;
  for (std::int64_t j = 1; j <= n; ++j) {
    std::span<double> head(row.data(), static_cast<std::size_t>(j));
    decomposed_increment_cov_row(spec, j, head);
    long double off = 0.0L;
    for (std::int64_t l = 1; l < j; ++l) {
      const long double c = head[l - 1] / normalizer;
      off += c * c;
    }
    const long double diag = head[j - 1] / normalizer;
    total += diag * diag + 2.0L * off;
  }
  return total;
}

}  // namespace

LimitVariance v1_squared(const ProcessSpec& spec, std::int64_t truncation) {
  require_convergent(spec);
  if (truncation < kMinTruncation) {
    throw InvalidArgument("v1^2 truncation must be >= " + std::to_string(kMinTruncation));
  }
  const std::int64_t n = truncation;
  const double h = effective_index(spec);
  const double kappa = qv_normalizer(spec);
  const std::vector<long double> rho_n = rho_table(h, n);
  const long double nn = static_cast<long double>(n);
  const long double rho_sum = stationary_sum(n, rho_n);

  long double total = 0.0L;
  switch (spec.kind) {
    case ProcessKind::FBM:
      total = rho_sum;
      break;
    case ProcessKind::SUBFBM:
      total = rho_sum + subfbm_theta_terms(h, n);
      break;
    case ProcessKind::BIFBM:
      total = direct_sum(spec, n, kappa);
      break;
  }

  LimitVariance out;
  out.family = spec.kind;
  out.truncation = n;
  out.normalizer = kappa;
  out.rho_part = static_cast<double>(2.0L * rho_sum / nn);
  out.v1_squared = static_cast<double>(2.0L * total / nn);
  out.theta_part = static_cast<double>(2.0L * (total - rho_sum) / nn);
  out.unnormalized = kappa * kappa * out.v1_squared;
  out.tail_bound = stationary_tail(h, n, rho_n) + std::abs(out.theta_part);
  return out;
}

double check_concentration(const ProcessSpec& spec, std::int64_t n) {
  validate(spec);
  if (n < 1 || n > kConcentrationCap) {
    throw InvalidArgument("check_concentration needs 1 <= n <= " +
                          std::to_string(kConcentrationCap));
  }
  // Row sums of |ĉ| over the full symmetric matrix from its lower triangle.
  std::vector<long double> sums(static_cast<std::size_t>(n), 0.0L);
  std::vector<double> row(static_cast<std::size_t>(n));
  for (std::int64_t j = 1; j <= n; ++j) {
    std::span<double> head(row.data(), static_cast<std::size_t>(j));
    decomposed_increment_cov_row(spec, j, head);
    for (std::int64_t l = 1; l < j; ++l) {
      const long double a = std::fabs(static_cast<long double>(head[l - 1]));
      sums[j - 1] += a;
      sums[l - 1] += a;
    }
    sums[j - 1] += std::fabs(static_cast<long double>(head[j - 1]));
  }
  const long double worst = *std::max_element(sums.begin(), sums.end());
  const double scale = std::pow(static_cast<double>(n), -2.0 * effective_index(spec));
  return static_cast<double>(worst) * scale;
}

double concentration_bound(const ProcessSpec& spec, std::int64_t n) {
  validate(spec);
  if (n < 1) throw InvalidArgument("concentration_bound needs n >= 1");
  const double h = effective_index(spec);
  double worst = 0.0;
  for (std::int64_t j = 1; j <= n; ++j) {
    worst = std::max(worst, decomposed_increment_cov(spec, j, j));
  }
  const double dn = static_cast<double>(n);
  return worst * std::pow(dn, -2.0 * h) + std::pow(1.0 / dn, std::min(1.0, 2.0 * h));
}

double check_A3(const ProcessSpec& spec, std::int64_t n, std::int64_t m) {
  validate(spec);
  if (n < 1 || m < n || m % n != 0) {
    throw InvalidArgument("check_A3 needs m >= n >= 1 with n dividing m");
  }
  const double kappa = qv_normalizer(spec);
  const std::int64_t block = m / n;
  double worst = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    long double sum = 0.0L;
    for (std::int64_t j = i * block + 1; j <= (i + 1) * block; ++j) {
      sum += decomposed_increment_cov(spec, j, j) / kappa;
    }
    // m^{2H-1}·m^{-2H}·Σ ĉ(j,j) - 1/n = (Σ ĉ(j,j) - m/n)/m.
    const long double dev = (sum - static_cast<long double>(block)) / static_cast<long double>(m);
    worst = std::max(worst, static_cast<double>(std::fabs(dev)));
  }
  return worst;
}

DecaySeries check_A4_decay(const ProcessSpec& spec, std::int64_t j_max, int points) {
  validate(spec);
  if (j_max < 1 || points < 2) throw InvalidArgument("check_A4_decay needs j_max >= 1, points >= 2");
  DecaySeries out;
  const double top = std::log(static_cast<double>(j_max));
  for (int k = 0; k < points; ++k) {
    const double x = top * static_cast<double>(k) / static_cast<double>(points - 1);
    const auto j = std::clamp<std::int64_t>(std::llround(std::exp(x)), 1, j_max);
    if (out.j.empty() || out.j.back() != j) out.j.push_back(j);
  }
  if (out.j.back() != j_max) out.j.push_back(j_max);
  out.value.assign(out.j.size(), 0.0);
  if (spec.kind == ProcessKind::FBM) return out;
  std::vector<double> row(static_cast<std::size_t>(j_max));
  for (std::size_t k = 0; k < out.j.size(); ++k) {
    theta_row(spec, out.j[k], row);
    double largest = 0.0;
    for (double v : row) largest = std::max(largest, v * v);
    out.value[k] = static_cast<double>(out.j[k]) * largest;
  }
  return out;
}

std::vector<double> expected_variation(const ProcessSpec& spec, const VolatilitySpec& sigma,
                                       const Grid& fine, std::int64_t n, double normalizer) {
  validate(spec);
  if (n < 1 || fine.n_steps % n != 0) {
    throw InvalidArgument("expected_variation needs n dividing the fine step count");
  }
  const std::int64_t r = fine.n_steps / n;
  const double scale = std::pow(fine.step(), 2.0 * effective_index(spec)) / normalizer;
  std::vector<double> weight(static_cast<std::size_t>(r));
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  long double running = 0.0L;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t first = i * r + 1;
    for (std::int64_t a = 0; a < r; ++a) weight[a] = sigma(fine.time(first + a - 1));
    long double block = 0.0L;
    for (std::int64_t a = 0; a < r; ++a) {
      block += static_cast<long double>(weight[a]) * weight[a] *
               decomposed_increment_cov(spec, first + a, first + a);
      for (std::int64_t b = 0; b < a; ++b) {
        block += 2.0L * weight[a] * weight[b] *
                 decomposed_increment_cov(spec, first + a, first + b);
      }
    }
    running += block * scale;
    out[i + 1] = static_cast<double>(running);
  }
  return out;
}

}  // namespace gausvol
