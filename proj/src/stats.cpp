#include "gausvol/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gausvol/error.hpp"

namespace gausvol {
namespace {

constexpr int kMaxTerms = 100;
constexpr double kTermTol = 1e-12;

std::vector<double> sorted_copy(std::span<const double> x) {
  if (x.empty()) throw InvalidArgument("statistic of an empty sample");
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  double p = 0.0;
  if (lambda < 1.0) {
    // Small λ: the alternating series converges too slowly; use
    // P(K <= λ) = √(2π)/λ Σ_{k≥1} exp(-(2k-1)²π²/(8λ²)).
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double cdf = 0.0;
    for (int k = 1; k <= kMaxTerms; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
      cdf += term;
      if (term < kTermTol * cdf) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    p = 1.0 - cdf;
  } else {
    // 2 Σ_{k≥1} (-1)^{k-1} exp(-2k²λ²).
    for (int k = 1; k <= kMaxTerms; ++k) {
      const double term = std::exp(-2.0 * k * k * lambda * lambda);
      p += (k % 2 == 1 ? 2.0 : -2.0) * term;
      if (term < kTermTol) break;
    }
  }
  return std::clamp(p, 0.0, 1.0);
}

double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf) {
  const std::vector<double> v = sorted_copy(sample);
  const double n = static_cast<double>(v.size());
  double d_plus = 0.0;
  double d_minus = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = cdf(v[i]);
    d_plus = std::max(d_plus, static_cast<double>(i + 1) / n - f);
    d_minus = std::max(d_minus, f - static_cast<double>(i) / n);
  }
  return std::max(d_plus, d_minus);
}

KsResult ks_test(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.size() < 8) throw InvalidArgument("KS test needs at least 8 observations");
  KsResult r;
  r.statistic = ks_statistic(sample, cdf);
  r.p_value = kolmogorov_survival(std::sqrt(static_cast<double>(sample.size())) * r.statistic);
  return r;
}

double mean(std::span<const double> x) {
  if (x.empty()) throw InvalidArgument("mean of an empty sample");
  long double s = 0.0L;
  for (double v : x) s += v;
  return static_cast<double>(s / static_cast<long double>(x.size()));
}

double variance(std::span<const double> x) {
  if (x.size() < 2) throw InvalidArgument("variance needs at least 2 observations");
  const long double m = mean(x);
  long double s = 0.0L;
  for (double v : x) s += (v - m) * (v - m);
  return static_cast<double>(s / static_cast<long double>(x.size() - 1));
}

double quantile(std::span<const double> x, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("quantile level must lie in [0,1]");
  const std::vector<double> v = sorted_copy(x);
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double median(std::span<const double> x) { return quantile(x, 0.5); }

}  // namespace gausvol
