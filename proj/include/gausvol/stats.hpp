#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gausvol {

double normal_cdf(double x);

// P(K > λ) for the Kolmogorov distribution K = sup|B_t| of a Brownian bridge.
double kolmogorov_survival(double lambda);

struct KsResult {
  double statistic = 0.0;  // D = max(D+, D-)
  double p_value = 1.0;
};

// D = sup_x |F_emp(x) - cdf(x)|. Any non-empty sample.
double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf);

// D and the asymptotic p-value P(K > √n·D). Requires at least 8 points.
KsResult ks_test(std::span<const double> sample, const std::function<double(double)>& cdf);

double mean(std::span<const double> x);
// Unbiased (n-1) sample variance.
double variance(std::span<const double> x);
// Linear-interpolation quantile (Hyndman–Fan type 7), q in [0,1].
double quantile(std::span<const double> x, double q);
double median(std::span<const double> x);

}  // namespace gausvol
