#include "gausvol/variation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "gausvol/error.hpp"
#include "gausvol/format.hpp"
#include "gausvol/kernels.hpp"

namespace gausvol {
namespace {

void require_subcritical(double hurst) {
  if (!(hurst > 0.0)) throw InvalidArgument("H must be > 0");
  if (!(hurst < kCriticalHurst)) {
    throw HypothesisViolation("H=" + format_double(hurst) +
                              " violates the hypothesis H < 3/4 of the quadratic-variation "
                              "limit theorems");
  }
}

void require_normalizer(double normalizer) {
  if (!(normalizer > 0.0) || !std::isfinite(normalizer)) {
    throw InvalidArgument("normalizer must be positive and finite");
  }
}

VariationSeries raw_quadratic(const SamplePath& path, std::int64_t n) {
  return power_variation(path.restrict_to(n), 2.0);
}

}  // namespace

std::string to_string(Scaling scaling) {
  switch (scaling) {
    case Scaling::RAW:
      return "raw";
    case Scaling::CONSISTENCY:
      return "consistency";
    case Scaling::CLT:
      return "clt";
  }
  return "?";
}

double VariationSeries::at(double t) const {
  if (!(t >= 0.0) || t > horizon * (1.0 + 1e-12)) {
    throw InvalidArgument("t=" + format_double(t) + " outside [0, T]");
  }
  // Tolerate rounding just below a grid point so that t = i·T/n maps to i.
  const double position = t * static_cast<double>(n) / horizon;
  auto k = static_cast<std::int64_t>(std::floor(position + 1e-9));
  k = std::clamp<std::int64_t>(k, 0, n);
  return values[static_cast<std::size_t>(k)];
}

VariationSeries power_variation(const SamplePath& path, double p) {
  if (!(p > 0.0)) throw InvalidArgument("power variation order must be > 0");
  VariationSeries out;
  out.n = path.grid.n_steps;
  out.horizon = path.grid.horizon;
  out.times.resize(path.values.size());
  out.values.assign(path.values.size(), 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < path.values.size(); ++k) {
    out.times[k] = path.grid.time(static_cast<std::int64_t>(k));
    if (k == 0) continue;
    const double inc = std::abs(path.values[k] - path.values[k - 1]);
    total += p == 2.0 ? inc * inc : std::pow(inc, p);
    out.values[k] = total;
  }
  return out;
}

VariationSeries qv_estimator(const SamplePath& path, std::int64_t n, double hurst,
                             double normalizer) {
  require_subcritical(hurst);
  require_normalizer(normalizer);
  VariationSeries out = raw_quadratic(path, n);
  const double density = static_cast<double>(n) / path.grid.horizon;
  const double scale = std::pow(density, 2.0 * hurst - 1.0) / normalizer;
  for (double& v : out.values) v *= scale;
  out.scaling = Scaling::CONSISTENCY;
  out.hurst = hurst;
  return out;
}

double sup_error(const VariationSeries& series, const std::function<double(double)>& target) {
  double worst = 0.0;
  for (std::size_t k = 0; k < series.values.size(); ++k) {
    worst = std::max(worst, std::abs(series.values[k] - target(series.times[k])));
  }
  return worst;
}

VariationSeries clt_series(const SamplePath& path, std::int64_t n, double hurst,
                           const VolatilitySpec& sigma, double normalizer) {
  require_subcritical(hurst);
  require_normalizer(normalizer);
  VariationSeries out = raw_quadratic(path, n);
  const double density = static_cast<double>(n) / path.grid.horizon;
  const double scale = std::pow(density, 2.0 * hurst - 0.5) / normalizer;
  const double root = std::sqrt(density);
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    out.values[k] = scale * out.values[k] - root * integrated_volatility(sigma, out.times[k]);
  }
  out.scaling = Scaling::CLT;
  out.hurst = hurst;
  return out;
}

double clt_statistic(const SamplePath& path, std::int64_t n, double hurst,
                     const VolatilitySpec& sigma, double t, double normalizer) {
  const double position = t * static_cast<double>(n) / path.grid.horizon;
  if (std::abs(position - std::round(position)) > 1e-9) {
    throw InvalidArgument("t=" + format_double(t) + " is not on the estimation grid");
  }
  require_subcritical(hurst);
  require_normalizer(normalizer);
  const SamplePath coarse = path.restrict_to(n);
  const auto k = static_cast<std::size_t>(std::llround(position));
  double sum = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    const double inc = coarse.values[i] - coarse.values[i - 1];
    sum += inc * inc;
  }
  const double density = static_cast<double>(n) / path.grid.horizon;
  return std::pow(density, 2.0 * hurst - 0.5) * sum / normalizer -
         std::sqrt(density) * integrated_volatility(sigma, t);
}

void write_variation_csv(std::ostream& out, const VariationSeries& series) {
  out << "# n=" << series.n << '\n';
  out << "# H=" << format_double(series.hurst) << '\n';
  out << "# scaling=" << to_string(series.scaling) << '\n';
  out << "t,value\n";
  for (std::size_t k = 0; k < series.values.size(); ++k) {
    out << format_double(series.times[k]) << ',' << format_double(series.values[k]) << '\n';
  }
}

}  // namespace gausvol
