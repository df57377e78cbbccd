#include "gausvol/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gausvol/error.hpp"
#include "gausvol/format.hpp"

namespace gausvol {
namespace {

using Real = long double;

Real pw(Real base, Real exponent) {
  // 0^p = 0 exactly for p > 0; no near-diagonal expansion.
  return base == 0.0L ? 0.0L : std::pow(base, exponent);
}

double upper_hurst(const ProcessSpec& spec) {
  return spec.allow_supercritical ? 1.0 : kCriticalHurst;
}

[[noreturn]] void reject_hurst(const std::string& what, double value, const ProcessSpec& spec) {
  if (!spec.allow_supercritical && value >= kCriticalHurst && value < 1.0) {
    throw HypothesisViolation(what + "=" + format_double(value) +
                              " violates the hypothesis H < 3/4 (the quadratic-variation "
                              "CLT and the limiting variance require H < 3/4); "
                              "--allow-supercritical lifts this for exploratory sampling");
  }
  throw InvalidArgument(what + "=" + format_double(value) + " out of range (0, " +
                        format_double(upper_hurst(spec)) + ")");
}

// ρ_H(x) in extended precision. For large x the three powers cancel to
// O(x^{2H-2}); there the symmetric binomial series
// (1+u)^p + (1-u)^p - 2 = 2 Σ_{k≥1} C(p,2k) u^{2k}, u = 1/x, is summed instead.
Real rho_ld(Real hurst, std::int64_t x) {
  if (x == 0) return 1.0L;
  const Real p = 2.0L * hurst;
  const Real xr = static_cast<Real>(x);
  if (x < 32) {
    return 0.5L * (pw(xr + 1.0L, p) + pw(std::fabs(xr - 1.0L), p) - 2.0L * pw(xr, p));
  }
  const Real u = 1.0L / xr;
  Real binom = 1.0L;  // C(p, m)
  Real upow = 1.0L;   // u^m
  Real sum = 0.0L;
  for (int m = 1; m <= 60; ++m) {
    binom *= (p - static_cast<Real>(m - 1)) / static_cast<Real>(m);
    upow *= u;
    if (m % 2 == 1) continue;
    const Real term = binom * upow;
    sum += term;
    if (std::fabs(term) <= 1e-22L * std::fabs(sum)) break;
  }
  return pw(xr, p) * sum;
}

Real cov_ld(const ProcessSpec& spec, Real s, Real t) {
  switch (spec.kind) {
    case ProcessKind::FBM: {
      const Real p = 2.0L * spec.hurst;
      return 0.5L * (pw(t, p) + pw(s, p) - pw(std::fabs(t - s), p));
    }
    case ProcessKind::SUBFBM: {
      const Real p = 2.0L * spec.hurst;
      return pw(t, p) + pw(s, p) - 0.5L * (pw(t + s, p) + pw(std::fabs(t - s), p));
    }
    case ProcessKind::BIFBM: {
      const Real p = 2.0L * spec.h0;
      const Real k = spec.k0;
      // (t^{2h})^K and t^{2hK} round differently; G_0 = 0 exactly.
      if (s == 0.0L || t == 0.0L) return 0.0L;
      return std::pow(2.0L, -k) * (pw(pw(t, p) + pw(s, p), k) - pw(std::fabs(t - s), p * k));
    }
  }
  return 0.0L;
}

// f_j(x) = (j^{2h}+x^{2h})^K - ((j-1)^{2h}+x^{2h})^K, evaluated as
// B^K·expm1(K·log1p(δ/B)) with δ = j^{2h} - (j-1)^{2h} so that neither
// difference loses digits.
struct BifbmRow {
  Real p;
  Real k;
  Real lower;  // (j-1)^{2h}
  Real delta;  // j^{2h} - (j-1)^{2h}

  BifbmRow(Real p_, Real k_, std::int64_t j) : p(p_), k(k_) {
    const Real jr = static_cast<Real>(j);
    lower = pw(jr - 1.0L, p);
    delta = j == 1 ? 1.0L : lower * std::expm1(p * std::log1p(1.0L / (jr - 1.0L)));
  }

  Real operator()(std::int64_t x) const {
    const Real b = lower + pw(static_cast<Real>(x), p);
    if (b == 0.0L) return pw(delta, k);
    return pw(b, k) * std::expm1(k * std::log1p(delta / b));
  }
};


Real theta_ld(const ProcessSpec& spec, std::int64_t j, std::int64_t l) {
  switch (spec.kind) {
    case ProcessKind::FBM:
      return 0.0L;
    case ProcessKind::SUBFBM:
      return -rho_ld(spec.hurst, j + l - 1);
    case ProcessKind::BIFBM: {
      // Symmetric in (j,l); take the outer difference along the smaller
      // index, where f varies fastest and the subtraction is benign.
      const std::int64_t big = std::max(j, l);
      const std::int64_t small = std::min(j, l);
      const BifbmRow f(2.0L * spec.h0, spec.k0, big);
      return std::pow(2.0L, -static_cast<Real>(spec.k0)) * (f(small) - f(small - 1));
    }
  }
  return 0.0L;
}

// ρ_H(0..count-1), memoized per thread for the last H seen. Row builders
// ask for the same prefix over and over.
const std::vector<Real>& rho_prefix(double hurst, std::int64_t count) {
  thread_local double cached_hurst = -1.0;
  thread_local std::vector<Real> table;
  if (cached_hurst != hurst) {
    table.clear();
    cached_hurst = hurst;
  }
  for (auto x = static_cast<std::int64_t>(table.size()); x < count; ++x) {
    table.push_back(rho_ld(hurst, x));
  }
  return table;
}

void require_index(std::int64_t j, std::int64_t l) {
  if (j < 1 || l < 1) throw InvalidArgument("increment indices must be >= 1");
}

void require_time(double s, double t) {
  if (!(s >= 0.0) || !(t >= 0.0)) throw InvalidArgument("times must be >= 0");
}

}  // namespace

std::string to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::FBM:
      return "fbm";
    case ProcessKind::SUBFBM:
      return "subfbm";
    case ProcessKind::BIFBM:
      return "bifbm";
  }
  return "?";
}

ProcessKind parse_process_kind(const std::string& text) {
  const std::string key = to_lower(trim(text));
  if (key == "fbm") return ProcessKind::FBM;
  if (key == "subfbm" || key == "sub-fbm") return ProcessKind::SUBFBM;
  if (key == "bifbm" || key == "bi-fbm") return ProcessKind::BIFBM;
  throw InvalidArgument("unknown process '" + text + "' (expected fbm, subfbm or bifbm)");
}

ProcessSpec ProcessSpec::fbm(double hurst) {
  ProcessSpec s;
  s.kind = ProcessKind::FBM;
  s.hurst = hurst;
  return s;
}

ProcessSpec ProcessSpec::subfbm(double hurst) {
  ProcessSpec s;
  s.kind = ProcessKind::SUBFBM;
  s.hurst = hurst;
  return s;
}

ProcessSpec ProcessSpec::bifbm(double h0, double k0) {
  ProcessSpec s;
  s.kind = ProcessKind::BIFBM;
  s.h0 = h0;
  s.k0 = k0;
  return s;
}

void validate(const ProcessSpec& spec) {
  const double upper = upper_hurst(spec);
  if (spec.kind == ProcessKind::BIFBM) {
    if (!(spec.h0 > 0.0 && spec.h0 < 1.0)) {
      throw InvalidArgument("h0=" + format_double(spec.h0) + " out of range (0, 1)");
    }
    if (!(spec.k0 > 0.0 && spec.k0 <= 1.0)) {
      throw InvalidArgument("k0=" + format_double(spec.k0) + " out of range (0, 1]");
    }
    const double h = spec.h0 * spec.k0;
    if (!(h < upper)) reject_hurst("effective index h0*k0", h, spec);
    return;
  }
  if (!(spec.hurst > 0.0 && spec.hurst < upper)) reject_hurst("H", spec.hurst, spec);
}

double effective_index(const ProcessSpec& spec) {
  return spec.kind == ProcessKind::BIFBM ? spec.h0 * spec.k0 : spec.hurst;
}

std::string describe(const ProcessSpec& spec) {
  if (spec.kind == ProcessKind::BIFBM) {
    return "bifbm(h0=" + format_double(spec.h0) + ",k0=" + format_double(spec.k0) + ")";
  }
  return to_string(spec.kind) + "(H=" + format_double(spec.hurst) + ")";
}

double cov(const ProcessSpec& spec, double s, double t) {
  validate(spec);
  require_time(s, t);
  return static_cast<double>(cov_ld(spec, s, t));
}

double increment_variance(const ProcessSpec& spec, double s, double t) {
  validate(spec);
  require_time(s, t);
  if (s == t) return 0.0;
  const Real d = cov_ld(spec, t, t) + cov_ld(spec, s, s) - 2.0L * cov_ld(spec, s, t);
  return static_cast<double>(std::max(d, 0.0L));
}

double rho(double hurst, std::int64_t x) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw InvalidArgument("H=" + format_double(hurst) + " out of range (0, 1)");
  }
  if (x < 0) throw InvalidArgument("rho lag must be >= 0");
  return static_cast<double>(rho_ld(hurst, x));
}

double unit_increment_cov(const ProcessSpec& spec, std::int64_t j, std::int64_t l) {
  validate(spec);
  require_index(j, l);
  const Real jr = static_cast<Real>(j);
  const Real lr = static_cast<Real>(l);
  const Real v = cov_ld(spec, jr, lr) - cov_ld(spec, jr - 1.0L, lr) - cov_ld(spec, jr, lr - 1.0L) +
                 cov_ld(spec, jr - 1.0L, lr - 1.0L);
  return static_cast<double>(v);
}

double theta_correction(const ProcessSpec& spec, std::int64_t j, std::int64_t l) {
  validate(spec);
  require_index(j, l);
  return static_cast<double>(theta_ld(spec, j, l));
}

DecompositionCoefficients decomposition_coefficients(const ProcessSpec& spec) {
  switch (spec.kind) {
    case ProcessKind::FBM:
      return {1.0, 0.0};
    case ProcessKind::SUBFBM:
      return {1.0, 1.0};
    case ProcessKind::BIFBM:
      return {std::pow(2.0, 1.0 - spec.k0), 1.0};
  }
  return {1.0, 0.0};
}

double decomposed_increment_cov(const ProcessSpec& spec, std::int64_t j, std::int64_t l) {
  validate(spec);
  require_index(j, l);
  const auto [c0, c1] = decomposition_coefficients(spec);
  const std::int64_t lag = j > l ? j - l : l - j;
  const Real v = static_cast<Real>(c0) * rho_ld(effective_index(spec), lag) +
                 static_cast<Real>(c1) * theta_ld(spec, j, l);
  return static_cast<double>(v);
}

void theta_row(const ProcessSpec& spec, std::int64_t j, std::span<double> out) {
  validate(spec);
  require_index(j, 1);
  const auto count = static_cast<std::int64_t>(out.size());
  if (spec.kind != ProcessKind::BIFBM) {
    for (std::int64_t l = 1; l <= count; ++l) out[l - 1] = static_cast<double>(theta_ld(spec, j, l));
    return;
  }
  const Real p = 2.0L * spec.h0;
  const Real k = spec.k0;
  const Real scale = std::pow(2.0L, -k);
  // l <= j: consecutive entries of f_j share evaluations.
  const BifbmRow f(p, k, j);
  Real prev = f(0);
  for (std::int64_t l = 1; l <= std::min(count, j); ++l) {
    const Real cur = f(l);
    out[l - 1] = static_cast<double>(scale * (cur - prev));
    prev = cur;
  }
  for (std::int64_t l = j + 1; l <= count; ++l) {
    out[l - 1] = static_cast<double>(theta_ld(spec, j, l));
  }
}

void decomposed_increment_cov_row(const ProcessSpec& spec, std::int64_t j, std::span<double> out) {
  if (static_cast<std::int64_t>(out.size()) > j) {
    throw InvalidArgument("lower-triangle row longer than its index");
  }
  theta_row(spec, j, out);
  const auto [c0, c1] = decomposition_coefficients(spec);
  const std::vector<Real>& r = rho_prefix(effective_index(spec), j);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto l = static_cast<std::int64_t>(i) + 1;
    out[i] = static_cast<double>(static_cast<Real>(c0) * r[j - l] +
                                 static_cast<Real>(c1) * static_cast<Real>(out[i]));
  }
}

double qv_normalizer(const ProcessSpec& spec) { return decomposition_coefficients(spec).c0; }

}  // namespace gausvol
