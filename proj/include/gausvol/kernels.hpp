#pragma once

// Covariance kernels of the three self-similar Gaussian drivers (fBm,
// sub-fBm, bi-fBm), their unit-lattice increment covariances and the
// stationary/non-stationary split E[ΔG_j ΔG_l] = c0·ρ_H(|j-l|) + c1·θ(j,l).

#include <cstdint>
#include <span>
#include <string>

namespace gausvol {

enum class ProcessKind { FBM, SUBFBM, BIFBM };

std::string to_string(ProcessKind kind);
ProcessKind parse_process_kind(const std::string& text);

// Upper bound on the self-similarity index accepted by default; the
// quadratic-variation CLT breaks down at and above it.
inline constexpr double kCriticalHurst = 0.75;

struct ProcessSpec {
  ProcessKind kind = ProcessKind::FBM;
  double hurst = 0.5;  // FBM / SUBFBM
  double h0 = 0.5;     // BIFBM
  double k0 = 1.0;     // BIFBM
  // Lifts the H < 3/4 restriction to H < 1. Theorem-based experiments
  // refuse specs with this set.
  bool allow_supercritical = false;

  static ProcessSpec fbm(double hurst);
  static ProcessSpec subfbm(double hurst);
  static ProcessSpec bifbm(double h0, double k0);

  bool operator==(const ProcessSpec&) const = default;
};

// Throws InvalidArgument when a parameter is out of range.
void validate(const ProcessSpec& spec);

// H for fBm/sub-fBm, h0·k0 for bi-fBm. Total: does not validate.
double effective_index(const ProcessSpec& spec);

std::string describe(const ProcessSpec& spec);

// E[G_s G_t].
double cov(const ProcessSpec& spec, double s, double t);

// d(s,t) = E[(G_t - G_s)^2].
double increment_variance(const ProcessSpec& spec, double s, double t);

// ρ_H(x) = ½[(x+1)^{2H} + |x-1|^{2H} - 2x^{2H}], unit-step fGn autocovariance.
double rho(double hurst, std::int64_t x);

// E[(G_j - G_{j-1})(G_l - G_{l-1})], evaluated as a double difference of cov.
double unit_increment_cov(const ProcessSpec& spec, std::int64_t j, std::int64_t l);

// θ(j,l) of the (c0,c1) decomposition. Exactly 0 for fBm.
double theta_correction(const ProcessSpec& spec, std::int64_t j, std::int64_t l);

struct DecompositionCoefficients {
  double c0;
  double c1;
};

// (1,0) for fBm, (1,1) for sub-fBm, (2^{1-K0},1) for bi-fBm.
DecompositionCoefficients decomposition_coefficients(const ProcessSpec& spec);

// c0·ρ_H(|j-l|) + c1·θ(j,l): the same quantity as unit_increment_cov, via
// the decomposition. This is the route used for building covariance
// matrices since it avoids the large-index cancellation of cov differences.
double decomposed_increment_cov(const ProcessSpec& spec, std::int64_t j, std::int64_t l);

// Batched forms for building matrices. The first fills out[l-1] with
// c0·ρ_H(j-l) + c1·θ(j,l) for l = 1..out.size() (requires out.size() <= j);
// the second fills out[l-1] = θ(j,l) for l = 1..out.size(), any length.
void decomposed_increment_cov_row(const ProcessSpec& spec, std::int64_t j, std::span<double> out);
void theta_row(const ProcessSpec& spec, std::int64_t j, std::span<double> out);

// Long-run average of the unit increment variance, i.e. c0·ρ_H(0) = c0.
// Dividing realized quadratic variation by it makes the driver satisfy the
// block-average normalization (A3).
double qv_normalizer(const ProcessSpec& spec);

}  // namespace gausvol
