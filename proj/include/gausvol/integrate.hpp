#pragma once

// Pathwise Riemann–Stieltjes integrals Z_t = ∫ u dG (left-point sums) and the
// Euler scheme for dX = -θX dt + σ_t dG.

#include <string>
#include <vector>

#include "gausvol/path.hpp"

namespace gausvol {

enum class VolatilityForm { CONSTANT, AFFINE, SINUSOID, POWER, TABLE };

std::string to_string(VolatilityForm form);

// Volatility / integrand u. Built-in smooth forms are Lipschitz (Hölder
// order 1); POWER a·t^γ has order γ; TABLE carries a declared order and is
// interpolated piecewise-linearly.
struct VolatilitySpec {
  VolatilityForm form = VolatilityForm::CONSTANT;
  double a = 1.0;      // CONSTANT value, AFFINE/SINUSOID offset, POWER scale
  double b = 0.0;      // AFFINE slope, SINUSOID amplitude
  double omega = 1.0;  // SINUSOID frequency
  double gamma = 1.0;  // POWER exponent in (0,1]
  std::vector<double> times;   // TABLE knots, strictly increasing
  std::vector<double> values;  // TABLE values
  double declared_order = 1.0;  // TABLE only
  // A TABLE holding one realization of a random (F_T-measurable) process.
  bool path_dependent = false;
  std::string source;  // TABLE file name, echoed in configs

  static VolatilitySpec constant(double c);
  static VolatilitySpec affine(double a, double b);
  static VolatilitySpec sinusoid(double a, double b, double omega);
  static VolatilitySpec power(double a, double gamma);
  static VolatilitySpec table(std::vector<double> times, std::vector<double> values,
                              double declared_order);

  double operator()(double t) const;
  double holder_order() const;
  bool deterministic() const { return !path_dependent; }
  // Compact text form, e.g. "sinusoid:1,0.5,1".
  std::string describe() const;

  bool operator==(const VolatilitySpec&) const = default;
};

// Parses the compact form "constant:c", "affine:a,b", "sinusoid:a,b,omega",
// "power:a,gamma".
VolatilitySpec parse_volatility(const std::string& text);

// Loads a TABLE volatility from a `t,value` CSV (same layout as paths).
VolatilitySpec load_volatility_table(const std::string& filename, double declared_order);

struct OUParams {
  double theta = 0.0;  // mean reversion
  double x0 = 0.0;

  bool operator==(const OUParams&) const = default;
};

// Z_k = Σ_{j≤k} u(t_{j-1})·(G_j - G_{j-1}), Z_0 = 0.
SamplePath integral_path(const VolatilitySpec& u, const SamplePath& g);

// X_k = X_{k-1} - θ·X_{k-1}·Δt + σ(t_{k-1})·ΔG_k, X_0 = x0.
SamplePath ou_path(const OUParams& params, const VolatilitySpec& sigma, const SamplePath& g);

// ∫_0^t σ_s^2 ds.
double integrated_volatility(const VolatilitySpec& sigma, double t);

// ∫_0^t σ_s^4 ds (variance weight of the CLT limit for deterministic σ).
double integrated_quarticity(const VolatilitySpec& sigma, double t);

}  // namespace gausvol
