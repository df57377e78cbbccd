#pragma once

// Exact synthesis of driver paths on uniform grids. Increments are drawn on
// the unit-step lattice (covariance c0·ρ_H + c1·θ) and mapped to [0,T] by
// self-similarity, so one covariance code path serves every horizon.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "gausvol/kernels.hpp"
#include "gausvol/path.hpp"
#include "gausvol/rng.hpp"

namespace gausvol {

struct SamplerOptions {
  // Largest increment count for which a dense Cholesky factor is built
  // (O(n^3) time, 8·n^2 bytes).
  std::int64_t cholesky_cap = 8192;
  // Circulant eigenvalues below -tol·max(λ) trigger the Cholesky fallback.
  double circulant_negative_tol = 1e-9;
  // Relative diagonal jitter (times trace/n) tried once if Cholesky fails.
  double cholesky_jitter = 1e-12;
};

// Precomputed synthesis operator for (spec, n_steps). Immutable once built;
// one instance may serve concurrent replications.
class IncrementSynthesizer {
 public:
  static std::shared_ptr<const IncrementSynthesizer> create(const ProcessSpec& spec,
                                                            std::int64_t n_steps,
                                                            SampleMethod method,
                                                            const SamplerOptions& options = {});
  virtual ~IncrementSynthesizer() = default;

  const ProcessSpec& spec() const { return spec_; }
  std::int64_t n_steps() const { return n_steps_; }
  // Method actually in use (a circulant request may have fallen back).
  virtual SampleMethod method() const = 0;

  // Number of i.i.d. N(0,1) inputs consumed per path.
  virtual std::size_t normals_required() const = 0;

  // Linear map from standard normals to unit-lattice increments.
  virtual void apply(std::span<const double> normals, std::span<double> increments) const = 0;

  // Unit-lattice increments drawn with `engine`.
  void draw(Engine& engine, std::span<double> increments) const;

  // Path on `grid` (grid.n_steps must equal n_steps()).
  SamplePath sample(const Grid& grid, std::uint64_t seed) const;

 protected:
  IncrementSynthesizer(const ProcessSpec& spec, std::int64_t n_steps)
      : spec_(spec), n_steps_(n_steps) {}

 private:
  ProcessSpec spec_;
  std::int64_t n_steps_;
};

// One-shot convenience: builds the operator and draws a path. Identical
// inputs give bit-identical output.
SamplePath sample(const ProcessSpec& spec, const Grid& grid, std::uint64_t seed,
                  SampleMethod method, const SamplerOptions& options = {});

// Exact-in-law change of horizon: values × (newT/T)^H.
SamplePath rescale(const SamplePath& path, double new_horizon);
SamplePath rescale(const SamplePath& path, double new_horizon, double hurst);

// First row of the 2n circulant embedding of the unit-step fGn covariance:
// [ρ(0), ..., ρ(n-1), ρ(n), ρ(n-1), ..., ρ(1)].
std::vector<double> circulant_first_row(double hurst, std::int64_t n);

}  // namespace gausvol
