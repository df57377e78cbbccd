#include "gausvol/sampler.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>

#include "gausvol/error.hpp"
#include "gausvol/format.hpp"

namespace gausvol {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

struct FftwPlan {
  FftwPlan(std::size_t n, int sign) {
    FftwBuffer in(n);
    FftwBuffer out(n);
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), in.data, out.data, sign, FFTW_ESTIMATE);
    if (plan == nullptr) throw NumericalError("FFTW planning failed");
  }
  ~FftwPlan() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
  fftw_plan plan;
};

class CholeskySynthesizer final : public IncrementSynthesizer {
 public:
  CholeskySynthesizer(const ProcessSpec& spec, std::int64_t n, const SamplerOptions& options)
      : IncrementSynthesizer(spec, n) {
    if (n > options.cholesky_cap) {
      throw InvalidArgument("Cholesky synthesis of " + std::to_string(n) +
                            " increments exceeds the cap of " +
                            std::to_string(options.cholesky_cap) +
                            " (O(n^3); raise cholesky_cap or use a coarser grid)");
    }
    const auto size = static_cast<Eigen::Index>(n);
    factor_.resize(size, size);
    fill_covariance();
    double trace = factor_.diagonal().sum();
    Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>, Eigen::Upper> llt(factor_);
    if (llt.info() != Eigen::Success) {
      fill_covariance();
      const double jitter = options.cholesky_jitter * trace / static_cast<double>(n);
      factor_.diagonal().array() += jitter;
      Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>, Eigen::Upper> retry(factor_);
      if (retry.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "Cholesky factorization of the " << n << "x" << n << " increment covariance of "
            << describe(spec) << " failed even after diagonal jitter " << jitter
            << " (trace " << trace << "); the covariance is not numerically PSD";
        throw NumericalError(msg.str());
      }
    }
    factor_.triangularView<Eigen::StrictlyLower>().setZero();
  }

  SampleMethod method() const override { return SampleMethod::CHOLESKY; }
  std::size_t normals_required() const override { return static_cast<std::size_t>(n_steps()); }

  void apply(std::span<const double> normals, std::span<double> increments) const override {
    const auto size = static_cast<Eigen::Index>(n_steps());
    Eigen::Map<const Eigen::VectorXd> z(normals.data(), size);
    Eigen::Map<Eigen::VectorXd> x(increments.data(), size);
    // Σ = UᵀU, so x = Uᵀz has covariance Σ.
    x.noalias() = factor_.triangularView<Eigen::Upper>().transpose() * z;
  }

 private:
  // Upper triangle, column j holds E[ΔG_l ΔG_j] for l <= j.
  void fill_covariance() {
    const auto n = n_steps();
    std::vector<double> row(static_cast<std::size_t>(n));
    for (std::int64_t j = 1; j <= n; ++j) {
      std::span<double> head(row.data(), static_cast<std::size_t>(j));
      decomposed_increment_cov_row(spec(), j, head);
      std::copy(head.begin(), head.end(), factor_.col(j - 1).data());
    }
  }

  Eigen::MatrixXd factor_;
};

class CirculantSynthesizer final : public IncrementSynthesizer {
 public:
  CirculantSynthesizer(const ProcessSpec& spec, std::int64_t n, std::vector<double> sqrt_eigen)
      : IncrementSynthesizer(spec, n),
        sqrt_scaled_eigen_(std::move(sqrt_eigen)),
        plan_(sqrt_scaled_eigen_.size(), FFTW_BACKWARD) {}

  SampleMethod method() const override { return SampleMethod::CIRCULANT; }
  std::size_t normals_required() const override { return 2 * sqrt_scaled_eigen_.size(); }

  void apply(std::span<const double> normals, std::span<double> increments) const override {
    const std::size_t m = sqrt_scaled_eigen_.size();
    FftwBuffer in(m);
    FftwBuffer out(m);
    for (std::size_t k = 0; k < m; ++k) {
      in.data[k][0] = sqrt_scaled_eigen_[k] * normals[2 * k];
      in.data[k][1] = sqrt_scaled_eigen_[k] * normals[2 * k + 1];
    }
    fftw_execute_dft(plan_.plan, in.data, out.data);
    for (std::size_t k = 0; k < increments.size(); ++k) increments[k] = out.data[k][0];
  }

 private:
  std::vector<double> sqrt_scaled_eigen_;  // sqrt(λ_k / M)
  FftwPlan plan_;
};

// Returns sqrt(λ_k/M), or nothing when the embedding has eigenvalues below
// the tolerance.
std::optional<std::vector<double>> circulant_spectrum(double hurst, std::int64_t n,
                                                      double negative_tol) {
  const std::vector<double> row = circulant_first_row(hurst, n);
  const std::size_t m = row.size();
  FftwBuffer in(m);
  FftwBuffer out(m);
  for (std::size_t k = 0; k < m; ++k) {
    in.data[k][0] = row[k];
    in.data[k][1] = 0.0;
  }
  FftwPlan plan(m, FFTW_FORWARD);
  fftw_execute_dft(plan.plan, in.data, out.data);
  double largest = 0.0;
  for (std::size_t k = 0; k < m; ++k) largest = std::max(largest, out.data[k][0]);
  std::vector<double> scaled(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double lambda = out.data[k][0];
    if (lambda < -negative_tol * largest) return std::nullopt;
    scaled[k] = std::sqrt(std::max(lambda, 0.0) / static_cast<double>(m));
  }
  return scaled;
}

}  // namespace

std::vector<double> circulant_first_row(double hurst, std::int64_t n) {
  if (n < 1) throw InvalidArgument("circulant embedding needs n >= 1");
  std::vector<double> row(static_cast<std::size_t>(2 * n));
  for (std::int64_t k = 0; k <= n; ++k) row[k] = rho(hurst, k);
  for (std::int64_t k = 1; k < n; ++k) row[2 * n - k] = row[k];
  return row;
}

std::shared_ptr<const IncrementSynthesizer> IncrementSynthesizer::create(
    const ProcessSpec& spec, std::int64_t n_steps, SampleMethod method,
    const SamplerOptions& options) {
  validate(spec);
  if (n_steps < 1) throw InvalidArgument("sampler needs n_steps >= 1");
  if (method == SampleMethod::CIRCULANT) {
    if (spec.kind != ProcessKind::FBM) {
      throw UnsupportedMethod("circulant synthesis requires stationary increments; " +
                              describe(spec) + " must use cholesky");
    }
    if (auto spectrum = circulant_spectrum(spec.hurst, n_steps, options.circulant_negative_tol)) {
      return std::make_shared<CirculantSynthesizer>(spec, n_steps, std::move(*spectrum));
    }
    std::clog << "warning: circulant embedding for " << describe(spec) << " with n=" << n_steps
              << " has negative eigenvalues; falling back to cholesky\n";
  }
  return std::make_shared<CholeskySynthesizer>(spec, n_steps, options);
}

void IncrementSynthesizer::draw(Engine& engine, std::span<double> increments) const {
  std::vector<double> normals(normals_required());
  fill_standard_normal(engine, normals);
  apply(normals, increments);
}

SamplePath IncrementSynthesizer::sample(const Grid& grid, std::uint64_t seed) const {
  if (grid.n_steps != n_steps()) {
    throw InvalidArgument("grid has " + std::to_string(grid.n_steps) +
                          " steps but the synthesizer was built for " + std::to_string(n_steps()));
  }
  std::vector<double> increments(static_cast<std::size_t>(n_steps()));
  Engine engine = make_engine(seed);
  draw(engine, increments);

  const double scale = std::pow(grid.step(), effective_index(spec()));
  SamplePath path;
  path.grid = grid;
  path.values.assign(grid.size(), 0.0);
  double level = 0.0;
  for (std::size_t k = 0; k < increments.size(); ++k) {
    level += scale * increments[k];
    path.values[k + 1] = level;
  }
  path.meta.spec = spec();
  path.meta.seed = seed;
  path.meta.method = method();
  return path;
}

SamplePath sample(const ProcessSpec& spec, const Grid& grid, std::uint64_t seed,
                  SampleMethod method, const SamplerOptions& options) {
  return IncrementSynthesizer::create(spec, grid.n_steps, method, options)->sample(grid, seed);
}

SamplePath rescale(const SamplePath& path, double new_horizon, double hurst) {
  if (!(new_horizon > 0.0)) throw InvalidArgument("rescale horizon must be > 0");
  SamplePath out = path;
  out.grid = Grid(path.grid.n_steps, new_horizon);
  if (new_horizon == path.grid.horizon) return out;
  const double factor = std::pow(new_horizon / path.grid.horizon, hurst);
  for (double& v : out.values) v *= factor;
  return out;
}

SamplePath rescale(const SamplePath& path, double new_horizon) {
  if (!path.meta.spec) throw InvalidArgument("rescale needs the path's process spec");
  return rescale(path, new_horizon, effective_index(*path.meta.spec));
}

}  // namespace gausvol
