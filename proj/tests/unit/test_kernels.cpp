#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "gausvol/error.hpp"
#include "gausvol/kernels.hpp"

using namespace gausvol;

namespace {

std::vector<ProcessSpec> families() {
  return {ProcessSpec::fbm(0.3),       ProcessSpec::fbm(0.6),          ProcessSpec::subfbm(0.3),
          ProcessSpec::subfbm(0.6),    ProcessSpec::bifbm(0.4, 0.8),   ProcessSpec::bifbm(0.75, 0.8),
          ProcessSpec::bifbm(0.9, 0.5)};
}

// Scale for relative comparisons of covariance entries.
double corr_scale(const ProcessSpec& spec, std::int64_t j, std::int64_t l) {
  return std::sqrt(unit_increment_cov(spec, j, j) * unit_increment_cov(spec, l, l));
}

}  // namespace

TEST(Kernels, BrownianCovarianceIsMin) {
  EXPECT_DOUBLE_EQ(cov(ProcessSpec::fbm(0.5), 1.0, 2.0), 1.0);
}

TEST(Kernels, BifbmWithUnitK0IsFbm) {
  const auto bi = ProcessSpec::bifbm(0.3, 1.0);
  const auto fbm = ProcessSpec::fbm(0.3);
  for (double s : {0.0, 0.1, 0.7, 2.5}) {
    for (double t : {0.0, 0.3, 1.0, 4.0}) {
      EXPECT_NEAR(cov(bi, s, t), cov(fbm, s, t), 1e-15);
    }
  }
}

TEST(Kernels, SubfbmVarianceAtOne) {
  EXPECT_NEAR(cov(ProcessSpec::subfbm(0.6), 1.0, 1.0), 2.0 - std::pow(2.0, 0.2), 1e-15);
  // High-precision value of 2 - 2^{0.2}.
  EXPECT_NEAR(cov(ProcessSpec::subfbm(0.6), 1.0, 1.0), 0.85130164500296502856, 1e-15);
}

TEST(Kernels, CovarianceVanishesAtOrigin) {
  for (const auto& spec : families()) {
    EXPECT_EQ(cov(spec, 0.0, 1.7), 0.0);
    EXPECT_EQ(cov(spec, 2.0, 0.0), 0.0);
  }
}

TEST(Kernels, IncrementVarianceExamples) {
  EXPECT_NEAR(increment_variance(ProcessSpec::fbm(0.7), 0.25, 0.75), std::pow(0.5, 1.4), 1e-15);
  EXPECT_NEAR(increment_variance(ProcessSpec::fbm(0.7), 0.25, 0.75), 0.378929141627599, 1e-14);
  for (const auto& spec : families()) EXPECT_EQ(increment_variance(spec, 0.4, 0.4), 0.0);
  const double d = increment_variance(ProcessSpec::subfbm(0.6), 1.0, 2.0);
  EXPECT_GE(d, 2.0 - std::pow(2.0, 0.2));
  EXPECT_LE(d, 1.0);
}

TEST(Kernels, RhoExamples) {
  for (double h : {0.1, 0.5, 0.74, 0.9}) EXPECT_EQ(rho(h, 0), 1.0);
  EXPECT_EQ(rho(0.5, 1), 0.0);
  EXPECT_EQ(rho(0.5, 1000), 0.0);
  EXPECT_NEAR(rho(0.7, 1), (std::pow(2.0, 1.4) - 2.0) / 2.0, 1e-15);
  EXPECT_NEAR(rho(0.7, 1), 0.31950791077289417814, 1e-15);
  EXPECT_NEAR(rho(0.6, 2), 0.071199699429205954906, 1e-16);
}

TEST(Kernels, RhoSeriesMatchesClosedFormAtSwitchover) {
  // The large-lag series and the direct formula agree where both are accurate.
  for (double h : {0.2, 0.6, 0.7}) {
    const double p = 2.0 * h;
    for (std::int64_t x : {32, 33, 40}) {
      const long double xr = x;
      const long double direct =
          0.5L * (std::pow(xr + 1, p) + std::pow(xr - 1, p) - 2.0L * std::pow(xr, p));
      EXPECT_NEAR(rho(h, x), static_cast<double>(direct), 1e-12 * std::abs(rho(h, x)));
    }
  }
}

TEST(Kernels, RhoAsymptotics) {
  // ρ_H(x) ~ H(2H-1) x^{2H-2}.
  const double h = 0.6;
  const double x = 1e6;
  EXPECT_NEAR(rho(h, 1000000) / (h * (2 * h - 1) * std::pow(x, 2 * h - 2)), 1.0, 1e-6);
}

TEST(Kernels, UnitIncrementExamples) {
  const auto fbm = ProcessSpec::fbm(0.6);
  EXPECT_NEAR(unit_increment_cov(fbm, 3, 5), rho(0.6, 2), 1e-14);
  const auto sub = ProcessSpec::subfbm(0.6);
  EXPECT_NEAR(unit_increment_cov(sub, 2, 4), rho(0.6, 2) - rho(0.6, 5), 1e-14);
  EXPECT_NEAR(unit_increment_cov(sub, 2, 4), 0.037924941873725105957, 1e-14);
  for (const auto& spec : families()) {
    EXPECT_NEAR(unit_increment_cov(spec, 1, 1), increment_variance(spec, 0.0, 1.0), 1e-15);
  }
}

TEST(Kernels, ThetaExamples) {
  for (std::int64_t j : {1, 7, 300}) EXPECT_EQ(theta_correction(ProcessSpec::fbm(0.6), j, 3), 0.0);
  EXPECT_NEAR(theta_correction(ProcessSpec::subfbm(0.6), 1, 1), -rho(0.6, 1), 1e-15);
  const auto bi = ProcessSpec::bifbm(0.4, 0.8);
  EXPECT_LE(std::abs(theta_correction(bi, 5, 9)), std::pow(2.0, -0.8) * std::abs(rho(0.32, 4)));
  EXPECT_NEAR(theta_correction(bi, 1, 1), 1.0 - std::pow(2.0, 0.2), 1e-15);
}

TEST(Kernels, BifbmThetaIntermediateBound) {
  // |θ(j,l)| <= 2^{-K0}(j^{2H} - (j-1)^{2H}) for j >= l.
  const auto bi = ProcessSpec::bifbm(0.4, 0.8);
  const double h = 0.32;
  for (std::int64_t j = 1; j <= 120; j += 7) {
    for (std::int64_t l = 1; l <= j; l += 3) {
      const double bound = std::pow(2.0, -0.8) * (std::pow(j, 2 * h) - std::pow(j - 1.0, 2 * h));
      EXPECT_LE(std::abs(theta_correction(bi, j, l)), bound * (1 + 1e-12)) << j << "," << l;
    }
  }
}

TEST(Kernels, BifbmAgainstHighPrecisionOracle) {
  // mpmath (40 digits) double differences of the bi-fBm kernel, h0=0.4, k0=0.8.
  struct Case {
    std::int64_t j, l;
    double cov, theta;
  };
  const Case cases[] = {
      {5, 9, -0.02250229800983658220, -0.002071592333468392960},
      {50, 2, -0.001233810603288758087, -0.0005495511288010295006},
      {1000, 999, -0.2536754162839335604, -0.000002132214870998645514},
      {1, 1, 1.0, -0.1486983549970349714},
      {123456, 123400, -0.000554832882102485156, -3.047331799942492737e-9},
  };
  const auto bi = ProcessSpec::bifbm(0.4, 0.8);
  for (const auto& c : cases) {
    EXPECT_NEAR(decomposed_increment_cov(bi, c.j, c.l), c.cov, 1e-14) << c.j << "," << c.l;
    EXPECT_NEAR(theta_correction(bi, c.j, c.l), c.theta, 1e-15 + 1e-11 * std::abs(c.theta))
        << c.j << "," << c.l;
  }
}

TEST(Kernels, SubfbmAgainstHighPrecisionOracle) {
  EXPECT_NEAR(decomposed_increment_cov(ProcessSpec::subfbm(0.6), 700, 650),
              0.004872403865919705195, 1e-15);
}

TEST(Kernels, DecompositionExactOnSquare) {
  for (const auto& spec : families()) {
    double worst = 0.0;
    for (std::int64_t j = 1; j <= 200; ++j) {
      for (std::int64_t l = 1; l <= 200; ++l) {
        const auto [c0, c1] = decomposition_coefficients(spec);
        const double lag = static_cast<double>(std::abs(j - l));
        const double split = c0 * rho(effective_index(spec), static_cast<std::int64_t>(lag)) +
                             c1 * theta_correction(spec, j, l);
        worst = std::max(worst,
                         std::abs(unit_increment_cov(spec, j, l) - split) / corr_scale(spec, j, l));
      }
    }
    EXPECT_LT(worst, 1e-12) << describe(spec);
  }
}

TEST(Kernels, RowBuildersMatchPointwise) {
  for (const auto& spec : families()) {
    for (std::int64_t j : {1, 2, 17, 64}) {
      std::vector<double> row(static_cast<std::size_t>(j));
      decomposed_increment_cov_row(spec, j, row);
      std::vector<double> th(80);
      theta_row(spec, j, th);
      for (std::int64_t l = 1; l <= j; ++l) {
        EXPECT_NEAR(row[l - 1], decomposed_increment_cov(spec, j, l), 1e-15);
      }
      for (std::int64_t l = 1; l <= 80; ++l) {
        EXPECT_NEAR(th[l - 1], theta_correction(spec, j, l), 1e-16);
      }
    }
  }
  std::vector<double> too_long(5);
  EXPECT_THROW(decomposed_increment_cov_row(ProcessSpec::fbm(0.4), 4, too_long), InvalidArgument);
}

TEST(Kernels, Symmetry) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (const auto& spec : families()) {
    for (int i = 0; i < 200; ++i) {
      const double s = u(gen);
      const double t = u(gen);
      EXPECT_EQ(cov(spec, s, t), cov(spec, t, s));
    }
  }
}

TEST(Kernels, PositiveSemidefiniteOnGrids) {
  for (const auto& spec : families()) {
    for (int n : {8, 64, 256}) {
      Eigen::MatrixXd m(n, n);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) m(a, b) = cov(spec, (a + 1.0) / n, (b + 1.0) / n);
      }
      const double smallest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues()(0);
      EXPECT_GE(smallest, -1e-10) << describe(spec) << " n=" << n;
    }
  }
}

TEST(Kernels, SelfSimilarity) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (const auto& spec : families()) {
    const double h = effective_index(spec);
    for (double a : {0.5, 2.0, 10.0}) {
      for (int i = 0; i < 50; ++i) {
        const double s = u(gen);
        const double t = u(gen);
        const double lhs = cov(spec, a * s, a * t);
        const double rhs = std::pow(a, 2 * h) * cov(spec, s, t);
        EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs) + 1e-300) << describe(spec);
      }
    }
  }
}

TEST(Kernels, SubfbmVarianceBounds) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (double h : {0.2, 0.45, 0.6, 0.7}) {
    const auto spec = ProcessSpec::subfbm(h);
    const double lo = std::min(1.0, 2.0 - std::pow(2.0, 2 * h - 1));
    const double hi = std::max(1.0, 2.0 - std::pow(2.0, 2 * h - 1));
    for (int i = 0; i < 2000; ++i) {
      const double s = u(gen);
      const double t = u(gen);
      const double base = std::pow(std::abs(t - s), 2 * h);
      const double d = increment_variance(spec, s, t);
      EXPECT_GE(d, lo * base * (1 - 1e-12) - 1e-15);
      EXPECT_LE(d, hi * base * (1 + 1e-12) + 1e-15);
    }
  }
}

TEST(Kernels, BifbmVarianceBounds) {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (const auto& spec : {ProcessSpec::bifbm(0.4, 0.8), ProcessSpec::bifbm(0.75, 0.8),
                           ProcessSpec::bifbm(0.9, 0.5)}) {
    const double h = effective_index(spec);
    const double k = spec.k0;
    for (int i = 0; i < 2000; ++i) {
      const double s = u(gen);
      const double t = u(gen);
      const double base = std::pow(std::abs(t - s), 2 * h);
      const double d = increment_variance(spec, s, t);
      EXPECT_GE(d, std::pow(2.0, -k) * base * (1 - 1e-12) - 1e-15);
      EXPECT_LE(d, std::pow(2.0, 2 - k) * base * (1 + 1e-12) + 1e-15);
    }
  }
}

TEST(Kernels, DiagonalThetaDecay) {
  for (const auto& spec : {ProcessSpec::subfbm(0.6), ProcessSpec::subfbm(0.3),
                           ProcessSpec::bifbm(0.75, 0.8), ProcessSpec::bifbm(0.4, 0.8)}) {
    double previous = INFINITY;
    for (std::int64_t j = 100; j <= 10000; j *= 10) {
      const double th = theta_correction(spec, j, j);
      const double v = static_cast<double>(j) * th * th;
      EXPECT_LT(v, previous) << describe(spec);
      previous = v;
    }
    EXPECT_LT(previous, 1e-3) << describe(spec);
  }
}

TEST(Kernels, Validation) {
  EXPECT_THROW(cov(ProcessSpec::fbm(0.8), 1, 1), HypothesisViolation);
  EXPECT_THROW(cov(ProcessSpec::fbm(0.75), 1, 1), HypothesisViolation);
  try {
    validate(ProcessSpec::subfbm(0.8));
    FAIL();
  } catch (const HypothesisViolation& e) {
    EXPECT_NE(std::string(e.what()).find("H < 3/4"), std::string::npos);
  }
  auto loose = ProcessSpec::fbm(0.8);
  loose.allow_supercritical = true;
  EXPECT_NO_THROW(cov(loose, 1, 2));
  loose.hurst = 1.0;
  EXPECT_THROW(validate(loose), InvalidArgument);
  EXPECT_THROW(validate(ProcessSpec::fbm(0.0)), InvalidArgument);
  EXPECT_THROW(validate(ProcessSpec::bifbm(0.5, 1.2)), InvalidArgument);
  EXPECT_THROW(validate(ProcessSpec::bifbm(1.0, 0.5)), InvalidArgument);
  EXPECT_THROW(validate(ProcessSpec::bifbm(0.95, 0.9)), HypothesisViolation);
  EXPECT_THROW(cov(ProcessSpec::fbm(0.4), -1.0, 1.0), InvalidArgument);
  EXPECT_THROW(unit_increment_cov(ProcessSpec::fbm(0.4), 0, 1), InvalidArgument);
  EXPECT_THROW(rho(1.0, 2), InvalidArgument);
  EXPECT_THROW(rho(0.5, -1), InvalidArgument);
}

TEST(Kernels, EffectiveIndexAndNormalizer) {
  EXPECT_DOUBLE_EQ(effective_index(ProcessSpec::bifbm(0.75, 0.8)), 0.75 * 0.8);
  EXPECT_EQ(qv_normalizer(ProcessSpec::fbm(0.3)), 1.0);
  EXPECT_EQ(qv_normalizer(ProcessSpec::subfbm(0.3)), 1.0);
  EXPECT_NEAR(qv_normalizer(ProcessSpec::bifbm(0.75, 0.8)), std::pow(2.0, 0.2), 1e-15);
  EXPECT_EQ(parse_process_kind(" Sub-FBM "), ProcessKind::SUBFBM);
  EXPECT_THROW(parse_process_kind("ou"), InvalidArgument);
}
