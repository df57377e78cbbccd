#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gausvol/error.hpp"
#include "gausvol/integrate.hpp"
#include "gausvol/sampler.hpp"
#include "gausvol/variation.hpp"

using namespace gausvol;

namespace {

SamplePath fbm_path(double h, std::int64_t n, std::uint64_t seed, double T = 1.0) {
  return sample(ProcessSpec::fbm(h), Grid(n, T), seed, SampleMethod::CIRCULANT);
}

// Midpoint rule with `points` cells.
template <class F>
double midpoint(F f, double t, int points) {
  long double s = 0.0L;
  const double h = t / points;
  for (int i = 0; i < points; ++i) s += f((i + 0.5) * h);
  return static_cast<double>(s * h);
}

}  // namespace

TEST(Integrate, UnitIntegrandReproducesDriver) {
  const auto g = fbm_path(0.6, 512, 4);
  const auto z = integral_path(VolatilitySpec::constant(1.0), g);
  for (std::size_t k = 0; k < g.values.size(); ++k) EXPECT_NEAR(z.values[k], g.values[k], 1e-13);
}

TEST(Integrate, ZeroIntegrand) {
  const auto z = integral_path(VolatilitySpec::constant(0.0), fbm_path(0.6, 64, 4));
  for (double v : z.values) EXPECT_EQ(v, 0.0);
}

TEST(Integrate, LeftPointSums) {
  SamplePath g;
  g.grid = Grid(2, 1.0);
  g.values = {0.0, 1.0, -1.0};
  const auto z = integral_path(VolatilitySpec::affine(1.0, 2.0), g);
  // u(0)=1, u(0.5)=2: Z = [0, 1, 1 + 2·(-2)].
  EXPECT_EQ(z.values[1], 1.0);
  EXPECT_EQ(z.values[2], -3.0);
}

TEST(Integrate, OuWithoutDriftIsTheIntegral) {
  const auto g = fbm_path(0.3, 256, 8);
  const auto sigma = VolatilitySpec::sinusoid(1.0, 0.5, 1.0);
  const auto x = ou_path(OUParams{0.0, 0.0}, sigma, g);
  const auto z = integral_path(sigma, g);
  EXPECT_EQ(x.values, z.values);
}

TEST(Integrate, DeterministicLinearOde) {
  SamplePath g;
  g.grid = Grid(10000, 1.0);
  g.values.assign(10001, 0.0);
  const auto x = ou_path(OUParams{1.0, 1.0}, VolatilitySpec::constant(0.0), g);
  EXPECT_NEAR(x.values.back(), std::exp(-1.0), 1e-4);
  EXPECT_NEAR(x.values.back(), std::pow(1.0 - 1e-4, 10000), 1e-12);
}

TEST(Integrate, IntegratedVolatilityClosedForms) {
  EXPECT_DOUBLE_EQ(integrated_volatility(VolatilitySpec::constant(3.0), 2.0), 18.0);
  EXPECT_NEAR(integrated_volatility(VolatilitySpec::affine(0.0, 1.0), 1.0), 1.0 / 3.0, 1e-16);
  EXPECT_NEAR(integrated_volatility(VolatilitySpec::power(2.0, 0.5), 2.0), 4.0 * 4.0 / 2.0, 1e-14);
  // mpmath quadrature, 40 digits.
  const auto s = VolatilitySpec::sinusoid(1.0, 0.5, 1.0);
  EXPECT_NEAR(integrated_volatility(s, 1.0), 1.527866604955255176636812, 1e-15);
  const auto s2 = VolatilitySpec::sinusoid(0.7, 1.3, 2.0);
  EXPECT_NEAR(integrated_volatility(s2, 3.0), 4.154596068075758802428117, 1e-14);
}

TEST(Integrate, SinusoidAgainstRiemannOracle) {
  const auto s = VolatilitySpec::sinusoid(1.0, 0.5, 1.0);
  const double oracle = midpoint([&](double t) { return s(t) * s(t); }, 1.0, 1000000);
  EXPECT_NEAR(integrated_volatility(s, 1.0), oracle, 1e-9);
}

TEST(Integrate, QuarticityClosedForms) {
  EXPECT_NEAR(integrated_quarticity(VolatilitySpec::affine(0.0, 1.0), 1.0), 0.2, 1e-16);
  EXPECT_NEAR(integrated_quarticity(VolatilitySpec::constant(2.0), 0.5), 8.0, 1e-15);
  EXPECT_NEAR(integrated_quarticity(VolatilitySpec::sinusoid(1.0, 0.5, 1.0), 1.0),
              2.425630732310719400823094, 1e-14);
  EXPECT_NEAR(integrated_quarticity(VolatilitySpec::sinusoid(0.7, 1.3, 2.0), 3.0),
              11.91104973810458256900005, 1e-13);
  const auto a = VolatilitySpec::affine(0.5, -0.3);
  const double oracle = midpoint([&](double t) { return std::pow(a(t), 4); }, 2.0, 200000);
  EXPECT_NEAR(integrated_quarticity(a, 2.0), oracle, 1e-10);
  const auto p = VolatilitySpec::power(1.5, 0.25);
  EXPECT_NEAR(integrated_quarticity(p, 1.0), std::pow(1.5, 4) / 2.0, 1e-15);
}

TEST(Integrate, TableInterpolationAndIntegrals) {
  const auto t = VolatilitySpec::table({0.0, 0.5, 1.0}, {1.0, 3.0, 2.0}, 1.0);
  EXPECT_DOUBLE_EQ(t(0.25), 2.0);
  EXPECT_DOUBLE_EQ(t(0.75), 2.5);
  const double sq = midpoint([&](double x) { return t(x) * t(x); }, 0.8, 400000);
  EXPECT_NEAR(integrated_volatility(t, 0.8), sq, 1e-10);
  const double qu = midpoint([&](double x) { return std::pow(t(x), 4); }, 1.0, 400000);
  EXPECT_NEAR(integrated_quarticity(t, 1.0), qu, 1e-9);
  EXPECT_THROW(t(1.5), DomainError);
  EXPECT_THROW(integrated_volatility(t, 1.5), DomainError);
  EXPECT_THROW(integral_path(t, fbm_path(0.6, 16, 1, 2.0)), DomainError);
  EXPECT_THROW(VolatilitySpec::table({0.0, 0.0}, {1.0, 1.0}, 1.0), InvalidArgument);
}

TEST(Integrate, TableFromCsv) {
  const auto dir = std::filesystem::temp_directory_path() / "gausvol_table_test";
  std::filesystem::create_directories(dir);
  const auto file = (dir / "sigma.csv").string();
  {
    std::ofstream f(file);
    f << "# vol\nt,value\n0,1\n0.5,2\n1,1.5\n";
  }
  const auto t = load_volatility_table(file, 0.8);
  EXPECT_DOUBLE_EQ(t(0.25), 1.5);
  EXPECT_DOUBLE_EQ(t.holder_order(), 0.8);
  EXPECT_EQ(t.describe(), "table:" + file);
}

TEST(Integrate, Linearity) {
  const auto g = fbm_path(0.6, 1024, 21);
  const std::vector<double> times{0.0, 0.3, 0.7, 1.0};
  const auto u = VolatilitySpec::table(times, {1.0, -0.5, 2.0, 0.25}, 1.0);
  const auto w = VolatilitySpec::table(times, {0.3, 0.8, -1.0, 1.5}, 1.0);
  const double a = 2.5;
  const double b = -0.75;
  std::vector<double> comb(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) comb[k] = a * u.values[k] + b * w.values[k];
  const auto c = VolatilitySpec::table(times, comb, 1.0);
  const auto zu = integral_path(u, g);
  const auto zw = integral_path(w, g);
  const auto zc = integral_path(c, g);
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    EXPECT_NEAR(zc.values[k], a * zu.values[k] + b * zw.values[k], 1e-12);
  }
}

TEST(Integrate, ParseVolatility) {
  EXPECT_EQ(parse_volatility("constant:2"), VolatilitySpec::constant(2.0));
  EXPECT_EQ(parse_volatility("sinusoid:1,0.5,1"), VolatilitySpec::sinusoid(1.0, 0.5, 1.0));
  EXPECT_EQ(parse_volatility(" Affine:0,1"), VolatilitySpec::affine(0.0, 1.0));
  EXPECT_EQ(parse_volatility("power:1,0.5").holder_order(), 0.5);
  EXPECT_EQ(parse_volatility("sinusoid:1,0.5,1").describe(), "sinusoid:1,0.5,1");
  EXPECT_THROW(parse_volatility("sinusoid:1,2"), InvalidArgument);
  EXPECT_THROW(parse_volatility("cubic:1"), InvalidArgument);
  EXPECT_THROW(parse_volatility("power:1,1.5"), InvalidArgument);
  EXPECT_THROW(parse_volatility("constant:x"), InvalidArgument);
}

TEST(Integrate, RefinementSelfConvergenceOnFrozenPath) {
  // One driver at the finest level; coarser integrals use its restrictions.
  const std::int64_t n = 64;
  const auto u = VolatilitySpec::affine(0.0, 1.0);
  const auto fine = fbm_path(0.6, n * 64, 31);
  auto z_at = [&](std::int64_t r) { return integral_path(u, fine.restrict_to(n * r)).values.back(); };
  const double d1 = std::abs(z_at(16) - z_at(8));
  const double d2 = std::abs(z_at(32) - z_at(16));
  const double d3 = std::abs(z_at(64) - z_at(32));
  EXPECT_LT(d3, d1);
  EXPECT_LT(std::max(d2, d3), 0.05);
}

TEST(Integrate, DownsamplingTrendOverRefinement) {
  // Sup-distance between successive refinements, restricted to the coarse
  // grid, shrinks on average over frozen paths.
  const std::int64_t n = 64;
  const auto u = VolatilitySpec::sinusoid(1.0, 0.5, 1.0);
  std::vector<double> gap(3, 0.0);
  for (int rep = 0; rep < 50; ++rep) {
    const auto fine = fbm_path(0.6, n * 32, 1000 + rep);
    std::vector<SamplePath> levels;
    for (std::int64_t r : {4, 8, 16, 32}) levels.push_back(integral_path(u, fine.restrict_to(n * r)).restrict_to(n));
    for (int k = 0; k < 3; ++k) {
      double worst = 0.0;
      for (std::size_t i = 0; i < levels[k].values.size(); ++i) {
        worst = std::max(worst, std::abs(levels[k + 1].values[i] - levels[k].values[i]));
      }
      gap[k] += worst / 50.0;
    }
  }
  EXPECT_GT(gap[0], gap[1]);
  EXPECT_GT(gap[1], gap[2]);
}

TEST(Integrate, DriftContributionVanishes) {
  // Y = X - Z is the integrated drift; n^{2H-1}·V_n(Y)_T decreases in n.
  const double h = 0.6;
  const auto g = fbm_path(h, 4096 * 4, 17);
  const auto sigma = VolatilitySpec::constant(1.0);
  const auto x = ou_path(OUParams{1.0, 0.5}, sigma, g);
  const auto z = integral_path(sigma, g);
  SamplePath y = x;
  for (std::size_t k = 0; k < y.values.size(); ++k) y.values[k] = x.values[k] - z.values[k];
  double previous = INFINITY;
  for (std::int64_t n = 256; n <= 4096; n *= 2) {
    const double v = qv_estimator(y, n, h).values.back();
    EXPECT_LT(v, previous) << n;
    previous = v;
  }
}
