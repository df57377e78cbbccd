#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "gausvol/config.hpp"
#include "gausvol/error.hpp"

using namespace gausvol;

namespace {

ExperimentConfig parse(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  parse_config(in, "test.cfg", c);
  return c;
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, ParsesKeysAndComments) {
  const auto c = parse(
      "# experiment file\n"
      "experiment = clt\n"
      "process = subfbm   # trailing comment\n"
      "hurst = 0.62\n"
      "\n"
      "sigma = sinusoid:1,0.5,1\n"
      "ou.theta = 1.5\n"
      "n = 128, 512\n"
      "replications = 40\n"
      "seed = 18446744073709551615\n"
      "centering = exact-mean\n"
      "method = cholesky\n");
  EXPECT_EQ(c.experiment, Experiment::CLT);
  EXPECT_EQ(c.spec, ProcessSpec::subfbm(0.62));
  EXPECT_EQ(c.sigma, VolatilitySpec::sinusoid(1.0, 0.5, 1.0));
  EXPECT_EQ(c.ou.theta, 1.5);
  EXPECT_EQ(c.n_list, (std::vector<std::int64_t>{128, 512}));
  EXPECT_EQ(c.replications, 40);
  EXPECT_EQ(c.base_seed, 18446744073709551615ULL);
  EXPECT_EQ(c.centering, Centering::EXACT_MEAN);
  EXPECT_EQ(c.resolved_method(), SampleMethod::CHOLESKY);
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_of("hurst = 0.6\nhurst = 0.7\n").rfind("test.cfg:2:", 0), 0u);
  EXPECT_NE(error_of("hurst = 0.6\nhurst = 0.7\n").find("duplicate"), std::string::npos);
  EXPECT_EQ(error_of("\n\nbogus = 1\n").rfind("test.cfg:3:", 0), 0u);
  EXPECT_NE(error_of("bogus = 1\n").find("bogus"), std::string::npos);
  EXPECT_EQ(error_of("hurst 0.6\n").rfind("test.cfg:1:", 0), 0u);
  EXPECT_EQ(error_of("replications = many\n").rfind("test.cfg:1:", 0), 0u);
  EXPECT_EQ(error_of("n = 128\nn_list = 256\n").rfind("test.cfg:2:", 0), 0u);
}

TEST(Config, EchoRoundTrips) {
  auto c = parse(
      "experiment = diagnose\nprocess = bifbm\nh0 = 0.55\nk0 = 0.7\n"
      "sigma = affine:0.1,0.2\nhorizon = 0.3\nworkers = 3\nlimits.truncation = 2048\n"
      "diag.n_list = 32,64\nseed = 99\nmethod = cholesky\n");
  const std::string echo = echo_config(c);
  const auto back = parse(echo);
  EXPECT_EQ(back, c);
  EXPECT_EQ(echo_config(back), echo);
  EXPECT_EQ(parse(echo_config(ExperimentConfig())), ExperimentConfig());
}

TEST(Config, EnvironmentSeed) {
  ::setenv("GAUSVOL_SEED", "4242", 1);
  EXPECT_EQ(ExperimentConfig::with_defaults().base_seed, 4242u);
  ::setenv("GAUSVOL_SEED", "-3", 1);
  EXPECT_THROW(ExperimentConfig::with_defaults(), InvalidArgument);
  ::unsetenv("GAUSVOL_SEED");
  EXPECT_EQ(ExperimentConfig::with_defaults().base_seed, 1u);
}

TEST(Config, FinalizeValidates) {
  auto bad = [](const std::string& text) {
    auto c = parse(text);
    EXPECT_THROW(c.finalize(), InvalidArgument) << text;
  };
  bad("n = 512,256\n");
  bad("replications = 0\n");
  bad("refinement = 2\n");
  bad("horizon = 0\n");
  bad("limits.truncation = 10\n");
  bad("hurst = 1.2\n");
  bad("sigma.form = table\n");
  auto ok = parse("hurst = 0.3\n");
  EXPECT_NO_THROW(ok.finalize());
  EXPECT_EQ(ok.resolved_truncation(), 100000);
  EXPECT_EQ(ok.resolved_method(), SampleMethod::CIRCULANT);
}
