#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>

#include "cascade/config.hpp"

using namespace cascade;

namespace {

std::filesystem::path write_temp_config(const std::string& body) {
  const auto path =
      std::filesystem::temp_directory_path() / "cascade_test_config.txt";
  std::ofstream out(path);
  out << body;
  out.close();
  return path;
}

}  // namespace

TEST_CASE("config file parsing with comments and quotes") {
  const auto path = write_temp_config(
      "# run configuration\n"
      "seed = 1234\n"
      "algorithm = nb\n"
      "out_dir = \"/tmp/somewhere\"\n"
      "decision_tau = 0.1   # quantile\n"
      "supervised = true\n"
      "\n");
  const auto config = load_config_file(path);
  CHECK(config.seed == 1234);
  CHECK(config.algorithm == "nb");
  CHECK(config.out_dir == std::filesystem::path("/tmp/somewhere"));
  CHECK(config.decision_tau == 0.1);
  CHECK(config.supervised);
}

TEST_CASE("config file rejects unknown keys and bad values") {
  CHECK_THROWS_AS(load_config_file(write_temp_config("no_such_key = 1\n")),
                  std::runtime_error);
  CHECK_THROWS_AS(load_config_file(write_temp_config("seed == 5\n")),
                  std::runtime_error);
  CHECK_THROWS_AS(load_config_file(write_temp_config("cv_k = soon\n")),
                  std::runtime_error);
}

TEST_CASE("validate catches out-of-range values") {
  RunConfig config;
  validate(config);  // defaults are fine
  config.decision_tau = 1.5;
  CHECK_THROWS_AS(validate(config), std::runtime_error);
  config = RunConfig{};
  config.cv_k = 1;
  CHECK_THROWS_AS(validate(config), std::runtime_error);
  config = RunConfig{};
  config.algorithm = "svm";
  CHECK_THROWS_AS(validate(config), std::runtime_error);
  config = RunConfig{};
  config.condition = "testdata3";
  CHECK_THROWS_AS(validate(config), std::runtime_error);
}

TEST_CASE("fingerprint changes exactly when the config changes") {
  RunConfig a;
  RunConfig b;
  CHECK(config_fingerprint(a) == config_fingerprint(b));
  b.seed = a.seed + 1;
  CHECK(config_fingerprint(a) != config_fingerprint(b));
  b = a;
  b.algorithm = "dt";
  CHECK(config_fingerprint(a) != config_fingerprint(b));
  CHECK(serialize_config(a).find("seed=42") != std::string::npos);
}

TEST_CASE("environment seed override wins") {
  RunConfig config;
  config.seed = 7;
  setenv("INTENT_CASCADE_SEED", "991", 1);
  apply_env_seed(config);
  unsetenv("INTENT_CASCADE_SEED");
  CHECK(config.seed == 991);
  apply_env_seed(config);  // no env var: unchanged
  CHECK(config.seed == 991);
}
