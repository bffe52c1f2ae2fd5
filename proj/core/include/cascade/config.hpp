#ifndef CASCADE_CONFIG_HPP_
#define CASCADE_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>

namespace cascade {

// Declarative run configuration shared by every CLI subcommand. Values come
// from a flat key=value config file, overridden by command-line flags; the
// INTENT_CASCADE_SEED environment variable overrides every seed.
struct RunConfig {
  // paths
  std::filesystem::path corpus;
  std::filesystem::path bloggers;
  std::filesystem::path data_dir;   // bundled lexicons + language profiles
  std::filesystem::path model;
  std::filesystem::path out_dir = "out";

  // thresholds
  double taxonomy_cutoff = 0.40;
  int top_k = 3;
  double decision_tau = 0.05;    // nb threshold quantile
  double tree_threshold = 0.5;   // dt/rf decision threshold

  // cross validation
  int cv_k = 5;
  std::uint64_t seed = 42;

  std::string algorithm = "rf";       // nb | dt | rf
  std::string condition = "testdata2";  // testdata1 | testdata2
  bool supervised = false;
};

// Parses `key = value` lines; '#' starts a comment. Unknown keys and
// out-of-range values throw with the offending line.
RunConfig load_config_file(const std::filesystem::path& path);

// Applies one `key=value` override (same keys as the config file).
void apply_override(RunConfig& config, const std::string& key,
                    const std::string& value);

// Replaces the seed with INTENT_CASCADE_SEED when set.
void apply_env_seed(RunConfig& config);

void validate(const RunConfig& config);

// Canonical serialized form (sorted keys) and its hash. Artifacts embed the
// fingerprint; equal fingerprints mean byte-identical outputs.
std::string serialize_config(const RunConfig& config);
std::string config_fingerprint(const RunConfig& config);

// Bundled data directory: $INTENT_CASCADE_DATA_DIR, else the location baked
// in at build time.
std::filesystem::path default_data_dir();

}  // namespace cascade

#endif  // CASCADE_CONFIG_HPP_
