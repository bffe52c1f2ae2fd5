#include "cascade/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <stdexcept>

#include "cascade/classify.hpp"
#include "cascade/text.hpp"

namespace cascade {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string unquote(std::string value) {
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
    return value.substr(1, value.size() - 2);
  }
  return value;
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (...) {
    throw std::runtime_error("config: bad number for " + key + ": " + value);
  }
}

std::int64_t parse_int(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (...) {
    throw std::runtime_error("config: bad integer for " + key + ": " + value);
  }
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::runtime_error("config: bad boolean for " + key + ": " + value);
}

std::string fmt_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

void apply_override(RunConfig& config, const std::string& key,
                    const std::string& value) {
  if (key == "corpus") {
    config.corpus = value;
  } else if (key == "bloggers") {
    config.bloggers = value;
  } else if (key == "data_dir") {
    config.data_dir = value;
  } else if (key == "model") {
    config.model = value;
  } else if (key == "out_dir") {
    config.out_dir = value;
  } else if (key == "taxonomy_cutoff") {
    config.taxonomy_cutoff = parse_double(value, key);
  } else if (key == "top_k") {
    config.top_k = static_cast<int>(parse_int(value, key));
  } else if (key == "decision_tau") {
    config.decision_tau = parse_double(value, key);
  } else if (key == "tree_threshold") {
    config.tree_threshold = parse_double(value, key);
  } else if (key == "cv_k") {
    config.cv_k = static_cast<int>(parse_int(value, key));
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(parse_int(value, key));
  } else if (key == "algorithm") {
    config.algorithm = value;
  } else if (key == "condition") {
    config.condition = value;
  } else if (key == "supervised") {
    config.supervised = parse_bool(value, key);
  } else {
    throw std::runtime_error("config: unknown key: " + key);
  }
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read config file: " + path.string());
  }
  RunConfig config;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path.string() + ":" +
                               std::to_string(line_number) +
                               ": expected key = value");
    }
    const std::string key = trim(trimmed.substr(0, eq));
    const std::string value = unquote(trim(trimmed.substr(eq + 1)));
    try {
      apply_override(config, key, value);
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" +
                               std::to_string(line_number) + ": " + e.what());
    }
  }
  return config;
}

void apply_env_seed(RunConfig& config) {
  if (const char* env = std::getenv("INTENT_CASCADE_SEED")) {
    config.seed = static_cast<std::uint64_t>(
        parse_int(env, "INTENT_CASCADE_SEED"));
  }
}

void validate(const RunConfig& config) {
  if (config.taxonomy_cutoff < 0.0 || config.taxonomy_cutoff > 1.0) {
    throw std::runtime_error("config: taxonomy_cutoff must be in [0,1]");
  }
  if (config.top_k < 0) throw std::runtime_error("config: top_k must be >= 0");
  if (config.decision_tau < 0.0 || config.decision_tau > 1.0) {
    throw std::runtime_error("config: decision_tau must be in [0,1]");
  }
  if (config.tree_threshold < 0.0 || config.tree_threshold > 1.0) {
    throw std::runtime_error("config: tree_threshold must be in [0,1]");
  }
  if (config.cv_k < 2) throw std::runtime_error("config: cv_k must be >= 2");
  if (!algorithm_from(config.algorithm)) {
    throw std::runtime_error("config: algorithm must be nb, dt or rf");
  }
  if (config.condition != "testdata1" && config.condition != "testdata2") {
    throw std::runtime_error(
        "config: condition must be testdata1 or testdata2");
  }
}

std::string serialize_config(const RunConfig& c) {
  // Sorted keys; one canonical representation per value.
  std::map<std::string, std::string> kv;
  kv["algorithm"] = c.algorithm;
  kv["bloggers"] = c.bloggers.string();
  kv["condition"] = c.condition;
  kv["corpus"] = c.corpus.string();
  kv["cv_k"] = std::to_string(c.cv_k);
  kv["data_dir"] = c.data_dir.string();
  kv["decision_tau"] = fmt_double(c.decision_tau);
  kv["model"] = c.model.string();
  kv["out_dir"] = c.out_dir.string();
  kv["seed"] = std::to_string(c.seed);
  kv["supervised"] = c.supervised ? "true" : "false";
  kv["taxonomy_cutoff"] = fmt_double(c.taxonomy_cutoff);
  kv["top_k"] = std::to_string(c.top_k);
  kv["tree_threshold"] = fmt_double(c.tree_threshold);

  std::string out;
  for (const auto& [key, value] : kv) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  return out;
}

std::string config_fingerprint(const RunConfig& config) {
  return to_hex(fnv1a64(serialize_config(config)));
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("INTENT_CASCADE_DATA_DIR")) {
    return std::filesystem::path(env);
  }
#ifdef CASCADE_DATA_DIR
  return std::filesystem::path(CASCADE_DATA_DIR);
#else
  return std::filesystem::path("data");
#endif
}

}  // namespace cascade
