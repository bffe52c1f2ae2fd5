// End-to-end subprocess checks of the cascade executable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

const fs::path kCli = CASCADE_CLI_PATH;
const fs::path kDataDir = CASCADE_TEST_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const fs::path out_file =
      fs::temp_directory_path() / "cascade_cli_test_output.txt";
  const std::string command =
      kCli.string() + " " + args + " > " + out_file.string() + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_file);
  std::ostringstream text;
  text << in.rdbuf();
  result.output = text.str();
  return result;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("unknown subcommand is a usage error with exit 2") {
  const auto result = run("frobnicate");
  CHECK(result.exit_code == 2);
}

TEST_CASE("invalid config value exits 2") {
  const auto dir = fresh_dir("cascade_cli_badcfg");
  std::ofstream(dir / "run.cfg") << "cv_k = 1\n";
  const auto result = run("agreement --annotations missing.csv --config " +
                          (dir / "run.cfg").string());
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("cv_k") != std::string::npos);
}

TEST_CASE("evaluate on an empty predictions file fails with 'empty input'") {
  const auto dir = fresh_dir("cascade_cli_empty");
  std::ofstream(dir / "predictions.csv") << "";
  std::ofstream(dir / "labels.csv")
      << "post_id,topic_label,intent_label\np1,topic,intent\n";
  const auto result =
      run("evaluate --predictions " + (dir / "predictions.csv").string() +
          " --labels " + (dir / "labels.csv").string() + " --out-dir " +
          (dir / "out").string());
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("empty input") != std::string::npos);
}

TEST_CASE("agreement prints Po/Pe/kappa for the reference fixture") {
  const auto dir = fresh_dir("cascade_cli_agreement");
  auto fixture = run("gen-fixture --seed 42 --out-dir " + dir.string());
  REQUIRE(fixture.exit_code == 0);
  const auto result =
      run("agreement --annotations " + (dir / "agreement/annotations.csv").string() +
          " --out-dir " + (dir / "agr").string());
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("Po=0.9849") != std::string::npos);
  CHECK(result.output.find("kappa=0.9318") != std::string::npos);
  CHECK(result.output.find("Po=0.9521") != std::string::npos);
  CHECK(fs::exists(dir / "agr/agreement.json"));
}

TEST_CASE("full pipeline over the generated fixture produces every artifact") {
  const auto dir = fresh_dir("cascade_cli_pipeline");
  const std::string data_flag = " --data-dir " + kDataDir.string();

  REQUIRE(run("gen-fixture --seed 42 --cascade-posts 400 --out-dir " +
              dir.string())
              .exit_code == 0);

  const auto corpus = (dir / "cascade/corpus.jsonl").string();
  const auto labels = (dir / "cascade/labels.csv").string();
  const auto work = (dir / "work").string();

  REQUIRE(run("ingest --posts " + corpus + " --bloggers " +
              (dir / "cascade/bloggers.jsonl").string() + " --out-dir " +
              work + data_flag)
              .exit_code == 0);
  CHECK(fs::exists(dir / "work/dataset.jsonl"));
  CHECK(fs::exists(dir / "work/rejects.jsonl"));
  CHECK(fs::exists(dir / "work/corpus_stats.json"));

  REQUIRE(run("bootstrap --dataset " + work + "/dataset.jsonl --seeds "
              "holystruggle,racepurity,supremacistwave,faithclash --max-posts "
              "200 --out-dir " + work + data_flag)
              .exit_code == 0);
  CHECK(fs::exists(dir / "work/crawl_trace.json"));
  CHECK(fs::exists(dir / "work/bootstrap_dataset.jsonl"));

  REQUIRE(run("extract --dataset " + work + "/dataset.jsonl --out-dir " +
              work + data_flag)
              .exit_code == 0);
  CHECK(fs::exists(dir / "work/features.jsonl"));

  REQUIRE(run("train --features " + work + "/features.jsonl --labels " +
              labels + " --algorithm rf --seed 42 --out-dir " + work +
              data_flag)
              .exit_code == 0);
  CHECK(fs::exists(dir / "work/model.json"));

  REQUIRE(run("classify --features " + work + "/features.jsonl --model " +
              work + "/model.json --harvest-labels " + labels +
              " --out-dir " + work + data_flag)
              .exit_code == 0);
  CHECK(fs::exists(dir / "work/predictions.csv"));

  REQUIRE(run("evaluate --predictions " + work + "/predictions.csv --labels " +
              labels + " --condition testdata2 --seed 42 --out-dir " + work +
              "/report" + data_flag)
              .exit_code == 0);
  for (const char* name : {"metrics.csv", "roc_points.csv", "ablation_p1.csv",
                           "ablation_p2.csv", "summary.txt"}) {
    CHECK(fs::exists(dir / "work/report" / name));
  }

  REQUIRE(run("ablate --features " + work + "/features.jsonl --labels " +
              labels + " --algorithm nb --seed 42 --out-dir " + work +
              "/ablation" + data_flag)
              .exit_code == 0);
  const auto p1 = slurp(dir / "work/ablation/ablation_p1.csv");
  const auto p2 = slurp(dir / "work/ablation/ablation_p2.csv");
  CHECK(std::count(p1.begin(), p1.end(), '\n') == 2 + 5);
  CHECK(std::count(p2.begin(), p2.end(), '\n') == 2 + 10);

  // Determinism: identical config fingerprint, byte-identical artifacts.
  const auto first = slurp(dir / "work/predictions.csv");
  REQUIRE(run("classify --features " + work + "/features.jsonl --model " +
              work + "/model.json --harvest-labels " + labels +
              " --out-dir " + work + data_flag)
              .exit_code == 0);
  CHECK(slurp(dir / "work/predictions.csv") == first);
  CHECK(first.starts_with("# config_fingerprint="));
}

TEST_CASE("INTENT_CASCADE_SEED overrides the configured seed") {
  const auto dir = fresh_dir("cascade_cli_envseed");
  setenv("INTENT_CASCADE_SEED", "4242", 1);
  const auto result = run("gen-fixture --seed 1 --cascade-posts 60 --out-dir " +
                          dir.string());
  unsetenv("INTENT_CASCADE_SEED");
  REQUIRE(result.exit_code == 0);
  // Drop the fingerprint line (it embeds out_dir); the body is the seeded
  // content.
  const auto body = [](const fs::path& path) {
    const std::string text = slurp(path);
    return text.substr(text.find('\n') + 1);
  };
  const auto corpus = body(dir / "cascade/corpus.jsonl");

  const auto dir2 = fresh_dir("cascade_cli_envseed2");
  const auto result2 = run("gen-fixture --seed 4242 --cascade-posts 60 --out-dir " +
                           dir2.string());
  REQUIRE(result2.exit_code == 0);
  CHECK(body(dir2 / "cascade/corpus.jsonl") == corpus);

  const auto dir3 = fresh_dir("cascade_cli_envseed3");
  const auto result3 = run("gen-fixture --seed 1 --cascade-posts 60 --out-dir " +
                           dir3.string());
  REQUIRE(result3.exit_code == 0);
  CHECK(body(dir3 / "cascade/corpus.jsonl") != corpus);
}
