#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "expect_errc.hpp"
#include "oneway/app/config.hpp"
#include "oneway/app/instances.hpp"
#include "oneway/app/runner.hpp"
#include "oneway/app/verify.hpp"

using namespace oneway;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("oneway_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void expect_config_error(const std::string& yaml, const std::string& fragment) {
  try {
    app::parse_config(yaml);
    ADD_FAILURE() << "expected a configuration error mentioning " << fragment;
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

const char* kSmallTheorem1 = R"(seed: 5
pipeline: theorem1
instances: 2
task:
  builtin: random
  x_size: 3
  y_size: 3
  z_size: 2
  distribution: product-random
protocol:
  source: random
  message_qubits: 1
  decoder_candidates: 4
parameters:
  eta: 0.1
  mode: [average, worst-case-y]
  trials: 2000
)";

}  // namespace

TEST(Config, ParsesExampleConfigs) {
  const auto c = app::load_config(std::string(ONEWAY_EXAMPLES_DIR) + "/equality_theorem2.yaml");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.pipeline, app::Pipeline::theorem2);
  EXPECT_EQ(c.task.n, 3u);
  EXPECT_EQ(c.parameters.compression.size(), 2u);
  EXPECT_EQ(c.parameters.trials, 10000u);
  for (const char* name : {"random_theorem1.yaml", "entangled_theorem1.yaml", "primitives.yaml"}) {
    EXPECT_NO_THROW(app::load_config(std::string(ONEWAY_EXAMPLES_DIR) + "/" + name)) << name;
  }
}

TEST(Config, ValidationMessagesNameFieldAndLine) {
  expect_config_error("pipeline: theorem1\n", "seed");
  expect_config_error("seed: 1\nparameters:\n  trials: 0\n", "parameters.trials' (line 3)");
  expect_config_error("seed: 1\ncolour: red\n", "colour");
  expect_config_error("seed: 1\npipeline: theorem3\n", "pipeline' (line 2)");
  expect_config_error("seed: -4\n", "seed");
  expect_config_error("seed: 1\nparameters:\n  eta: 1.5\n", "parameters.eta");
  expect_config_error("seed: 1\nparameters:\n  mode: [average, median]\n", "parameters.mode");
  expect_config_error("seed: 1\nprotocol:\n  source: file\n", "protocol.file");
  EXPECT_ERRC(app::parse_config("seed: [1\n"), Errc::parse);
}

TEST(Config, ResolvedEchoHasEveryField) {
  const auto c = app::parse_config(kSmallTheorem1);
  const auto j = app::to_json(c);
  EXPECT_EQ(j.at("seed"), 5);
  EXPECT_EQ(j.at("parameters").at("mode").size(), 2u);
  EXPECT_EQ(j.at("protocol").at("decoder_candidates"), 4);
  EXPECT_TRUE(j.at("task").contains("offdiag_mass"));
}

TEST(Report, RoundTripsThroughJson) {
  auto c = app::parse_config(kSmallTheorem1);
  auto report = app::run_experiment(c);
  report.suites = app::run_suites("oneshot", 3);
  report.wall_clock_seconds = 1.25;
  const auto text = app::emit_json(report);
  const auto back = app::run_report_from_json(nlohmann::json::parse(text));
  EXPECT_EQ(back, report);
  EXPECT_EQ(app::emit_json(back), text);
  auto tampered = nlohmann::json::parse(text);
  tampered["all_pass"] = !tampered["all_pass"].get<bool>();
  EXPECT_ERRC(app::run_report_from_json(tampered), Errc::parse);
  tampered = nlohmann::json::parse(text);
  tampered["schema_version"] = 99;
  EXPECT_ERRC(app::run_report_from_json(tampered), Errc::parse);
}

TEST(Report, EveryCheckCarriesBoundMeasuredToleranceVerdict) {
  const auto report = app::run_experiment(app::parse_config(kSmallTheorem1));
  const auto j = app::to_json(report);
  ASSERT_FALSE(j.at("checks").empty());
  for (const auto& c : j.at("checks")) {
    for (const char* key : {"instance", "name", "bound", "measured", "tolerance", "verdict"}) {
      EXPECT_TRUE(c.contains(key)) << key;
    }
  }
  EXPECT_EQ(j.at("instances").size(), 4u);
  const auto csv = app::emit_csv(report);
  EXPECT_EQ(csv.rfind("instance,check,bound,measured,tolerance,verdict\n", 0), 0u);
}

TEST(Runner, SameConfigGivesIdenticalBytes) {
  const auto dir = scratch_dir("determinism");
  const auto c = app::parse_config(kSmallTheorem1);
  app::write_report(app::run_experiment(c), (dir / "a.json").string());
  app::write_report(app::run_experiment(c), (dir / "b.json").string());
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  EXPECT_FALSE(fs::exists(dir / "a.json.tmp"));
}

TEST(Runner, FileSourcedTaskAndProtocol) {
  const auto dir = scratch_dir("files");
  const auto inst = app::random_product_instance(8, 0);
  std::ofstream(dir / "task.json") << task_to_json(inst.f, inst.mu).dump(1);
  std::ofstream(dir / "protocol.json") << protocol_to_json(inst.qp).dump(1);
  std::ofstream(dir / "cfg.yaml") << "seed: 3\npipeline: theorem1\ntask:\n  file: task.json\n"
                                     "protocol:\n  source: file\n  file: protocol.json\n"
                                     "parameters:\n  trials: 1000\n";
  const auto report = app::run_experiment(app::load_config((dir / "cfg.yaml").string()));
  ASSERT_EQ(report.instances.size(), 1u);
  EXPECT_TRUE(report.all_pass());
}

TEST(Verify, SuitesHaveRequiredRows) {
  const auto pgm = app::run_suites("pgm", 1);
  ASSERT_EQ(pgm.size(), 1u);
  bool g_row = false;
  for (const auto& r : pgm[0].rows) g_row |= r.name == "g(p_opt) <= p_pgm";
  EXPECT_TRUE(g_row);
  const auto sh = app::run_suites("shadows", 1);
  bool unbiased = false;
  for (const auto& r : sh[0].rows) unbiased |= r.name.find("unbiasedness") != std::string::npos;
  EXPECT_TRUE(unbiased);
  const auto all = app::run_suites("all", 1);
  EXPECT_EQ(all.size(), app::suite_names().size());
  for (const auto& s : all) EXPECT_TRUE(s.all_pass()) << s.suite;
  EXPECT_ERRC(app::run_suites("nonsense", 1), Errc::invalid_argument);
}

TEST(Cli, ExitCodesAndNoPartialOutput) {
  const auto dir = scratch_dir("cli");
  const std::string cli = ONEWAY_CLI;
  std::ofstream(dir / "bad.yaml") << "seed: 1\npipeline: theorem1\nparameters:\n  trials: 0\n";
  const auto out = dir / "out.json";
  const std::string bad = cli + " run --config " + (dir / "bad.yaml").string() + " --out " + out.string() +
                          " > /dev/null 2>&1";
  EXPECT_NE(std::system(bad.c_str()), 0);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_FALSE(fs::exists(dir / "out.csv"));

  std::ofstream(dir / "good.yaml") << kSmallTheorem1;
  const std::string good = cli + " run --config " + (dir / "good.yaml").string() + " --out " + out.string() +
                           " --seed 9 --threads 2 > /dev/null 2>&1";
  EXPECT_EQ(std::system(good.c_str()), 0);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j.at("config").at("seed"), 9);
  EXPECT_FALSE(j.contains("wall_clock_seconds"));

  EXPECT_EQ(std::system((cli + " verify pgm > /dev/null 2>&1").c_str()), 0);
  EXPECT_NE(std::system((cli + " verify nonsense > /dev/null 2>&1").c_str()), 0);
  EXPECT_EQ(std::system((cli + " inspect " + (dir / "out.json").string() + " > /dev/null 2>&1").c_str()), 0);
}
