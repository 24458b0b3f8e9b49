// oneway: run conversion experiments, invariant suites, and inspect task or
// protocol files.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "oneway/app/config.hpp"
#include "oneway/app/runner.hpp"
#include "oneway/app/verify.hpp"
#include "oneway/error.hpp"
#include "oneway/parallel.hpp"

namespace {

using namespace oneway;

void print_table(const app::RunReport& report, std::ostream& os) {
  for (const auto& s : report.suites) {
    for (const auto& c : s.rows) {
      os << (c.pass ? "PASS " : "FAIL ") << s.suite << ": " << c.name << "  measured=" << c.measured
         << " bound=" << c.bound << " tol=" << c.tolerance << '\n';
    }
  }
  for (const auto& [instance, c] : report.checks) {
    os << (c.pass ? "PASS " : "FAIL ") << instance << ": " << c.name << "  measured=" << c.measured
       << " bound=" << c.bound << " tol=" << c.tolerance << '\n';
  }
}

int inspect(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::configuration, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, path + ": " + e.what());
  }
  if (j.contains("kind")) {
    const auto qp = protocol_from_json(j);
    std::cout << "protocol (" << j.at("kind").get<std::string>() << ")\n"
              << "  |X| = " << qp.x_size() << ", |Y| = " << qp.y_size() << ", |Z| = " << qp.z_size() << '\n'
              << "  message qubits: " << qp.message_qubits() << '\n'
              << "  register dim:   " << qp.register_dim() << '\n'
              << "  projective decoders: " << (qp.decoders_projective() ? "yes" : "no") << '\n';
  } else if (j.contains("schema_version")) {
    const auto report = app::run_report_from_json(j);
    std::cout << "report (schema " << report.schema_version << ", " << report.artifact_version << ")\n";
    print_table(report, std::cout);
    std::cout << (report.all_pass() ? "all checks pass\n" : "some checks fail\n");
  } else {
    const auto task = task_from_json(j);
    std::cout << "task\n"
              << "  |X| = " << task.f.x_size() << ", |Y| = " << task.f.y_size() << ", |Z| = " << task.f.z_size()
              << '\n'
              << "  product distribution: " << (task.mu.is_product() ? "yes" : "no") << '\n';
    if (task.f.z_size() == 2) std::cout << "  column sparsity: " << column_sparsity(task.f) << '\n';
    std::cout << "  function table (-1 = undefined):\n";
    for (std::size_t x = 0; x < task.f.x_size(); ++x) {
      std::cout << "   ";
      for (std::size_t y = 0; y < task.f.y_size(); ++y) std::cout << ' ' << task.f(x, y);
      std::cout << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"One-way communication protocol conversion experiments"};
  cli.require_subcommand(1);

  std::optional<std::size_t> threads;
  cli.add_option("--threads", threads, "Worker threads (default: ONEWAY_THREADS or 1)")->check(CLI::PositiveNumber);

  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  bool timing = false;
  auto* run = cli.add_subcommand("run", "Execute an experiment config and write a report");
  run->add_option("--config", config_path, "YAML experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_path, "Report path (JSON; a CSV is written alongside)")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_flag("--timing", timing, "Record wall-clock time in the report and print it");
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string suite = "all";
  std::string verify_out;
  std::uint64_t verify_seed = 1;
  auto* verify = cli.add_subcommand("verify", "Run invariant suites and print a pass/fail table");
  verify->add_option("suite", suite, "qcore | pgm | shadows | oneshot | convert | all");
  verify->add_option("--seed", verify_seed, "Seed for the suite instances");
  verify->add_option("--out", verify_out, "Also write the table as a report");
  verify->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string inspect_path;
  auto* insp = cli.add_subcommand("inspect", "Pretty-print a task, protocol or report file");
  insp->add_option("file", inspect_path, "JSON file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(cli, argc, argv);

  try {
    if (threads) set_thread_count(*threads);

    if (*run) {
      auto config = app::load_config(config_path);
      if (seed) config.seed = *seed;
      const auto start = std::chrono::steady_clock::now();
      auto report = app::run_experiment(config);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (timing) {
        report.wall_clock_seconds = seconds;
        std::cerr << "wall clock: " << seconds << " s\n";
      }
      app::write_report(report, out_path);
      print_table(report, std::cout);
      return report.all_pass() ? 0 : 1;
    }
    if (*verify) {
      app::RunReport report;
      report.artifact_version = app::artifact_version();
      report.config = {{"verify", suite}, {"seed", verify_seed}};
      report.suites = app::run_suites(suite, verify_seed);
      if (!verify_out.empty()) app::write_report(report, verify_out);
      print_table(report, std::cout);
      return report.all_pass() ? 0 : 1;
    }
    if (*insp) return inspect(inspect_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
