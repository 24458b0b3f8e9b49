#include "oneway/app/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oneway/app/instances.hpp"
#include "oneway/app/verify.hpp"
#include "oneway/error.hpp"

namespace oneway::app {

namespace {

namespace fs = std::filesystem;

// Paths arrive already resolved against the config directory.
nlohmann::json read_json_file(const std::string& file) {
  const fs::path path(file);
  std::ifstream in(path);
  if (!in) throw Error(Errc::configuration, "cannot open '" + path.string() + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, path.string() + ": " + e.what());
  }
}

Task make_task(const ExperimentConfig& c, Rng& rng) {
  const auto& t = c.task;
  if (!t.file.empty()) return task_from_json(read_json_file(t.file));
  if (t.builtin == "equality") {
    return {PartialFunction::equality(t.n), equality_distribution(t.n, t.distribution, t.offdiag_mass, rng)};
  }
  auto f = random_function(t.x_size, t.y_size, t.z_size, rng);
  if (t.distribution == "uniform") return {std::move(f), InputDistribution::uniform(t.x_size, t.y_size)};
  if (t.distribution == "product-random") return {std::move(f), random_product_distribution(t.x_size, t.y_size, rng)};
  std::vector<double> w(t.x_size * t.y_size);
  double total = 0.0;
  for (auto& v : w) total += (v = 0.05 + uniform01(rng));
  for (auto& v : w) v /= total;
  return {std::move(f), InputDistribution(t.x_size, t.y_size, std::move(w))};
}

QuantumOneWayProtocol make_protocol(const ExperimentConfig& c, const Task& task, ErrorMode mode, Rng& rng) {
  const auto& p = c.protocol;
  if (p.source == "file") return protocol_from_json(read_json_file(p.file));
  if (p.source == "fingerprint") {
    if (c.task.builtin != "equality" || !c.task.file.empty()) {
      throw Error(Errc::configuration, "protocol.source 'fingerprint' needs task.builtin 'equality'");
    }
    return make_fingerprint_protocol(c.task.n, FingerprintCode{p.code_length, p.min_relative_distance});
  }
  RandomProtocolShape shape;
  shape.message_dim = std::size_t{1} << p.message_qubits;
  if (p.entangled) {
    shape.shared_dim_a = shape.shared_dim_b = std::size_t{1} << p.shared_qubits;
    shape.residual_dim = std::size_t{1} << p.residual_qubits;
  }
  shape.decoder_candidates = p.decoder_candidates;
  shape.retry_budget = p.retry_budget;
  const double d = static_cast<double>(task.f.z_size());
  const double target = p.epsilon_target < 0.0 ? 1.0 - 1.0 / d : p.epsilon_target;
  return make_random_protocol(task.f, task.mu, shape, target, mode, rng);
}

void add_checks(RunReport& report, const std::string& tag, const std::vector<BoundCheck>& checks) {
  for (const auto& c : checks) report.checks.emplace_back(tag, c);
}

void run_theorem1(const ExperimentConfig& c, RunReport& report) {
  for (std::size_t i = 0; i < c.instances; ++i) {
    Rng rng = make_rng(c.seed, 1000 + i);
    const auto task = make_task(c, rng);
    for (std::size_t m = 0; m < c.parameters.modes.size(); ++m) {
      const ErrorMode mode = c.parameters.modes[m];
      Rng prng = make_rng(c.seed, 2000 + i * 16 + m);
      const auto qp = make_protocol(c, task, mode, prng);
      auto res = theorem1_convert(qp, task.f, task.mu, c.parameters.eta, mode);
      evaluate_theorem1(res, task.f, task.mu, c.parameters.trials, derive_seed(c.seed, 3000 + i * 16 + m));
      const std::string tag = "instance " + std::to_string(i) + " theorem1 " + to_string(mode);
      report.instances.push_back({{"id", tag},
                                  {"task", task_to_json(task.f, task.mu)},
                                  {"protocol_origin", qp.origin},
                                  {"protocol_metadata", qp.metadata},
                                  {"report", to_json(res.report)}});
      add_checks(report, tag, res.report.checks);
    }
  }
}

void run_theorem2(const ExperimentConfig& c, RunReport& report) {
  for (std::size_t i = 0; i < c.instances; ++i) {
    Rng rng = make_rng(c.seed, 1000 + i);
    const auto task = make_task(c, rng);
    Rng prng = make_rng(c.seed, 2000 + i * 16);
    const auto qp = make_protocol(c, task, ErrorMode::average, prng);
    for (std::size_t m = 0; m < c.parameters.compression.size(); ++m) {
      Theorem2Options opt;
      opt.eta = c.parameters.eta;
      opt.epsilon_declared = c.parameters.epsilon;
      opt.compression = c.parameters.compression[m];
      opt.purify = c.parameters.purify;
      auto res = theorem2_convert(qp, task.f, task.mu, opt);
      evaluate_theorem2(res, task.f, task.mu, c.parameters.trials, derive_seed(c.seed, 3000 + i * 16 + m));
      const std::string tag = "instance " + std::to_string(i) + " theorem2 " + to_string(opt.compression);
      report.instances.push_back({{"id", tag},
                                  {"task", task_to_json(task.f, task.mu)},
                                  {"protocol_origin", qp.origin},
                                  {"protocol_metadata", qp.metadata},
                                  {"report", to_json(res.report)}});
      add_checks(report, tag, res.report.checks);
    }
  }
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config) {
  RunReport report;
  report.artifact_version = artifact_version();
  report.config = to_json(config);
  switch (config.pipeline) {
    case Pipeline::theorem1: run_theorem1(config, report); break;
    case Pipeline::theorem2: run_theorem2(config, report); break;
    case Pipeline::primitives_suite: report.suites = run_suites(config.suite, config.seed); break;
  }
  return report;
}

void write_report(const RunReport& report, const std::string& out) {
  const fs::path json_path(out);
  fs::path csv_path = json_path;
  csv_path.replace_extension(".csv");
  const std::string json = emit_json(report), csv = emit_csv(report);
  auto write = [](const fs::path& path, const std::string& text) {
    const fs::path tmp = path.string() + ".tmp";
    {
      std::ofstream os(tmp, std::ios::binary);
      if (!os) throw Error(Errc::configuration, "cannot write '" + tmp.string() + "'");
      os << text;
      if (!os) throw Error(Errc::configuration, "write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, path);
  };
  if (json_path.has_parent_path()) fs::create_directories(json_path.parent_path());
  write(json_path, json);
  write(csv_path, csv);
}

}  // namespace oneway::app
