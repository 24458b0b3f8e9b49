#include "oneway/app/config.hpp"

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "oneway/error.hpp"

namespace oneway::app {

namespace {

[[noreturn]] void fail(const std::string& path, const YAML::Node& node, const std::string& what) {
  std::string where = "field '" + path + "'";
  if (node.Mark().line >= 0) where += " (line " + std::to_string(node.Mark().line + 1) + ")";
  throw Error(Errc::configuration, where + ": " + what);
}

void require_keys(const YAML::Node& node, const std::string& path, const std::set<std::string>& allowed) {
  if (!node.IsMap()) fail(path.empty() ? "<root>" : path, node, "expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) fail(path.empty() ? key : path + "." + key, kv.first, "unknown field");
  }
}

template <typename T>
T get(const YAML::Node& parent, const std::string& path, const char* key, T fallback, const char* kind) {
  const YAML::Node node = parent[key];
  if (!node) return fallback;
  const std::string full = path.empty() ? key : path + "." + key;
  if (!node.IsScalar()) fail(full, node, std::string("expected ") + kind);
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(full, node, std::string("expected ") + kind + ", got '" + node.Scalar() + "'");
  }
}

std::size_t get_count(const YAML::Node& parent, const std::string& path, const char* key, std::size_t fallback) {
  const YAML::Node node = parent[key];
  if (node && node.IsScalar() && !node.Scalar().empty() && node.Scalar()[0] == '-') {
    fail(path + "." + key, node, "expected a nonnegative integer");
  }
  return get<std::size_t>(parent, path, key, fallback, "a nonnegative integer");
}

std::vector<std::string> get_list(const YAML::Node& parent, const std::string& path, const char* key) {
  const YAML::Node node = parent[key];
  if (!node) return {};
  std::vector<std::string> out;
  if (node.IsScalar()) {
    out.push_back(node.Scalar());
  } else if (node.IsSequence()) {
    for (const auto& item : node) {
      if (!item.IsScalar()) fail(path + "." + key, item, "expected a list of names");
      out.push_back(item.Scalar());
    }
  } else {
    fail(path + "." + key, node, "expected a name or a list of names");
  }
  return out;
}

void one_of(const std::string& value, const std::set<std::string>& allowed, const std::string& path,
            const YAML::Node& node) {
  if (allowed.count(value)) return;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  fail(path, node, "'" + value + "' is not one of: " + list);
}

std::string resolve(const std::string& base, const std::string& file) {
  if (file.empty()) return file;
  const std::filesystem::path p(file);
  return p.is_absolute() ? file : (std::filesystem::path(base) / p).lexically_normal().string();
}

}  // namespace

const char* to_string(Pipeline p) noexcept {
  switch (p) {
    case Pipeline::theorem1: return "theorem1";
    case Pipeline::theorem2: return "theorem2";
    case Pipeline::primitives_suite: return "primitives-suite";
  }
  return "unknown";
}

ExperimentConfig parse_config(const std::string& text, const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw Error(Errc::parse, "config line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root || root.IsNull()) throw Error(Errc::configuration, "config is empty");
  require_keys(root, "", {"seed", "pipeline", "suite", "instances", "task", "protocol", "parameters"});

  ExperimentConfig c;
  c.base_dir = base_dir;
  if (!root["seed"]) throw Error(Errc::configuration, "field 'seed': required");
  if (root["seed"].IsScalar() && !root["seed"].Scalar().empty() && root["seed"].Scalar()[0] == '-') {
    fail("seed", root["seed"], "expected an unsigned integer");
  }
  c.seed = get<std::uint64_t>(root, "", "seed", 0, "an unsigned integer");

  const auto pipeline = get<std::string>(root, "", "pipeline", "theorem1", "a pipeline name");
  one_of(pipeline, {"theorem1", "theorem2", "primitives-suite"}, "pipeline", root["pipeline"]);
  c.pipeline = pipeline == "theorem1"   ? Pipeline::theorem1
               : pipeline == "theorem2" ? Pipeline::theorem2
                                        : Pipeline::primitives_suite;
  c.suite = get<std::string>(root, "", "suite", "all", "a suite name");
  one_of(c.suite, {"qcore", "pgm", "shadows", "oneshot", "convert", "all"}, "suite", root["suite"]);
  c.instances = get_count(root, "", "instances", 1);
  if (c.instances == 0) fail("instances", root["instances"], "must be at least 1");

  if (const auto t = root["task"]) {
    require_keys(t, "task", {"builtin", "file", "n", "x_size", "y_size", "z_size", "distribution", "offdiag_mass"});
    auto& task = c.task;
    task.builtin = get<std::string>(t, "task", "builtin", task.builtin, "a task name");
    one_of(task.builtin, {"equality", "random"}, "task.builtin", t["builtin"]);
    task.file = resolve(base_dir, get<std::string>(t, "task", "file", "", "a path"));
    task.n = get_count(t, "task", "n", task.n);
    if (task.n == 0 || task.n > 12) fail("task.n", t["n"], "must be between 1 and 12");
    task.x_size = get_count(t, "task", "x_size", task.x_size);
    task.y_size = get_count(t, "task", "y_size", task.y_size);
    task.z_size = get_count(t, "task", "z_size", task.z_size);
    if (task.x_size == 0 || task.y_size == 0 || task.z_size < 2) {
      fail("task", t, "x_size and y_size must be positive and z_size at least 2");
    }
    task.distribution = get<std::string>(t, "task", "distribution", task.distribution, "a distribution name");
    one_of(task.distribution, {"uniform", "correlated", "product-random"}, "task.distribution", t["distribution"]);
    task.offdiag_mass = get<double>(t, "task", "offdiag_mass", task.offdiag_mass, "a number");
    if (!(task.offdiag_mass >= 0.0 && task.offdiag_mass <= 1.0)) {
      fail("task.offdiag_mass", t["offdiag_mass"], "must lie in [0, 1]");
    }
  }

  if (const auto p = root["protocol"]) {
    require_keys(p, "protocol", {"source", "file", "code_length", "min_relative_distance", "message_qubits",
                                 "entangled", "shared_qubits", "residual_qubits", "epsilon_target",
                                 "decoder_candidates", "retry_budget"});
    auto& pr = c.protocol;
    pr.source = get<std::string>(p, "protocol", "source", pr.source, "a protocol source");
    one_of(pr.source, {"fingerprint", "random", "file"}, "protocol.source", p["source"]);
    pr.file = resolve(base_dir, get<std::string>(p, "protocol", "file", "", "a path"));
    if (pr.source == "file" && pr.file.empty()) fail("protocol.file", p, "required when source is 'file'");
    pr.code_length = get_count(p, "protocol", "code_length", pr.code_length);
    pr.min_relative_distance = get<double>(p, "protocol", "min_relative_distance", pr.min_relative_distance, "a number");
    pr.message_qubits = get_count(p, "protocol", "message_qubits", pr.message_qubits);
    if (pr.message_qubits == 0 || pr.message_qubits > 4) {
      fail("protocol.message_qubits", p["message_qubits"], "must be between 1 and 4");
    }
    pr.entangled = get<bool>(p, "protocol", "entangled", pr.entangled, "true or false");
    pr.shared_qubits = get_count(p, "protocol", "shared_qubits", pr.shared_qubits);
    pr.residual_qubits = get_count(p, "protocol", "residual_qubits", pr.residual_qubits);
    pr.epsilon_target = get<double>(p, "protocol", "epsilon_target", pr.epsilon_target, "a number");
    pr.decoder_candidates = get_count(p, "protocol", "decoder_candidates", pr.decoder_candidates);
    pr.retry_budget = get_count(p, "protocol", "retry_budget", pr.retry_budget);
    if (pr.decoder_candidates == 0 || pr.retry_budget == 0) {
      fail("protocol", p, "decoder_candidates and retry_budget must be positive");
    }
  }

  if (const auto q = root["parameters"]) {
    require_keys(q, "parameters", {"eta", "epsilon", "mode", "compression", "trials", "purify"});
    auto& par = c.parameters;
    par.eta = get<double>(q, "parameters", "eta", par.eta, "a number");
    if (!(par.eta > 0.0 && par.eta < 1.0)) fail("parameters.eta", q["eta"], "must lie in (0, 1)");
    par.epsilon = get<double>(q, "parameters", "epsilon", par.epsilon, "a number");
    if (const auto modes = get_list(q, "parameters", "mode"); !modes.empty()) {
      par.modes.clear();
      for (const auto& m : modes) {
        one_of(m, {"average", "worst-case-y"}, "parameters.mode", q["mode"]);
        par.modes.push_back(error_mode_from_string(m));
      }
    }
    if (const auto comp = get_list(q, "parameters", "compression"); !comp.empty()) {
      par.compression.clear();
      for (const auto& m : comp) {
        one_of(m, {"none", "per-snapshot"}, "parameters.compression", q["compression"]);
        par.compression.push_back(theorem2_compression_from_string(m));
      }
    }
    par.trials = get_count(q, "parameters", "trials", par.trials);
    if (par.trials == 0) fail("parameters.trials", q["trials"], "must be at least 1");
    par.purify = get<bool>(q, "parameters", "purify", par.purify, "true or false");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::configuration, "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(ss.str(), dir.empty() ? "." : dir.string());
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json modes = nlohmann::json::array(), comp = nlohmann::json::array();
  for (auto m : c.parameters.modes) modes.push_back(to_string(m));
  for (auto m : c.parameters.compression) comp.push_back(to_string(m));
  nlohmann::json task{{"builtin", c.task.builtin}, {"file", c.task.file}, {"n", c.task.n},
                      {"x_size", c.task.x_size}, {"y_size", c.task.y_size}, {"z_size", c.task.z_size},
                      {"distribution", c.task.distribution}, {"offdiag_mass", c.task.offdiag_mass}};
  const auto& p = c.protocol;
  nlohmann::json protocol{{"source", p.source}, {"file", p.file}, {"code_length", p.code_length},
                          {"min_relative_distance", p.min_relative_distance},
                          {"message_qubits", p.message_qubits}, {"entangled", p.entangled},
                          {"shared_qubits", p.shared_qubits}, {"residual_qubits", p.residual_qubits},
                          {"epsilon_target", p.epsilon_target}, {"decoder_candidates", p.decoder_candidates},
                          {"retry_budget", p.retry_budget}};
  nlohmann::json params{{"eta", c.parameters.eta}, {"epsilon", c.parameters.epsilon}, {"mode", modes},
                        {"compression", comp}, {"trials", c.parameters.trials}, {"purify", c.parameters.purify}};
  return {{"seed", c.seed}, {"pipeline", to_string(c.pipeline)}, {"suite", c.suite},
          {"instances", c.instances}, {"task", task}, {"protocol", protocol}, {"parameters", params}};
}

}  // namespace oneway::app
