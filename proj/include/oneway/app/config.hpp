#pragma once

// Experiment configuration (YAML).
//
//   seed: 42
//   pipeline: theorem2            # theorem1 | theorem2 | primitives-suite
//   suite: all                    # primitives-suite only
//   instances: 1
//   task:
//     builtin: equality           # equality | random; or `file: task.json`
//     n: 3
//     distribution: correlated    # uniform | correlated | product-random
//     offdiag_mass: 0.1
//   protocol:
//     source: fingerprint         # fingerprint | random | file
//     code_length: 4
//     min_relative_distance: 0.5
//   parameters:
//     eta: 0.1
//     compression: [none, per-snapshot]
//     trials: 10000

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "oneway/comm.hpp"
#include "oneway/convert.hpp"

namespace oneway::app {

enum class Pipeline { theorem1, theorem2, primitives_suite };
const char* to_string(Pipeline p) noexcept;

struct TaskConfig {
  std::string builtin = "equality";  // equality | random
  std::string file;
  std::size_t n = 3;
  std::size_t x_size = 4;
  std::size_t y_size = 4;
  std::size_t z_size = 2;
  std::string distribution = "uniform";  // uniform | correlated | product-random
  double offdiag_mass = 0.1;
};

struct ProtocolConfig {
  std::string source = "fingerprint";  // fingerprint | random | file
  std::string file;
  std::size_t code_length = 4;
  double min_relative_distance = 0.5;
  std::size_t message_qubits = 1;
  bool entangled = false;
  std::size_t shared_qubits = 1;
  std::size_t residual_qubits = 1;
  /// Negative → 1 − 1/d.
  double epsilon_target = -1.0;
  std::size_t decoder_candidates = 32;
  std::size_t retry_budget = 200;
};

struct ParameterConfig {
  double eta = 0.05;
  /// Negative → measured.
  double epsilon = -1.0;
  std::vector<ErrorMode> modes{ErrorMode::average};
  std::vector<Theorem2Compression> compression{Theorem2Compression::none};
  std::size_t trials = 100000;
  bool purify = false;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  Pipeline pipeline = Pipeline::theorem1;
  std::string suite = "all";
  std::size_t instances = 1;
  TaskConfig task;
  ProtocolConfig protocol;
  ParameterConfig parameters;
  /// Directory of the config file; relative task/protocol paths resolve against it.
  std::string base_dir;
};

/// Parses and validates. Errors are Errc::configuration (or parse) with the
/// field path and line number in the message.
ExperimentConfig parse_config(const std::string& text, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

/// Resolved configuration as written into reports.
nlohmann::json to_json(const ExperimentConfig& c);

}  // namespace oneway::app
