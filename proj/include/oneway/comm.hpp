#pragma once

// Tasks (partial functions with input distributions) and one-way protocols,
// with exact and Monte Carlo error evaluation.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "oneway/qcore.hpp"
#include "oneway/rng.hpp"

namespace oneway {

/// Table value for "undefined" cells.
inline constexpr int kBottom = -1;

class PartialFunction {
 public:
  /// `table` is row-major over x: entry x * y_size + y.
  PartialFunction(std::size_t x_size, std::size_t y_size, std::size_t z_size, std::vector<int> table);

  /// EQUALITY on {0,1}^bits: f(x,y) = 1 iff x == y.
  static PartialFunction equality(std::size_t bits);

  std::size_t x_size() const noexcept { return x_size_; }
  std::size_t y_size() const noexcept { return y_size_; }
  std::size_t z_size() const noexcept { return z_size_; }
  int operator()(std::size_t x, std::size_t y) const { return table_[x * y_size_ + y]; }
  bool defined(std::size_t x, std::size_t y) const { return (*this)(x, y) != kBottom; }
  const std::vector<int>& table() const noexcept { return table_; }
  /// S^y_z = {x : f(x,y) = z}, ascending.
  std::vector<std::size_t> preimage(std::size_t y, int z) const;
  bool is_total() const;
  PartialFunction with_cell(std::size_t x, std::size_t y, int value) const;

  bool operator==(const PartialFunction&) const = default;

 private:
  std::size_t x_size_;
  std::size_t y_size_;
  std::size_t z_size_;
  std::vector<int> table_;
};

/// μ over X × Y with cached marginals. The product flag is set when μ factors
/// as μ_X ⊗ μ_Y within 1e-12.
class InputDistribution {
 public:
  static constexpr double kTolerance = 1e-12;

  /// Row-major weights over x (entry x * y_size + y); must sum to 1 within 1e-12.
  InputDistribution(std::size_t x_size, std::size_t y_size, std::vector<double> weights);

  static InputDistribution product(std::span<const double> mu_x, std::span<const double> mu_y);
  static InputDistribution uniform(std::size_t x_size, std::size_t y_size);

  std::size_t x_size() const noexcept { return x_size_; }
  std::size_t y_size() const noexcept { return y_size_; }
  double operator()(std::size_t x, std::size_t y) const { return weights_[x * y_size_ + y]; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<double>& marginal_x() const noexcept { return marginal_x_; }
  const std::vector<double>& marginal_y() const noexcept { return marginal_y_; }
  bool is_product() const noexcept { return product_; }

  /// Throws Errc::precondition when μ puts weight on a ⊥ cell or sizes differ.
  void require_supported_on(const PartialFunction& f) const;

  bool operator==(const InputDistribution&) const = default;

 private:
  std::size_t x_size_;
  std::size_t y_size_;
  std::vector<double> weights_;
  std::vector<double> marginal_x_;
  std::vector<double> marginal_y_;
  bool product_ = false;
};

/// Column sparsity max_y min(|S^y_0|, |S^y_1|). Binary z only.
std::size_t column_sparsity(const PartialFunction& f);

// ---------------------------------------------------------------------------
// Quantum protocols

/// Shared pure state on A ⊗ B; Alice holds A, Bob holds B.
struct SharedEntanglement {
  PureState state;
  std::size_t dim_a;
  std::size_t dim_b;
};

/// One-way quantum protocol. Without entanglement Alice sends a pure state
/// |ψ^x⟩ on D. With entanglement she applies an isometry U^x : A → A′ ⊗ D to her
/// half of the shared state and sends D. Bob measures Q = D ⊗ B with the POVM
/// {E^y_z} whose labels are exactly 0..z_size-1.
class QuantumOneWayProtocol {
 public:
  static QuantumOneWayProtocol unentangled(std::vector<PureState> encoders,
                                           std::vector<Povm> decoders, std::size_t z_size);
  /// `isometries[x]` maps dim_a → residual_dim * message_dim (A′ first, D second).
  static QuantumOneWayProtocol entangled(SharedEntanglement shared,
                                         std::vector<ComplexMatrix> isometries,
                                         std::size_t residual_dim, std::size_t message_dim,
                                         std::vector<Povm> decoders, std::size_t z_size);

  std::size_t x_size() const noexcept { return message_states_.size(); }
  std::size_t y_size() const noexcept { return decoders_.size(); }
  std::size_t z_size() const noexcept { return z_size_; }
  /// |D|.
  std::size_t message_dim() const noexcept { return message_dim_; }
  /// |Q| = |D| · |B|.
  std::size_t register_dim() const noexcept { return message_states_.front().dim(); }
  /// a = log2 |D|.
  double message_qubits() const;
  bool is_entangled() const noexcept { return shared_.has_value(); }
  /// True when each message already carries its canonical purification, so the
  /// transmitted register is twice the size of the underlying message.
  bool includes_purification() const noexcept { return includes_purification_; }

  /// ρ^x_Q.
  const DensityOperator& message_state(std::size_t x) const { return message_states_.at(x); }
  /// |ψ^x⟩ for unentangled protocols; nullopt otherwise.
  const std::optional<PureState>& pure_message(std::size_t x) const { return pure_messages_.at(x); }
  const Povm& decoder(std::size_t y) const { return decoders_.at(y); }
  const std::optional<SharedEntanglement>& shared() const noexcept { return shared_; }
  const std::vector<ComplexMatrix>& isometries() const noexcept { return isometries_; }
  std::size_t residual_dim() const noexcept { return residual_dim_; }

  /// Pr(Bob outputs z | x, y) = Tr(E^y_z ρ^x_Q), indexed by z.
  std::vector<double> outcome_distribution(std::size_t x, std::size_t y) const;
  bool decoders_projective() const;

  /// Free-form provenance (e.g. "fingerprint", "random") and recorded figures.
  std::string origin;
  nlohmann::json metadata = nlohmann::json::object();

 private:
  QuantumOneWayProtocol() = default;
  void validate_decoders() const;

  std::optional<SharedEntanglement> shared_;
  std::vector<ComplexMatrix> isometries_;
  std::size_t residual_dim_ = 1;
  std::size_t message_dim_ = 0;
  std::size_t z_size_ = 0;
  bool includes_purification_ = false;
  std::vector<std::optional<PureState>> pure_messages_;
  std::vector<DensityOperator> message_states_;
  std::vector<Povm> decoders_;

  friend QuantumOneWayProtocol with_canonical_purification(const QuantumOneWayProtocol&);
  friend QuantumOneWayProtocol dilate_decoders(const QuantumOneWayProtocol&);
};

/// Replaces each message |ψ^x⟩ by its canonical purification |ψ^x⟩|ψ̄^x⟩ and
/// each decoder element E by E ⊗ I. Unentangled protocols only.
QuantumOneWayProtocol with_canonical_purification(const QuantumOneWayProtocol& qp);

/// Makes every decoder projective by Naimark dilation: Alice appends an ancilla
/// of dimension z_size in |0⟩, Bob measures the dilated projectors.
/// Unentangled protocols only; already-projective protocols are returned as is.
QuantumOneWayProtocol dilate_decoders(const QuantumOneWayProtocol& qp);

// ---------------------------------------------------------------------------
// Classical protocols

/// Public random string shared by Alice and Bob, addressed by a 64-bit key.
/// word(i) is a deterministic function of (key, i), so either party can read
/// any position without generating the ones before it.
struct PublicCoins {
  std::uint64_t key = 0;

  std::uint64_t word(std::uint64_t i) const noexcept { return mix64(key ^ mix64(i)); }
  double uniform(std::uint64_t i) const noexcept { return bits_to_unit(word(i)); }
};

/// A message as a sequence of symbols plus its length in bits.
struct Message {
  std::vector<std::uint32_t> symbols;
  std::size_t bits = 0;

  bool operator==(const Message&) const = default;
};

struct Transcript {
  Message message;
  int output = 0;
};

/// One-way public-coin protocol. Bob's side only sees (message, coins, y), which
/// keeps the output Markov in (R, M) given x.
class ClassicalOneWayProtocol {
 public:
  virtual ~ClassicalOneWayProtocol() = default;

  virtual std::size_t x_size() const = 0;
  virtual std::size_t y_size() const = 0;
  virtual std::size_t z_size() const = 0;
  /// Declared maximum message length ℓ in bits.
  virtual std::size_t max_message_bits() const = 0;

  /// Draws the public randomness R. Reads only `rng`, never the inputs.
  virtual PublicCoins draw_coins(Rng& rng) const { return PublicCoins{rng()}; }
  /// Alice: message from (x, R) and private randomness.
  virtual Message send(std::size_t x, const PublicCoins& coins, Rng& private_rng) const = 0;
  /// Bob: output from (message, R, y).
  virtual int receive(const Message& message, const PublicCoins& coins, std::size_t y) const = 0;

  /// Exact Pr(output = z | x, y). Protocols whose randomness cannot be
  /// enumerated or integrated analytically throw Errc::unsupported_exact.
  virtual bool supports_exact() const { return false; }
  virtual std::vector<double> output_distribution(std::size_t x, std::size_t y) const;

  Transcript execute(std::size_t x, std::size_t y, Rng& rng) const;
};

/// Classical protocol with a finite, enumerable shared randomness R.
class EnumerableProtocol final : public ClassicalOneWayProtocol {
 public:
  using MessageFn = std::function<Message(std::size_t x, std::size_t r)>;
  using OutputFn = std::function<int(const Message&, std::size_t r, std::size_t y)>;

  EnumerableProtocol(std::size_t x_size, std::size_t y_size, std::size_t z_size,
                     std::vector<double> r_weights, std::size_t max_bits, MessageFn message,
                     OutputFn output);

  std::size_t x_size() const override { return x_size_; }
  std::size_t y_size() const override { return y_size_; }
  std::size_t z_size() const override { return z_size_; }
  std::size_t max_message_bits() const override { return max_bits_; }
  const std::vector<double>& r_weights() const noexcept { return r_weights_; }

  PublicCoins draw_coins(Rng& rng) const override;
  Message send(std::size_t x, const PublicCoins& coins, Rng& private_rng) const override;
  int receive(const Message& message, const PublicCoins& coins, std::size_t y) const override;
  bool supports_exact() const override { return true; }
  std::vector<double> output_distribution(std::size_t x, std::size_t y) const override;

 private:
  std::size_t x_size_, y_size_, z_size_;
  std::vector<double> r_weights_;
  AliasSampler r_sampler_;
  std::size_t max_bits_;
  MessageFn message_;
  OutputFn output_;
};

/// Bob outputs f(x, y) from an x-sized message (⊥ cells output 0).
EnumerableProtocol make_oracle_protocol(const PartialFunction& f);
/// Bob outputs a uniformly random z from shared randomness; no message.
EnumerableProtocol make_uniform_guess_protocol(std::size_t x_size, std::size_t y_size,
                                               std::size_t z_size);
/// Classical fingerprint for EQUALITY on {0,1}^bits: R is `repetitions` random
/// vectors r_k, Alice sends ⟨x, r_k⟩ mod 2, Bob accepts iff every bit matches
/// ⟨y, r_k⟩. False-accept probability 2^-repetitions.
std::unique_ptr<ClassicalOneWayProtocol> make_inner_product_equality_protocol(
    std::size_t bits, std::size_t repetitions);

// ---------------------------------------------------------------------------
// Error evaluation

enum class ErrorMode { average, worst_case_y };

const char* to_string(ErrorMode mode) noexcept;
ErrorMode error_mode_from_string(const std::string& s);

struct ExactMethod {};
struct MonteCarloMethod {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};
using EvalMethod = std::variant<ExactMethod, MonteCarloMethod>;

struct ErrorEstimate {
  double value = 0.0;
  /// √(p̂(1−p̂)/trials) for Monte Carlo; 0 for exact.
  double standard_error = 0.0;
  std::size_t trials = 0;
  /// y attaining the maximum in worst-case-y mode.
  std::size_t worst_y = 0;
};

/// err_{x,y} = Pr(P(x,y) ≠ f(x,y)) for every cell (0 on ⊥ cells), row-major.
std::vector<double> cell_errors(const QuantumOneWayProtocol& qp, const PartialFunction& f);

/// Exact error of a quantum protocol (outcome distributions by traces).
ErrorEstimate eval_err(const QuantumOneWayProtocol& qp, const PartialFunction& f,
                       const InputDistribution& mu, ErrorMode mode);

/// Error of a classical protocol, exactly or by Monte Carlo. Monte Carlo runs in
/// fixed chunks seeded from (seed, chunk), so results do not depend on threads.
/// In worst-case-y mode every y receives `trials` trials.
ErrorEstimate eval_err(const ClassicalOneWayProtocol& p, const PartialFunction& f,
                       const InputDistribution& mu, ErrorMode mode, const EvalMethod& method);

/// Aggregates per-cell errors with μ in the requested mode.
double aggregate_error(std::span<const double> cell_err, const InputDistribution& mu,
                       ErrorMode mode, std::size_t* worst_y = nullptr);

// ---------------------------------------------------------------------------
// Protocol builders

struct FingerprintCode {
  /// Codeword length m; the message register has ⌈log2 m⌉ + 1 qubits.
  std::size_t length = 0;
  /// Required minimum relative Hamming distance of the code.
  double min_relative_distance = 0.0;
};

/// Linear binary code c : {0,1}^bits → {0,1}^m: identity columns followed by
/// greedily chosen parity columns maximizing the minimum distance.
struct LinearCode {
  std::size_t bits = 0;
  std::vector<std::uint32_t> columns;  // c_i(x) = popcount(x & columns[i]) mod 2

  std::size_t length() const noexcept { return columns.size(); }
  std::uint32_t encode_bit(std::uint32_t x, std::size_t i) const;
  std::size_t min_distance() const;
};
LinearCode greedy_linear_code(std::size_t bits, std::size_t length);

/// Quantum fingerprinting for EQUALITY on {0,1}^bits with states
/// (1/√m) Σ_i |i⟩|c_i(x)⟩ and decoders {I − |φ_y⟩⟨φ_y|, |φ_y⟩⟨φ_y|} (labels 0, 1).
QuantumOneWayProtocol make_fingerprint_protocol(std::size_t bits, const FingerprintCode& code);

struct RandomProtocolShape {
  std::size_t message_dim = 2;
  /// 0 → unentangled. Otherwise the shared state lives on dim_a ⊗ dim_b.
  std::size_t shared_dim_a = 0;
  std::size_t shared_dim_b = 0;
  /// |A′| for entangled encoders (isometry A → A′ ⊗ D).
  std::size_t residual_dim = 1;
  /// Random projective decoders tried per y; the best is kept.
  std::size_t decoder_candidates = 32;
  std::size_t retry_budget = 200;
};

/// Random pure-state (or entangled) encoders with random projective decoders,
/// resampled until the exact error in `mode` is ≤ target_epsilon.
/// Throws GenerationFailed with the best error found when the budget runs out.
QuantumOneWayProtocol make_random_protocol(const PartialFunction& f, const InputDistribution& mu,
                                           const RandomProtocolShape& shape, double target_epsilon,
                                           ErrorMode mode, Rng& rng);

// ---------------------------------------------------------------------------
// File formats (JSON)
//
// task:     {"x_size", "y_size", "z_size", "table": [[...] per x], "weights": [[...] per x]}
//           with ⊥ encoded as -1.
// protocol: {"kind": "unentangled", "z_size", "encoders": [vector...], "decoders": [povm...]}
//           or {"kind": "entangled", "z_size", "shared": {"dim_a", "dim_b", "state"},
//               "residual_dim", "message_dim", "isometries": [matrix...], "decoders": [...]}

struct Task {
  PartialFunction f;
  InputDistribution mu;
};

nlohmann::json task_to_json(const PartialFunction& f, const InputDistribution& mu);
Task task_from_json(const nlohmann::json& j);
nlohmann::json protocol_to_json(const QuantumOneWayProtocol& qp);
QuantumOneWayProtocol protocol_from_json(const nlohmann::json& j);

}  // namespace oneway
