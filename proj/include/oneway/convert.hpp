#pragma once

// Quantum-to-classical conversion of one-way protocols.
//
// Theorem 1 route (product μ): Alice measures the x-labeled pretty good
// measurement on her own message state, compresses the outcome with shared
// randomness, and Bob outputs f(c′, y).
//
// Theorem 2 route (any μ, binary f): Alice sends classical shadows of her pure
// message state; Bob estimates the weight on a low-rank "tilde" projector and
// thresholds at 1/2.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "oneway/comm.hpp"
#include "oneway/oneshot.hpp"
#include "oneway/shadows.hpp"

namespace oneway {

/// One bound comparison: passes when measured ≤ bound + tolerance.
struct BoundCheck {
  std::string name;
  double bound = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  static BoundCheck at_most(std::string name, double measured, double bound, double tolerance);
  /// Passes when measured ≥ bound − tolerance (stored with the same fields).
  static BoundCheck at_least(std::string name, double measured, double bound, double tolerance);
  bool operator==(const BoundCheck&) const = default;
};

// ---------------------------------------------------------------------------
// Theorem 1

/// 2ε − dε²/(d − 1) + η.
double theorem1_bound(double epsilon, std::size_t d, double eta);

struct Theorem1Report {
  ErrorMode mode = ErrorMode::average;
  bool entangled = false;
  std::size_t d = 2;
  double message_qubits = 0.0;
  /// Measured error of the quantum protocol.
  double epsilon = 0.0;
  double eta = 0.0;
  /// ε ≤ 1 − 1/d; outside it the bound is vacuous.
  bool epsilon_in_range = true;
  /// Error when Bob receives the PGM outcome c exactly.
  double pgm_stage_error = 0.0;
  /// Exact error of the compressed classical protocol.
  double exact_error = 0.0;
  double imax = 0.0;
  /// 2a with entanglement, a without.
  double imax_budget = 0.0;
  std::size_t candidates = 0;
  std::size_t message_bits = 0;
  /// budget + ⌈log2 ln(1/η)⌉ + 2.
  double length_bound = 0.0;
  double bound = 0.0;
  double split_deviation = 0.0;
  /// Filled by evaluate_theorem1.
  double final_error = 0.0;
  double final_standard_error = 0.0;
  std::size_t trials = 0;
  std::vector<BoundCheck> checks;

  bool all_pass() const;
};

/// Classical protocol produced by theorem1_convert. Exact output probabilities
/// are available in closed form over the shared randomness.
class Theorem1Protocol final : public ClassicalOneWayProtocol {
 public:
  Theorem1Protocol(PartialFunction f, const ClassicalJoint& channel, CompressionPlan plan);

  std::size_t x_size() const override { return f_.x_size(); }
  std::size_t y_size() const override { return f_.y_size(); }
  std::size_t z_size() const override { return f_.z_size(); }
  std::size_t max_message_bits() const override { return plan_.message_bits; }
  Message send(std::size_t x, const PublicCoins& coins, Rng& private_rng) const override;
  int receive(const Message& message, const PublicCoins& coins, std::size_t y) const override;
  bool supports_exact() const override { return true; }
  std::vector<double> output_distribution(std::size_t x, std::size_t y) const override;

  const CompressionPlan& plan() const noexcept { return plan_; }
  /// p(c|x) of the PGM channel (empty rows for μ_X(x) = 0).
  const ClassicalJoint& channel() const noexcept { return channel_; }

 private:
  PartialFunction f_;
  ClassicalJoint channel_;
  CompressionPlan plan_;
  CompressionEncoder encoder_;
  CompressionDecoder decoder_;
};

struct Theorem1Result {
  std::unique_ptr<Theorem1Protocol> protocol;
  Theorem1Report report;
};

/// max_{y,z} ‖A^{-1/2}A^y_z A^{-1/2} − Σ_{x∈S^y_z} A^{-1/2}A_x A^{-1/2}‖_F, where
/// A^y_z = Σ_{x∈S^y_z} μ_X(x) ρ^x. Columns with μ_Y(y) = 0 and empty classes are skipped.
double pgm_split_check(const QuantumOneWayProtocol& qp, const PartialFunction& f,
                       const InputDistribution& mu);

/// Throws Errc::precondition for non-product μ.
Theorem1Result theorem1_convert(const QuantumOneWayProtocol& qp, const PartialFunction& f,
                                const InputDistribution& mu, double eta, ErrorMode mode);

/// Monte Carlo evaluation of the converted protocol; fills the measured fields
/// and the check list (final error with a 4·SE tolerance).
void evaluate_theorem1(Theorem1Result& result, const PartialFunction& f,
                       const InputDistribution& mu, std::size_t trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Theorem 2

struct TildeColumn {
  /// The smaller class (ties → 0).
  int b = 0;
  std::size_t class_size[2] = {0, 0};
  ComplexMatrix projector[2];
  std::size_t rank[2] = {0, 0};
};

/// Ẽ^y_b = Proj(span{E^y_b|ψ^x⟩ : x ∈ S^y_b}) for every y. Requires projective
/// decoders and pure messages; asserts Ẽ ≤ E, equal weights on the class and
/// rank ≤ class size.
std::vector<TildeColumn> build_tilde_projectors(const QuantumOneWayProtocol& qp,
                                                const PartialFunction& f);

enum class Theorem2Compression { none, per_snapshot };
const char* to_string(Theorem2Compression c) noexcept;
Theorem2Compression theorem2_compression_from_string(const std::string& s);

struct Theorem2Options {
  double eta = 0.1;
  /// Negative → use the measured error of the input protocol.
  double epsilon_declared = -1.0;
  Theorem2Compression compression = Theorem2Compression::none;
  /// Attach the canonical purification to each message before shadowing.
  bool purify = false;
};

struct Theorem2Report {
  Theorem2Compression compression = Theorem2Compression::none;
  double eta = 0.0;
  double epsilon_declared = 0.0;
  double epsilon_measured = 0.0;
  double precondition_value = 0.0;
  std::size_t column_sparsity = 0;
  /// max_y min(rank Ẽ^y_0, rank Ẽ^y_1).
  std::size_t k = 0;
  /// max_y rank Ẽ^y_{b_y}: the ‖·‖_F² entering the shadow budget.
  std::size_t estimated_rank = 0;
  std::vector<int> b;
  std::size_t register_qubits = 0;
  bool includes_purification = false;
  bool dilated = false;
  std::size_t group_size = 0;
  std::size_t groups = 0;
  std::size_t snapshots = 0;
  /// CS(f) · a / η³ with a the register qubits.
  double complexity_formula = 0.0;
  double good_set_mass = 0.0;
  /// Mode none: T⌈log2 |stab|⌉, with bound T(2n² + 3n) and information bound T·n.
  std::size_t raw_message_bits = 0;
  double raw_length_bound = 0.0;
  double information_bound = 0.0;
  /// Mode per-snapshot.
  double snapshot_eta = 0.0;
  double snapshot_imax = 0.0;
  std::size_t snapshot_candidates = 0;
  std::size_t snapshot_message_bits = 0;
  std::size_t message_bits = 0;
  double message_length_bound = 0.0;
  /// Filled by evaluate_theorem2.
  double p1_error = 0.0;
  double p1_standard_error = 0.0;
  double final_error = 0.0;
  double final_standard_error = 0.0;
  std::size_t trials = 0;
  std::vector<BoundCheck> checks;

  bool all_pass() const;
};

/// Shadow protocol P1 (mode none) or its per-snapshot compressed variant.
class Theorem2Protocol final : public ClassicalOneWayProtocol {
 public:
  Theorem2Protocol(const QuantumOneWayProtocol& qp, const std::vector<TildeColumn>& tilde,
                   std::size_t group_size, std::size_t groups,
                   std::optional<CompressionPlan> snapshot_plan);

  std::size_t x_size() const override { return samplers_.size(); }
  std::size_t y_size() const override { return estimators_.size(); }
  std::size_t z_size() const override { return 2; }
  std::size_t max_message_bits() const override;
  Message send(std::size_t x, const PublicCoins& coins, Rng& private_rng) const override;
  int receive(const Message& message, const PublicCoins& coins, std::size_t y) const override;

  std::size_t snapshots() const noexcept { return group_size_ * groups_; }
  /// Bob's median-of-means estimate of Tr(ψ^x Ẽ^y_{b_y}) from a shadow.
  double estimate(std::span<const std::uint32_t> indices, std::size_t y) const;

 private:
  PublicCoins snapshot_coins(const PublicCoins& coins, std::size_t t) const;

  std::shared_ptr<const StabilizerTable> table_;
  std::vector<SnapshotSampler> samplers_;
  std::vector<SnapshotEstimator> estimators_;
  std::vector<int> b_;
  std::size_t group_size_;
  std::size_t groups_;
  std::optional<CompressionPlan> plan_;
  std::optional<CompressionEncoder> encoder_;
  std::optional<CompressionDecoder> decoder_;
};

struct Theorem2Result {
  std::unique_ptr<Theorem2Protocol> protocol;
  Theorem2Report report;
};

/// Throws Errc::precondition when ε_declared/η + η ≥ 1/2 or the measured error
/// exceeds ε_declared, and Errc::unsupported_size for registers over four qubits.
Theorem2Result theorem2_convert(const QuantumOneWayProtocol& qp, const PartialFunction& f,
                                const InputDistribution& mu, const Theorem2Options& options);

/// Monte Carlo error of the converted protocol under μ (average mode); fills the
/// checks (P1 ≤ 2η or final ≤ 3η with a 3·SE tolerance, K = CS, length bounds).
void evaluate_theorem2(Theorem2Result& result, const PartialFunction& f,
                       const InputDistribution& mu, std::size_t trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json to_json(const BoundCheck& c);
BoundCheck bound_check_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Theorem1Report& r);
nlohmann::json to_json(const Theorem2Report& r);

}  // namespace oneway
