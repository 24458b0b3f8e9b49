#pragma once

// Exact classical shadows for up to four qubits: stabilizer-state enumeration,
// snapshot sampling, single-snapshot estimates and median of means.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "oneway/qcore.hpp"
#include "oneway/rng.hpp"

namespace oneway {

inline constexpr std::size_t kMaxShadowQubits = 4;

/// All n-qubit stabilizer states, ordered by a canonical amplitude key so the
/// index of a state is stable across runs.
class StabilizerTable {
 public:
  std::size_t qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_; }
  std::size_t size() const noexcept { return states_.size(); }
  const ComplexVector& state(std::size_t i) const { return states_.at(i); }
  /// FNV-1a over the sorted canonical keys.
  std::uint64_t checksum() const noexcept { return checksum_; }
  /// Bits needed to write one index: ⌈log2 size⌉.
  std::size_t index_bits() const;

  /// ⟨s|A|s⟩ for every s (real part), in index order.
  std::vector<double> diagonal(const ComplexMatrix& a) const;

 private:
  friend std::shared_ptr<const StabilizerTable> build_stabilizer_table(std::size_t n);
  std::size_t n_ = 0;
  std::vector<ComplexVector> states_;
  std::uint64_t checksum_ = 0;
};

/// 2^n Π_{i=1..n} (2^i + 1).
std::size_t stabilizer_count(std::size_t n);

/// Builds the table by closing {|0…0⟩} under H, S and CNOT. Throws
/// Errc::unsupported_size for n > 4.
std::shared_ptr<const StabilizerTable> build_stabilizer_table(std::size_t n);
/// Cached per n; safe to call from several threads.
std::shared_ptr<const StabilizerTable> stabilizer_table(std::size_t n);

struct ShadowSample {
  std::size_t qubits = 0;
  std::vector<std::uint32_t> indices;

  std::size_t size() const noexcept { return indices.size(); }
  bool operator==(const ShadowSample&) const = default;
};

/// Pr(s) = |⟨s|ψ⟩|² · 2^n / |table|, the outcome law of a uniformly random
/// Clifford followed by a computational-basis measurement.
std::vector<double> snapshot_distribution(const StabilizerTable& table, const PureState& psi);

/// Draws snapshot indices from a fixed distribution.
class SnapshotSampler {
 public:
  SnapshotSampler(std::shared_ptr<const StabilizerTable> table, const PureState& psi);

  const StabilizerTable& table() const noexcept { return *table_; }
  const std::vector<double>& probabilities() const noexcept { return probs_; }
  std::uint32_t operator()(Rng& rng) const { return static_cast<std::uint32_t>(alias_(rng)); }
  ShadowSample sample(std::size_t count, Rng& rng) const;

 private:
  std::shared_ptr<const StabilizerTable> table_;
  std::vector<double> probs_;
  AliasSampler alias_;
};

ShadowSample sample_shadow(const PureState& psi, std::size_t count, Rng& rng);

/// d′(A, s) = Tr(A((2^n + 1)|s⟩⟨s| − I)).
double snapshot_estimate(const StabilizerTable& table, const ComplexMatrix& a, std::size_t s);

/// Precomputed d′(A, s) for all s.
class SnapshotEstimator {
 public:
  SnapshotEstimator(const StabilizerTable& table, const ComplexMatrix& a);

  double operator()(std::size_t s) const { return values_.at(s); }
  const std::vector<double>& values() const noexcept { return values_; }
  /// d(A, S): median of K group means of d′ over the sample.
  double estimate(const ShadowSample& sample, std::size_t groups) const;

 private:
  std::vector<double> values_;
};

/// Median of `groups` contiguous group means; a trailing remainder is dropped
/// and even group counts take the lower median.
double median_of_means(std::span<const double> values, std::size_t groups);

struct ShadowBudget {
  std::size_t group_size = 0;
  std::size_t groups = 0;
  std::size_t total() const noexcept { return group_size * groups; }
};

/// group_size = ⌈32 · frobenius_sq / ε²⌉, groups = ⌈8 ln(1/δ)⌉.
ShadowBudget shadow_budget(double frobenius_sq, double epsilon, double delta);

/// Text format: "oneway-shadow 1\n<n> <T> <checksum hex>\n" followed by T indices.
void write_shadow(std::ostream& os, const ShadowSample& sample);
/// Throws Errc::parse on malformed input or a checksum that does not match the
/// local table.
ShadowSample read_shadow(std::istream& is);

}  // namespace oneway
