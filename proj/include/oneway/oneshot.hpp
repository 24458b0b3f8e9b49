#pragma once

// One-shot information measures and shared-randomness message compression.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oneway/comm.hpp"
#include "oneway/qcore.hpp"
#include "oneway/rng.hpp"

namespace oneway {

/// D_max(ρ‖σ) in bits. Throws Errc::infinite_dmax when supp ρ ⊄ supp σ.
double dmax(const DensityOperator& rho, const DensityOperator& sigma);

/// Joint distribution p(x, c), row-major over x.
class ClassicalJoint {
 public:
  static constexpr double kTolerance = 1e-12;

  ClassicalJoint(std::size_t x_size, std::size_t c_size, std::vector<double> p);
  /// p(x) p(c|x) from a marginal and a row-stochastic channel.
  static ClassicalJoint from_channel(std::span<const double> p_x,
                                     const std::vector<std::vector<double>>& channel);

  std::size_t x_size() const noexcept { return x_size_; }
  std::size_t c_size() const noexcept { return c_size_; }
  double operator()(std::size_t x, std::size_t c) const { return p_[x * c_size_ + c]; }
  const std::vector<double>& table() const noexcept { return p_; }
  const std::vector<double>& marginal_x() const noexcept { return px_; }
  std::vector<double> marginal_c() const;
  /// p(·|x); empty for x with p(x) = 0.
  const std::vector<double>& conditional(std::size_t x) const { return cond_.at(x); }

  /// Pushes C through a row-stochastic map C → C″ (rows indexed by c).
  ClassicalJoint post_process(const std::vector<std::vector<double>>& map) const;

 private:
  std::size_t x_size_, c_size_;
  std::vector<double> p_;
  std::vector<double> px_;
  std::vector<std::vector<double>> cond_;
};

struct ImaxResult {
  /// I_max(X:C) in bits.
  double lambda = 0.0;
  /// Minimizing reference distribution σ* over C.
  std::vector<double> sigma;
};

/// λ = log2 Σ_c max_{x: p(x)>0} p(c|x), σ*(c) ∝ max_x p(c|x).
ImaxResult imax_classical(const ClassicalJoint& j);

/// max_{x: p(x)>0, c} log2(p(c|x) / σ(c)): D_max(p_XC ‖ p_X ⊗ σ) for a
/// classical σ (+inf when σ misses part of a conditional's support).
double classical_dmax(const ClassicalJoint& j, std::span<const double> sigma);

struct CompressionPlan {
  double eta = 0.0;
  double lambda = 0.0;
  std::vector<double> sigma;
  /// N = ⌈2^λ ln(1/η)⌉ candidates.
  std::size_t candidates = 0;
  /// ℓ = ⌈log2(N + 1)⌉; message 0 signals rejection.
  std::size_t message_bits = 0;
  /// Alice's acceptance bias p(c|x) / (2^λ σ(c)), per x with p(x) > 0.
  std::vector<std::vector<double>> bias;

  /// (1 − 2^{-λ})^N.
  double rejection_probability() const;
  /// ℓ ≤ λ + log2 ln(1/η) + 2.
  double length_guarantee() const;
  bool length_guarantee_holds() const { return static_cast<double>(message_bits) <= length_guarantee(); }
};

/// Throws Errc::invalid_argument unless 0 < η < 1.
CompressionPlan build_compression_plan(const ClassicalJoint& j, double eta);

/// Shared candidate stream c_1, c_2, ... ~ σ*, read lazily from public coins.
/// Position N + 1 holds the fallback draw used on rejection.
class CandidateStream {
 public:
  explicit CandidateStream(const std::vector<double>& sigma);
  std::size_t candidate(const PublicCoins& coins, std::size_t i) const;

 private:
  AliasSampler alias_;
};

/// Alice's side: needs the plan's biases and her input.
class CompressionEncoder {
 public:
  explicit CompressionEncoder(const CompressionPlan& plan);
  /// Index of the first accepted candidate (1-based) or 0 if all N are rejected.
  std::uint32_t encode(std::size_t x, const PublicCoins& coins, Rng& private_rng) const;

 private:
  std::size_t candidates_;
  std::vector<std::vector<double>> bias_;
  CandidateStream stream_;
};

/// Bob's side. Built only from σ* and N, so it cannot read x or p(c|x).
class CompressionDecoder {
 public:
  CompressionDecoder(std::vector<double> sigma, std::size_t candidates);
  std::size_t decode(std::uint32_t message, const PublicCoins& coins) const;

 private:
  std::size_t candidates_;
  CandidateStream stream_;
};

struct CompressionRun {
  std::uint32_t message = 0;
  std::size_t bits = 0;
  std::size_t decoded = 0;
};

CompressionRun run_compression(const CompressionPlan& plan, std::size_t x, Rng& rng);

/// Pr(C′ = c | x) = (1 − q) p(c|x) + q σ*(c), q the rejection probability.
std::vector<double> compressed_conditional(const CompressionPlan& plan, const ClassicalJoint& j,
                                           std::size_t x);
/// TV(p_XC, p_XC′) computed exactly.
double compression_tv(const CompressionPlan& plan, const ClassicalJoint& j);

}  // namespace oneway
