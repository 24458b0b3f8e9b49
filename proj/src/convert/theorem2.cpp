#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "oneway/convert.hpp"
#include "oneway/error.hpp"

namespace oneway {

bool Theorem2Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

const char* to_string(Theorem2Compression c) noexcept {
  return c == Theorem2Compression::none ? "none" : "per-snapshot";
}

Theorem2Compression theorem2_compression_from_string(const std::string& s) {
  if (s == "none") return Theorem2Compression::none;
  if (s == "per-snapshot") return Theorem2Compression::per_snapshot;
  throw Error(Errc::invalid_argument, "unknown compression mode '" + s + "'");
}

Theorem2Protocol::Theorem2Protocol(const QuantumOneWayProtocol& qp,
                                   const std::vector<TildeColumn>& tilde, std::size_t group_size,
                                   std::size_t groups, std::optional<CompressionPlan> snapshot_plan)
    : group_size_(group_size), groups_(groups), plan_(std::move(snapshot_plan)) {
  const auto n = static_cast<std::size_t>(std::countr_zero(qp.register_dim()));
  table_ = stabilizer_table(n);
  for (std::size_t x = 0; x < qp.x_size(); ++x) samplers_.emplace_back(table_, *qp.pure_message(x));
  for (const auto& col : tilde) {
    estimators_.emplace_back(*table_, col.projector[col.b]);
    b_.push_back(col.b);
  }
  if (plan_) {
    encoder_.emplace(*plan_);
    decoder_.emplace(plan_->sigma, plan_->candidates);
  }
}

std::size_t Theorem2Protocol::max_message_bits() const {
  return snapshots() * (plan_ ? plan_->message_bits : table_->index_bits());
}

PublicCoins Theorem2Protocol::snapshot_coins(const PublicCoins& coins, std::size_t t) const {
  return PublicCoins{mix64(coins.key ^ mix64(0x5eed0000ULL + t))};
}

Message Theorem2Protocol::send(std::size_t x, const PublicCoins& coins, Rng& private_rng) const {
  Message m;
  m.symbols.resize(snapshots());
  if (plan_) {
    // Each snapshot goes through its own run of the compression protocol, which
    // simulates the channel x → s directly.
    for (std::size_t t = 0; t < snapshots(); ++t) {
      m.symbols[t] = encoder_->encode(x, snapshot_coins(coins, t), private_rng);
    }
    m.bits = snapshots() * plan_->message_bits;
  } else {
    const auto& sampler = samplers_.at(x);
    for (std::size_t t = 0; t < snapshots(); ++t) m.symbols[t] = sampler(private_rng);
    m.bits = snapshots() * table_->index_bits();
  }
  return m;
}

int Theorem2Protocol::receive(const Message& message, const PublicCoins& coins, std::size_t y) const {
  if (message.symbols.size() != snapshots()) throw Error(Errc::invalid_argument, "wrong snapshot count");
  double value = 0.0;
  if (plan_) {
    std::vector<std::uint32_t> decoded(snapshots());
    for (std::size_t t = 0; t < snapshots(); ++t) {
      decoded[t] = static_cast<std::uint32_t>(decoder_->decode(message.symbols[t], snapshot_coins(coins, t)));
    }
    value = estimate(decoded, y);
  } else {
    value = estimate(message.symbols, y);
  }
  const int b = b_.at(y);
  return value >= 0.5 ? b : 1 - b;
}

double Theorem2Protocol::estimate(std::span<const std::uint32_t> indices, std::size_t y) const {
  const auto& est = estimators_.at(y);
  std::vector<double> v(indices.size());
  for (std::size_t t = 0; t < indices.size(); ++t) v[t] = est(indices[t]);
  return median_of_means(v, groups_);
}

Theorem2Result theorem2_convert(const QuantumOneWayProtocol& qp, const PartialFunction& f,
                                const InputDistribution& mu, const Theorem2Options& options) {
  if (f.z_size() != 2) throw Error(Errc::unsupported, "Theorem 2 conversion needs a binary function");
  if (qp.is_entangled()) throw Error(Errc::unsupported, "Theorem 2 conversion needs pure-state messages");
  if (!(options.eta > 0.0 && options.eta < 1.0)) throw Error(Errc::invalid_argument, "η must lie in (0, 1)");
  mu.require_supported_on(f);

  Theorem2Report rep;
  rep.compression = options.compression;
  rep.eta = options.eta;
  rep.epsilon_measured = eval_err(qp, f, mu, ErrorMode::average).value;
  rep.epsilon_declared = options.epsilon_declared < 0.0 ? rep.epsilon_measured : options.epsilon_declared;
  rep.precondition_value = rep.epsilon_declared / rep.eta + rep.eta;
  if (!(rep.precondition_value < 0.5)) {
    throw Error(Errc::precondition, "ε/η + η = " + std::to_string(rep.precondition_value) + " is not below 1/2");
  }
  if (rep.epsilon_measured > rep.epsilon_declared + 1e-12) {
    throw Error(Errc::precondition, "measured error " + std::to_string(rep.epsilon_measured) +
                                        " exceeds declared " + std::to_string(rep.epsilon_declared));
  }

  QuantumOneWayProtocol p = options.purify ? with_canonical_purification(qp) : qp;
  if (!p.decoders_projective()) {
    p = dilate_decoders(p);
    rep.dilated = true;
  }
  rep.includes_purification = p.includes_purification();
  const std::size_t dim = p.register_dim();
  if (!std::has_single_bit(dim)) throw Error(Errc::unsupported_size, "register is not a whole number of qubits");
  const auto n = static_cast<std::size_t>(std::countr_zero(dim));
  if (n > kMaxShadowQubits) {
    throw Error(Errc::unsupported_size, "register has " + std::to_string(n) + " qubits; shadows support at most " +
                                            std::to_string(kMaxShadowQubits));
  }
  rep.register_qubits = n;

  const auto tilde = build_tilde_projectors(p, f);
  rep.column_sparsity = column_sparsity(f);
  for (const auto& col : tilde) {
    rep.k = std::max(rep.k, std::min(col.rank[0], col.rank[1]));
    rep.estimated_rank = std::max(rep.estimated_rank, col.rank[col.b]);
    rep.b.push_back(col.b);
  }
  const auto budget = shadow_budget(static_cast<double>(rep.estimated_rank), rep.eta, rep.eta);
  rep.group_size = budget.group_size;
  rep.groups = budget.groups;
  rep.snapshots = budget.total();
  rep.complexity_formula =
      static_cast<double>(rep.column_sparsity) * static_cast<double>(n) / std::pow(rep.eta, 3);

  const auto err = cell_errors(qp, f);
  for (std::size_t i = 0; i < err.size(); ++i) {
    if (err[i] <= rep.epsilon_declared / rep.eta) rep.good_set_mass += mu.weights()[i];
  }

  const auto table = stabilizer_table(n);
  const double T = static_cast<double>(rep.snapshots);
  rep.raw_message_bits = rep.snapshots * table->index_bits();
  rep.raw_length_bound = T * static_cast<double>(2 * n * n + 3 * n);
  rep.information_bound = T * static_cast<double>(n);

  std::optional<CompressionPlan> plan;
  if (options.compression == Theorem2Compression::per_snapshot) {
    std::vector<std::vector<double>> channel;
    for (std::size_t x = 0; x < p.x_size(); ++x) channel.push_back(snapshot_distribution(*table, *p.pure_message(x)));
    const auto joint = ClassicalJoint::from_channel(mu.marginal_x(), channel);
    rep.snapshot_eta = rep.eta / (2.0 * T);
    plan = build_compression_plan(joint, rep.snapshot_eta);
    rep.snapshot_imax = plan->lambda;
    rep.snapshot_candidates = plan->candidates;
    rep.snapshot_message_bits = plan->message_bits;
    rep.message_bits = rep.snapshots * plan->message_bits;
    rep.message_length_bound = T * plan->length_guarantee();
  } else {
    rep.message_bits = rep.raw_message_bits;
    rep.message_length_bound = rep.raw_length_bound;
  }

  rep.checks.push_back(BoundCheck::at_most("eps/eta + eta < 1/2", rep.precondition_value, 0.5, 0.0));
  rep.checks.push_back(BoundCheck::at_most("K <= CS(f)", static_cast<double>(rep.k),
                                           static_cast<double>(rep.column_sparsity), 0.0));
  rep.checks.push_back(BoundCheck::at_most("rank of estimated projector <= CS(f)",
                                           static_cast<double>(rep.estimated_rank),
                                           static_cast<double>(rep.column_sparsity), 0.0));
  rep.checks.push_back(BoundCheck::at_least("good-set mass >= 1 - eta", rep.good_set_mass, 1.0 - rep.eta, 1e-12));
  rep.checks.push_back(BoundCheck::at_most("message bits <= length bound", static_cast<double>(rep.message_bits),
                                           rep.message_length_bound, 0.0));

  Theorem2Result result;
  result.protocol = std::make_unique<Theorem2Protocol>(p, tilde, rep.group_size, rep.groups, std::move(plan));
  result.report = std::move(rep);
  return result;
}

void evaluate_theorem2(Theorem2Result& result, const PartialFunction& f,
                       const InputDistribution& mu, std::size_t trials, std::uint64_t seed) {
  auto& rep = result.report;
  const auto est = eval_err(*result.protocol, f, mu, ErrorMode::average, MonteCarloMethod{trials, seed});
  rep.trials = trials;
  rep.final_error = est.value;
  rep.final_standard_error = est.standard_error;
  if (rep.compression == Theorem2Compression::none) {
    rep.p1_error = est.value;
    rep.p1_standard_error = est.standard_error;
    rep.checks.push_back(BoundCheck::at_most("P1 error <= 2 eta (3 SE)", est.value, 2.0 * rep.eta,
                                             3.0 * est.standard_error));
  } else {
    rep.checks.push_back(BoundCheck::at_most("final error <= 3 eta (3 SE)", est.value, 3.0 * rep.eta,
                                             3.0 * est.standard_error));
  }
}

}  // namespace oneway
