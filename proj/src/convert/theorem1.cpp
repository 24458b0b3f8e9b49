#include <algorithm>
#include <cmath>
#include <string>

#include "oneway/convert.hpp"
#include "oneway/error.hpp"
#include "oneway/pgm.hpp"

namespace oneway {

BoundCheck BoundCheck::at_most(std::string name, double measured, double bound, double tolerance) {
  return {std::move(name), bound, measured, tolerance, measured <= bound + tolerance};
}

BoundCheck BoundCheck::at_least(std::string name, double measured, double bound, double tolerance) {
  return {std::move(name), bound, measured, tolerance, measured >= bound - tolerance};
}

double theorem1_bound(double epsilon, std::size_t d, double eta) {
  const double dd = static_cast<double>(d);
  return 2.0 * epsilon - dd * epsilon * epsilon / (dd - 1.0) + eta;
}

bool Theorem1Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

namespace {

std::vector<double> marginal_y_weighted(const InputDistribution& mu) { return mu.marginal_y(); }

Ensemble message_ensemble(const QuantumOneWayProtocol& qp, const InputDistribution& mu) {
  std::vector<DensityOperator> states;
  for (std::size_t x = 0; x < qp.x_size(); ++x) states.push_back(qp.message_state(x));
  return Ensemble(CqState(mu.marginal_x(), std::move(states)));
}

}  // namespace

double pgm_split_check(const QuantumOneWayProtocol& qp, const PartialFunction& f,
                       const InputDistribution& mu) {
  if (!mu.is_product()) throw Error(Errc::precondition, "PGM splitting needs a product distribution");
  const Ensemble ex = message_ensemble(qp, mu);
  const auto ex_elements = pgm_support_elements(ex);
  const auto mu_y = marginal_y_weighted(mu);
  double worst = 0.0;
  for (std::size_t y = 0; y < f.y_size(); ++y) {
    if (mu_y[y] <= 0.0) continue;
    std::vector<int> labels;
    std::vector<double> weights;
    std::vector<DensityOperator> states;
    std::vector<ComplexMatrix> sums;
    for (std::size_t z = 0; z < f.z_size(); ++z) {
      const auto cls = f.preimage(y, static_cast<int>(z));
      double w = 0.0;
      for (auto x : cls) w += mu.marginal_x()[x];
      if (cls.empty() || w <= 0.0) continue;
      ComplexMatrix avg = ComplexMatrix::Zero(static_cast<Eigen::Index>(qp.register_dim()),
                                              static_cast<Eigen::Index>(qp.register_dim()));
      ComplexMatrix sum = avg;
      for (auto x : cls) {
        avg += (mu.marginal_x()[x] / w) * qp.message_state(x).matrix();
        sum += ex_elements[x];
      }
      labels.push_back(static_cast<int>(z));
      weights.push_back(w);
      states.emplace_back(0.5 * (avg + avg.adjoint()));
      sums.push_back(std::move(sum));
    }
    double total = 0.0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;
    const Ensemble ez(CqState(std::move(weights), std::move(states)), labels);
    const auto ez_elements = pgm_support_elements(ez);
    for (std::size_t k = 0; k < ez_elements.size(); ++k) {
      worst = std::max(worst, (ez_elements[k] - sums[k]).norm());
    }
  }
  return worst;
}

Theorem1Protocol::Theorem1Protocol(PartialFunction f, const ClassicalJoint& channel,
                                   CompressionPlan plan)
    : f_(std::move(f)),
      channel_(channel),
      plan_(std::move(plan)),
      encoder_(plan_),
      decoder_(plan_.sigma, plan_.candidates) {}

Message Theorem1Protocol::send(std::size_t x, const PublicCoins& coins, Rng& private_rng) const {
  return Message{{encoder_.encode(x, coins, private_rng)}, plan_.message_bits};
}

int Theorem1Protocol::receive(const Message& message, const PublicCoins& coins, std::size_t y) const {
  const std::size_t c = decoder_.decode(message.symbols.at(0), coins);
  const int z = f_(c, y);
  return z == kBottom ? 0 : z;
}

std::vector<double> Theorem1Protocol::output_distribution(std::size_t x, std::size_t y) const {
  const auto pc = compressed_conditional(plan_, channel_, x);
  std::vector<double> out(f_.z_size(), 0.0);
  for (std::size_t c = 0; c < pc.size(); ++c) {
    const int z = f_(c, y);
    out[static_cast<std::size_t>(z == kBottom ? 0 : z)] += pc[c];
  }
  return out;
}

Theorem1Result theorem1_convert(const QuantumOneWayProtocol& qp, const PartialFunction& f,
                                const InputDistribution& mu, double eta, ErrorMode mode) {
  if (!mu.is_product()) throw Error(Errc::precondition, "Theorem 1 conversion needs a product distribution");
  if (!(eta > 0.0 && eta < 1.0)) throw Error(Errc::invalid_argument, "η must lie in (0, 1)");
  mu.require_supported_on(f);
  if (qp.x_size() != f.x_size() || qp.y_size() != f.y_size() || qp.z_size() != f.z_size()) {
    throw Error(Errc::dimension_mismatch, "protocol and function alphabets differ");
  }
  if (qp.is_entangled()) {
    // Bob's half must carry no information about x.
    const auto& sh = *qp.shared();
    const auto ref = partial_trace(qp.message_state(0), qp.message_dim(), sh.dim_b, Subsystem::first);
    for (std::size_t x = 1; x < qp.x_size(); ++x) {
      const auto rb = partial_trace(qp.message_state(x), qp.message_dim(), sh.dim_b, Subsystem::first);
      if ((rb.matrix() - ref.matrix()).norm() > tol::kProjector) {
        throw Error(Errc::precondition, "Bob's reduced state depends on x");
      }
    }
  }

  Theorem1Report rep;
  rep.mode = mode;
  rep.entangled = qp.is_entangled();
  rep.d = f.z_size();
  rep.message_qubits = qp.message_qubits();
  rep.eta = eta;
  rep.epsilon = eval_err(qp, f, mu, mode).value;
  rep.epsilon_in_range = rep.epsilon <= 1.0 - 1.0 / static_cast<double>(rep.d) + 1e-12;
  rep.bound = theorem1_bound(rep.epsilon, rep.d, eta);
  rep.split_deviation = pgm_split_check(qp, f, mu);

  const Ensemble ens = message_ensemble(qp, mu);
  const Povm pgm = build_pgm(ens);
  std::vector<std::vector<double>> channel(f.x_size());
  for (std::size_t x = 0; x < f.x_size(); ++x) {
    channel[x] = pgm.probabilities(qp.message_state(x));
    double total = 0.0;
    for (double& p : channel[x]) {
      p = std::max(0.0, p);
      total += p;
    }
    for (double& p : channel[x]) p /= total;
  }
  const auto joint = ClassicalJoint::from_channel(mu.marginal_x(), channel);

  // Error when c is delivered exactly: z = f(c, y).
  std::vector<double> stage(f.x_size() * f.y_size(), 0.0);
  for (std::size_t x = 0; x < f.x_size(); ++x) {
    for (std::size_t y = 0; y < f.y_size(); ++y) {
      if (!f.defined(x, y)) continue;
      double ok = 0.0;
      for (std::size_t c = 0; c < f.x_size(); ++c) {
        const int z = f(c, y);
        if ((z == kBottom ? 0 : z) == f(x, y)) ok += channel[x][c];
      }
      stage[x * f.y_size() + y] = std::clamp(1.0 - ok, 0.0, 1.0);
    }
  }
  rep.pgm_stage_error = aggregate_error(stage, mu, mode);

  auto plan = build_compression_plan(joint, eta);
  rep.imax = plan.lambda;
  rep.imax_budget = (qp.is_entangled() ? 2.0 : 1.0) * rep.message_qubits;
  rep.candidates = plan.candidates;
  rep.message_bits = plan.message_bits;
  rep.length_bound = rep.imax_budget + std::ceil(std::log2(std::log(1.0 / eta))) + 2.0;

  Theorem1Result result;
  result.protocol = std::make_unique<Theorem1Protocol>(f, joint, std::move(plan));
  rep.exact_error = eval_err(*result.protocol, f, mu, mode, ExactMethod{}).value;

  const double stage_bound = rep.bound - eta;
  rep.checks.push_back(BoundCheck::at_most("epsilon <= 1 - 1/d", rep.epsilon,
                                           1.0 - 1.0 / static_cast<double>(rep.d), 1e-12));
  rep.checks.push_back(BoundCheck::at_most("pgm split deviation", rep.split_deviation, 0.0, tol::kProjector));
  rep.checks.push_back(BoundCheck::at_most("pgm-stage error <= 2eps - d eps^2/(d-1)",
                                           rep.pgm_stage_error, stage_bound, 1e-9));
  rep.checks.push_back(BoundCheck::at_most("I_max(X:C) <= I_max budget", rep.imax, rep.imax_budget, 1e-9));
  rep.checks.push_back(BoundCheck::at_most("message bits <= budget + ceil(log2 ln(1/eta)) + 2",
                                           static_cast<double>(rep.message_bits), rep.length_bound, 0.0));
  rep.checks.push_back(BoundCheck::at_most("exact final error <= 2eps - d eps^2/(d-1) + eta",
                                           rep.exact_error, rep.bound, 1e-9));
  result.report = std::move(rep);
  return result;
}

void evaluate_theorem1(Theorem1Result& result, const PartialFunction& f,
                       const InputDistribution& mu, std::size_t trials, std::uint64_t seed) {
  auto& rep = result.report;
  const auto est = eval_err(*result.protocol, f, mu, rep.mode, MonteCarloMethod{trials, seed});
  rep.final_error = est.value;
  rep.final_standard_error = est.standard_error;
  rep.trials = trials;
  rep.checks.push_back(BoundCheck::at_most("final error <= 2eps - d eps^2/(d-1) + eta (4 SE)",
                                           est.value, rep.bound, 4.0 * est.standard_error));
}

}  // namespace oneway
