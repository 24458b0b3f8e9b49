#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "oneway/comm.hpp"
#include "oneway/error.hpp"

namespace oneway {

namespace {

using Eigen::Index;

Index idx(std::size_t n) { return static_cast<Index>(n); }

std::size_t code_distance(std::size_t bits, const std::vector<std::uint32_t>& columns) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint32_t x = 1; x < (1U << bits); ++x) {
    std::size_t w = 0;
    for (auto c : columns) w += static_cast<std::size_t>(std::popcount(x & c) & 1);
    best = std::min(best, w);
  }
  return best;
}

// Error of the projective decoder that measures in `basis` and labels each basis
// vector with the class carrying the most weight on it; also returns the labels.
double label_basis(const ComplexMatrix& basis, const std::vector<DensityOperator>& states,
                   const PartialFunction& f, std::size_t y, const std::vector<double>& weight,
                   std::vector<int>& labels) {
  const std::size_t dim = static_cast<std::size_t>(basis.cols());
  labels.assign(dim, 0);
  double correct = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const ComplexVector u = basis.col(idx(j));
    std::vector<double> score(f.z_size(), 0.0);
    for (std::size_t x = 0; x < f.x_size(); ++x) {
      if (weight[x] == 0.0 || !f.defined(x, y)) continue;
      const double p = (u.adjoint() * states[x].matrix() * u)(0, 0).real();
      score[static_cast<std::size_t>(f(x, y))] += weight[x] * p;
    }
    std::size_t arg = 0;
    for (std::size_t z = 1; z < score.size(); ++z) {
      if (score[z] > score[arg]) arg = z;
    }
    labels[j] = static_cast<int>(arg);
    correct += score[arg];
  }
  double total = 0.0;
  for (std::size_t x = 0; x < f.x_size(); ++x) {
    if (f.defined(x, y)) total += weight[x];
  }
  return total - correct;
}

}  // namespace

std::uint32_t LinearCode::encode_bit(std::uint32_t x, std::size_t i) const {
  return static_cast<std::uint32_t>(std::popcount(x & columns.at(i)) & 1);
}

std::size_t LinearCode::min_distance() const { return code_distance(bits, columns); }

LinearCode greedy_linear_code(std::size_t bits, std::size_t length) {
  if (bits == 0 || bits > 12) throw Error(Errc::configuration, "code needs 1..12 message bits");
  if (length < bits) {
    throw Error(Errc::configuration, "code length " + std::to_string(length) +
                                         " is shorter than the message (" + std::to_string(bits) +
                                         " bits)");
  }
  LinearCode code{bits, {}};
  for (std::size_t i = 0; i < bits; ++i) code.columns.push_back(1U << i);
  while (code.columns.size() < length) {
    std::uint32_t best_col = 1;
    std::size_t best_dist = 0;
    for (std::uint32_t c = 1; c < (1U << bits); ++c) {
      code.columns.push_back(c);
      const std::size_t d = code_distance(bits, code.columns);
      code.columns.pop_back();
      if (d > best_dist) {
        best_dist = d;
        best_col = c;
      }
    }
    code.columns.push_back(best_col);
  }
  return code;
}

QuantumOneWayProtocol make_fingerprint_protocol(std::size_t bits, const FingerprintCode& spec) {
  if (bits > 12) throw Error(Errc::configuration, "fingerprinting supports at most 12 input bits");
  const LinearCode code = greedy_linear_code(bits, spec.length);
  const std::size_t m = code.length();
  const double delta = static_cast<double>(code.min_distance()) / static_cast<double>(m);
  if (delta + 1e-12 < spec.min_relative_distance) {
    throw Error(Errc::configuration, "no length-" + std::to_string(m) +
                                         " code found with relative distance " +
                                         std::to_string(spec.min_relative_distance) +
                                         " (best " + std::to_string(delta) + ")");
  }
  const std::size_t index_qubits = static_cast<std::size_t>(std::bit_width(m - 1));
  const std::size_t dim = (std::size_t{1} << index_qubits) * 2;
  const std::size_t n = std::size_t{1} << bits;

  std::vector<PureState> states;
  for (std::uint32_t x = 0; x < n; ++x) {
    ComplexVector v = ComplexVector::Zero(idx(dim));
    for (std::size_t i = 0; i < m; ++i) v(idx(2 * i + code.encode_bit(x, i))) = 1.0;
    states.push_back(PureState::normalized(v));
  }
  std::vector<Povm> decoders;
  const ComplexMatrix id = identity(dim);
  for (std::size_t y = 0; y < n; ++y) {
    const ComplexMatrix accept = states[y].projector();
    decoders.emplace_back(std::vector<int>{0, 1}, std::vector<ComplexMatrix>{id - accept, accept});
  }
  auto qp = QuantumOneWayProtocol::unentangled(std::move(states), std::move(decoders), 2);
  qp.origin = "fingerprint";
  qp.metadata["code_length"] = m;
  qp.metadata["code_min_distance"] = code.min_distance();
  qp.metadata["code_relative_distance"] = delta;
  qp.metadata["message_qubits"] = index_qubits + 1;
  qp.metadata["worst_case_error"] = (1.0 - delta) * (1.0 - delta);
  return qp;
}

QuantumOneWayProtocol make_random_protocol(const PartialFunction& f, const InputDistribution& mu,
                                           const RandomProtocolShape& shape, double target_epsilon,
                                           ErrorMode mode, Rng& rng) {
  if (shape.message_dim < 2) throw Error(Errc::invalid_argument, "message dimension must be ≥ 2");
  if (shape.retry_budget == 0 || shape.decoder_candidates == 0) {
    throw Error(Errc::invalid_argument, "retry budget and decoder candidates must be positive");
  }
  mu.require_supported_on(f);
  const bool entangled = shape.shared_dim_a > 0;
  const std::size_t dim_b = entangled ? shape.shared_dim_b : 1;
  const std::size_t reg = shape.message_dim * dim_b;
  double best = std::numeric_limits<double>::infinity();

  for (std::size_t attempt = 0; attempt < shape.retry_budget; ++attempt) {
    std::vector<PureState> encoders;
    std::optional<SharedEntanglement> shared;
    std::vector<ComplexMatrix> isometries;
    std::vector<DensityOperator> states;
    if (entangled) {
      shared = SharedEntanglement{random_pure_state(shape.shared_dim_a * dim_b, rng),
                                  shape.shared_dim_a, dim_b};
      for (std::size_t x = 0; x < f.x_size(); ++x) {
        isometries.push_back(
            random_isometry(shape.shared_dim_a, shape.residual_dim * shape.message_dim, rng));
      }
      // Message states are needed to choose decoders; build with a placeholder decoder.
      const auto probe = QuantumOneWayProtocol::entangled(
          *shared, isometries, shape.residual_dim, shape.message_dim,
          std::vector<Povm>(f.y_size(), Povm::computational_basis(reg)), reg);
      for (std::size_t x = 0; x < f.x_size(); ++x) states.push_back(probe.message_state(x));
    } else {
      for (std::size_t x = 0; x < f.x_size(); ++x) {
        encoders.push_back(random_pure_state(shape.message_dim, rng));
        states.push_back(DensityOperator::from_pure(encoders.back()));
      }
    }

    std::vector<Povm> decoders;
    for (std::size_t y = 0; y < f.y_size(); ++y) {
      std::vector<double> weight(f.x_size());
      for (std::size_t x = 0; x < f.x_size(); ++x) {
        weight[x] = mode == ErrorMode::average ? mu(x, y) : mu.marginal_x()[x];
      }
      double best_y = std::numeric_limits<double>::infinity();
      ComplexMatrix best_basis;
      std::vector<int> best_labels, labels;
      for (std::size_t k = 0; k < shape.decoder_candidates; ++k) {
        const ComplexMatrix basis = random_unitary(reg, rng);
        const double e = label_basis(basis, states, f, y, weight, labels);
        if (e < best_y) {
          best_y = e;
          best_basis = basis;
          best_labels = labels;
        }
      }
      decoders.push_back(projective_from_basis(best_basis, best_labels, f.z_size()));
    }

    auto qp = entangled
                  ? QuantumOneWayProtocol::entangled(*shared, std::move(isometries),
                                                     shape.residual_dim, shape.message_dim,
                                                     std::move(decoders), f.z_size())
                  : QuantumOneWayProtocol::unentangled(std::move(encoders), std::move(decoders),
                                                       f.z_size());
    const double eps = eval_err(qp, f, mu, mode).value;
    best = std::min(best, eps);
    if (eps <= target_epsilon) {
      qp.origin = "random";
      qp.metadata["achieved_epsilon"] = eps;
      qp.metadata["target_epsilon"] = target_epsilon;
      qp.metadata["attempts"] = attempt + 1;
      qp.metadata["error_mode"] = to_string(mode);
      return qp;
    }
  }
  throw GenerationFailed("no random protocol reached error " + std::to_string(target_epsilon) +
                             " within " + std::to_string(shape.retry_budget) + " attempts",
                         best);
}

}  // namespace oneway
