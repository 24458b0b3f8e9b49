#include <cmath>
#include <set>
#include <string>

#include "oneway/comm.hpp"
#include "oneway/error.hpp"

namespace oneway {

namespace {

using Eigen::Index;

Index idx(std::size_t n) { return static_cast<Index>(n); }

}  // namespace

QuantumOneWayProtocol QuantumOneWayProtocol::unentangled(std::vector<PureState> encoders,
                                                         std::vector<Povm> decoders,
                                                         std::size_t z_size) {
  if (encoders.empty() || decoders.empty()) {
    throw Error(Errc::invalid_argument, "protocol needs at least one encoder and one decoder");
  }
  QuantumOneWayProtocol qp;
  qp.z_size_ = z_size;
  qp.message_dim_ = encoders.front().dim();
  for (auto& psi : encoders) {
    if (psi.dim() != qp.message_dim_) {
      throw Error(Errc::dimension_mismatch, "encoder states differ in dimension");
    }
    qp.message_states_.push_back(DensityOperator::from_pure(psi));
    qp.pure_messages_.emplace_back(std::move(psi));
  }
  qp.decoders_ = std::move(decoders);
  qp.validate_decoders();
  return qp;
}

QuantumOneWayProtocol QuantumOneWayProtocol::entangled(SharedEntanglement shared,
                                                       std::vector<ComplexMatrix> isometries,
                                                       std::size_t residual_dim,
                                                       std::size_t message_dim,
                                                       std::vector<Povm> decoders,
                                                       std::size_t z_size) {
  if (isometries.empty() || decoders.empty()) {
    throw Error(Errc::invalid_argument, "protocol needs at least one encoder and one decoder");
  }
  if (shared.state.dim() != shared.dim_a * shared.dim_b) {
    throw Error(Errc::dimension_mismatch, "shared state does not live on dim_a * dim_b");
  }
  QuantumOneWayProtocol qp;
  qp.z_size_ = z_size;
  qp.message_dim_ = message_dim;
  qp.residual_dim_ = residual_dim;

  const std::size_t da = shared.dim_a, db = shared.dim_b;
  // Shared amplitudes as a dim_a x dim_b matrix.
  ComplexMatrix phi(idx(da), idx(db));
  for (std::size_t a = 0; a < da; ++a) {
    for (std::size_t b = 0; b < db; ++b) phi(idx(a), idx(b)) = shared.state.amplitudes()(idx(a * db + b));
  }
  for (const auto& u : isometries) {
    if (u.rows() != idx(residual_dim * message_dim) || u.cols() != idx(da)) {
      throw Error(Errc::dimension_mismatch, "isometry must map dim_a to residual_dim * message_dim");
    }
    const double dev = (u.adjoint() * u - ComplexMatrix::Identity(idx(da), idx(da))).norm();
    if (dev > tol::kValidation) {
      throw Error(Errc::invalid_operator, "encoder is not an isometry (deviation " +
                                              std::to_string(dev) + ")");
    }
    const ComplexMatrix w = u * phi;  // rows (r, m), cols b
    ComplexMatrix rho = ComplexMatrix::Zero(idx(message_dim * db), idx(message_dim * db));
    for (std::size_t r = 0; r < residual_dim; ++r) {
      ComplexVector v(idx(message_dim * db));
      for (std::size_t m = 0; m < message_dim; ++m) {
        for (std::size_t b = 0; b < db; ++b) v(idx(m * db + b)) = w(idx(r * message_dim + m), idx(b));
      }
      rho += v * v.adjoint();
    }
    qp.message_states_.emplace_back(DensityOperator(0.5 * (rho + rho.adjoint())));
    qp.pure_messages_.emplace_back(std::nullopt);
  }
  qp.isometries_ = std::move(isometries);
  qp.shared_ = std::move(shared);
  qp.decoders_ = std::move(decoders);
  qp.validate_decoders();
  return qp;
}

void QuantumOneWayProtocol::validate_decoders() const {
  for (const auto& povm : decoders_) {
    if (povm.dim() != register_dim()) {
      throw Error(Errc::dimension_mismatch, "decoder dimension " + std::to_string(povm.dim()) +
                                                " differs from register dimension " +
                                                std::to_string(register_dim()));
    }
    std::set<int> labels(povm.labels().begin(), povm.labels().end());
    if (labels.size() != z_size_ || *labels.begin() != 0 ||
        *labels.rbegin() != static_cast<int>(z_size_) - 1) {
      throw Error(Errc::label_mismatch, "decoder labels must be exactly 0.." +
                                            std::to_string(z_size_ - 1));
    }
  }
}

double QuantumOneWayProtocol::message_qubits() const {
  return std::log2(static_cast<double>(message_dim_));
}

std::vector<double> QuantumOneWayProtocol::outcome_distribution(std::size_t x,
                                                                std::size_t y) const {
  const auto& povm = decoders_.at(y);
  const auto probs = povm.probabilities(message_states_.at(x));
  std::vector<double> out(z_size_, 0.0);
  for (std::size_t i = 0; i < povm.size(); ++i) {
    out[static_cast<std::size_t>(povm.labels()[i])] = std::max(0.0, probs[i]);
  }
  return out;
}

bool QuantumOneWayProtocol::decoders_projective() const {
  for (const auto& p : decoders_) {
    if (!p.is_projective()) return false;
  }
  return true;
}

QuantumOneWayProtocol with_canonical_purification(const QuantumOneWayProtocol& qp) {
  if (qp.is_entangled()) {
    throw Error(Errc::unsupported, "purification is only attached to pure-state messages");
  }
  if (qp.includes_purification()) return qp;
  std::vector<PureState> encoders;
  for (std::size_t x = 0; x < qp.x_size(); ++x) {
    const auto& psi = qp.pure_message(x)->amplitudes();
    encoders.push_back(PureState::normalized(kron(psi, ComplexVector(psi.conjugate()))));
  }
  const ComplexMatrix id = identity(qp.message_dim());
  std::vector<Povm> decoders;
  for (std::size_t y = 0; y < qp.y_size(); ++y) {
    std::vector<ComplexMatrix> elements;
    for (const auto& e : qp.decoder(y).elements()) elements.push_back(kron(e, id));
    decoders.emplace_back(qp.decoder(y).labels(), std::move(elements));
  }
  auto out = QuantumOneWayProtocol::unentangled(std::move(encoders), std::move(decoders), qp.z_size());
  out.includes_purification_ = true;
  out.origin = qp.origin;
  out.metadata = qp.metadata;
  out.metadata["includes_purification"] = true;
  return out;
}

QuantumOneWayProtocol dilate_decoders(const QuantumOneWayProtocol& qp) {
  if (qp.decoders_projective()) return qp;
  if (qp.is_entangled()) {
    throw Error(Errc::unsupported, "decoder dilation is implemented for pure-state messages");
  }
  std::vector<Povm> decoders;
  std::optional<NaimarkDilation> first;
  for (std::size_t y = 0; y < qp.y_size(); ++y) {
    auto dil = naimark_dilate(qp.decoder(y));
    decoders.push_back(dil.projective);
    if (!first) first = std::move(dil);
  }
  std::vector<PureState> encoders;
  for (std::size_t x = 0; x < qp.x_size(); ++x) encoders.push_back(first->embed(*qp.pure_message(x)));
  auto out = QuantumOneWayProtocol::unentangled(std::move(encoders), std::move(decoders), qp.z_size());
  out.includes_purification_ = qp.includes_purification_;
  out.origin = qp.origin;
  out.metadata = qp.metadata;
  out.metadata["dilated_ancilla_dim"] = first->ancilla_dim;
  return out;
}

}  // namespace oneway
