#include <cmath>
#include <string>

#include "oneway/error.hpp"
#include "oneway/qcore.hpp"

namespace oneway {

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw Error(Errc::invalid_state, "pure state of dimension 0");
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol::kValidation) {
    throw Error(Errc::invalid_state, "pure state squared norm " + std::to_string(norm2));
  }
}

PureState PureState::normalized(const ComplexVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0)) throw Error(Errc::invalid_state, "cannot normalize the zero vector");
  return PureState(v / norm);
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(Errc::invalid_argument, "basis index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return PureState(std::move(v));
}

ComplexMatrix PureState::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

PureState PureState::tensor(const PureState& other) const {
  return PureState(kron(amplitudes_, other.amplitudes_));
}

DensityOperator::DensityOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw Error(Errc::invalid_state, "density operator must be square and nonempty");
  }
  const double herm = hermitian_deviation(matrix_);
  if (herm > tol::kValidation) {
    throw Error(Errc::invalid_state, "density operator not Hermitian (" + std::to_string(herm) + ")");
  }
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > tol::kValidation) {
    throw Error(Errc::invalid_state, "density operator trace " + std::to_string(trace));
  }
  const double lowest = min_eigenvalue(matrix_);
  if (lowest < -tol::kValidation) {
    throw Error(Errc::invalid_state, "density operator eigenvalue " + std::to_string(lowest));
  }
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  return DensityOperator(psi.projector());
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  return DensityOperator(identity(dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::tensor(const DensityOperator& other) const {
  return DensityOperator(kron(matrix_, other.matrix_));
}

double DensityOperator::expectation(const ComplexMatrix& observable) const {
  if (observable.rows() != matrix_.rows() || observable.cols() != matrix_.cols()) {
    throw Error(Errc::dimension_mismatch, "expectation: observable dimension");
  }
  return (observable.cwiseProduct(matrix_.transpose())).sum().real();
}

CqState::CqState(std::vector<double> weights, std::vector<DensityOperator> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (weights_.empty() || weights_.size() != states_.size()) {
    throw Error(Errc::invalid_state, "cq-state needs one state per weight");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw Error(Errc::invalid_state, "cq-state weight is negative");
    total += w;
  }
  if (std::abs(total - 1.0) > tol::kValidation) {
    throw Error(Errc::invalid_state, "cq-state weights sum to " + std::to_string(total));
  }
  for (const auto& s : states_) {
    if (s.dim() != states_.front().dim()) {
      throw Error(Errc::dimension_mismatch, "cq-state conditional states differ in dimension");
    }
  }
}

PureState canonical_purification(const DensityOperator& rho) {
  const ComplexMatrix root = mat_sqrt(rho.matrix());
  const auto d = root.rows();
  ComplexVector v(d * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) v[j * d + i] = root(j, i);
  }
  // Renormalize away the cutoff-truncated tail so the state invariant holds exactly.
  return PureState::normalized(v);
}

DensityOperator partial_trace(const DensityOperator& rho, std::size_t dim_first,
                              std::size_t dim_second, Subsystem traced) {
  return DensityOperator(partial_trace(rho.matrix(), dim_first, dim_second, traced));
}

}  // namespace oneway
