#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "oneway/error.hpp"
#include "oneway/qcore.hpp"

namespace oneway {

Povm::Povm(std::vector<int> labels, std::vector<ComplexMatrix> elements)
    : labels_(std::move(labels)), elements_(std::move(elements)) {
  if (elements_.empty() || labels_.size() != elements_.size()) {
    throw Error(Errc::invalid_povm, "POVM needs one element per label");
  }
  if (std::set<int>(labels_.begin(), labels_.end()).size() != labels_.size()) {
    throw Error(Errc::invalid_povm, "POVM labels must be distinct");
  }
  const auto d = elements_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : elements_) {
    if (e.rows() != d || e.cols() != d) {
      throw Error(Errc::invalid_povm, "POVM elements differ in dimension");
    }
    if (!is_hermitian(e)) throw Error(Errc::invalid_povm, "POVM element is not Hermitian");
    if (min_eigenvalue(e) < -tol::kValidation) {
      throw Error(Errc::invalid_povm, "POVM element is not positive semidefinite");
    }
    sum += e;
  }
  const double deviation = (sum - ComplexMatrix::Identity(d, d)).norm();
  if (deviation > tol::kValidation) {
    throw Error(Errc::invalid_povm,
                "POVM elements sum to identity only within " + std::to_string(deviation));
  }
}

Povm Povm::computational_basis(std::size_t dim) {
  std::vector<int> labels(dim);
  std::vector<ComplexMatrix> elements;
  for (std::size_t i = 0; i < dim; ++i) {
    labels[i] = static_cast<int>(i);
    ComplexMatrix e = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    elements.push_back(std::move(e));
  }
  return Povm(std::move(labels), std::move(elements));
}

std::size_t Povm::index_of(int label) const noexcept {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  return static_cast<std::size_t>(it - labels_.begin());
}

bool Povm::is_projective(double tolerance) const {
  return std::all_of(elements_.begin(), elements_.end(), [&](const ComplexMatrix& e) {
    return (e * e - e).norm() <= tolerance;
  });
}

std::vector<double> Povm::probabilities(const DensityOperator& rho) const {
  if (rho.dim() != dim()) {
    throw Error(Errc::dimension_mismatch, "POVM dimension " + std::to_string(dim()) +
                                              " vs state dimension " + std::to_string(rho.dim()));
  }
  std::vector<double> p;
  p.reserve(elements_.size());
  for (const auto& e : elements_) p.push_back(rho.expectation(e));
  return p;
}

int measure(const DensityOperator& state, const Povm& povm, Rng& rng) {
  const std::vector<double> p = povm.probabilities(state);
  double total = 0.0;
  for (double v : p) total += v;
  if (std::abs(total - 1.0) > tol::kMeasureSum) {
    throw Error(Errc::invalid_povm, "outcome probabilities sum to " + std::to_string(total));
  }
  const double u = uniform01(rng) * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double w = std::max(0.0, p[i]);
    if (w > 0.0) last_positive = i;
    acc += w;
    if (u < acc) return povm.labels()[i];
  }
  return povm.labels()[last_positive];
}

NaimarkDilation naimark_dilate(const Povm& povm) {
  const auto d = static_cast<Eigen::Index>(povm.dim());
  const auto t = static_cast<Eigen::Index>(povm.size());
  const Eigen::Index n = d * t;

  // Isometry V = Σ_i sqrt(E_i) ⊗ |i⟩, with ancilla as the second factor.
  ComplexMatrix v = ComplexMatrix::Zero(n, d);
  for (Eigen::Index i = 0; i < t; ++i) {
    const ComplexMatrix root = mat_sqrt(povm.elements()[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) v(j * t + i, k) = root(j, k);
    }
  }
  // Orthonormal complement of range(V): eigenvectors of VV† with eigenvalue 0.
  const EigenSystem es = hermitian_eigen(v * v.adjoint());
  ComplexMatrix u(n, n);
  Eigen::Index next_complement = 0;
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index a = 0; a < t; ++a) {
      const Eigen::Index col = k * t + a;
      if (a == 0) {
        u.col(col) = v.col(k);
      } else {
        u.col(col) = es.vectors.col(next_complement++);
      }
    }
  }
  // Re-orthonormalize V's columns against rounding (V†V = I only within tolerance).
  Eigen::HouseholderQR<ComplexMatrix> qr(u);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < n; ++c) {
    const Complex diag = r(c, c);
    if (std::abs(diag) > 0.0) q.col(c) *= diag / std::abs(diag);
  }

  std::vector<ComplexMatrix> projectors;
  std::vector<int> labels = povm.labels();
  for (Eigen::Index i = 0; i < t; ++i) {
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < d; ++k) {
      const auto row = q.adjoint().col(k * t + i);
      p += row * row.adjoint();
    }
    projectors.push_back(0.5 * (p + p.adjoint()));
  }
  return NaimarkDilation{Povm(std::move(labels), std::move(projectors)),
                         static_cast<std::size_t>(d), static_cast<std::size_t>(t), std::move(q)};
}

DensityOperator NaimarkDilation::embed(const DensityOperator& rho) const {
  if (rho.dim() != system_dim) throw Error(Errc::dimension_mismatch, "Naimark embed dimension");
  return rho.tensor(DensityOperator::from_pure(PureState::basis(ancilla_dim, 0)));
}

PureState NaimarkDilation::embed(const PureState& psi) const {
  if (psi.dim() != system_dim) throw Error(Errc::dimension_mismatch, "Naimark embed dimension");
  return psi.tensor(PureState::basis(ancilla_dim, 0));
}

}  // namespace oneway
