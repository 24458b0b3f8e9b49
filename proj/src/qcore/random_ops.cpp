#include <random>

#include "oneway/error.hpp"
#include "oneway/qcore.hpp"

namespace oneway {

ComplexVector random_gaussian_vector(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[i] = Complex(re, im);
  }
  return v;
}

ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  return random_isometry(dim, dim, rng);
}

ComplexMatrix random_isometry(std::size_t dim_in, std::size_t dim_out, Rng& rng) {
  if (dim_in > dim_out) throw Error(Errc::invalid_argument, "isometry needs dim_in <= dim_out");
  const ComplexMatrix g = random_gaussian_matrix(dim_out, dim_in, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(g.rows(), g.cols());
  const ComplexMatrix r = qr.matrixQR().topRows(g.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    const Complex diag = r(c, c);
    if (std::abs(diag) > 0.0) q.col(c) *= diag / std::abs(diag);
  }
  return q;
}

PureState random_pure_state(std::size_t dim, Rng& rng) {
  return PureState::normalized(random_gaussian_vector(dim, rng));
}

ComplexMatrix random_psd(std::size_t dim, Rng& rng, std::size_t rank) {
  if (rank == 0 || rank > dim) rank = dim;
  const ComplexMatrix g = random_gaussian_matrix(dim, rank, rng);
  ComplexMatrix m = g * g.adjoint();
  return 0.5 * (m + m.adjoint());
}

DensityOperator random_density(std::size_t dim, Rng& rng, std::size_t rank) {
  ComplexMatrix m = random_psd(dim, rng, rank);
  m /= m.trace().real();
  return DensityOperator(std::move(m));
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = random_gaussian_matrix(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

Povm random_povm(std::size_t dim, std::size_t outcomes, Rng& rng) {
  if (outcomes == 0) throw Error(Errc::invalid_argument, "POVM needs at least one outcome");
  std::vector<ComplexMatrix> raw;
  ComplexMatrix total = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < outcomes; ++i) {
    raw.push_back(random_psd(dim, rng));
    total += raw.back();
  }
  const ComplexMatrix s = mat_inv_sqrt(total);
  std::vector<int> labels;
  std::vector<ComplexMatrix> elements;
  for (std::size_t i = 0; i < outcomes; ++i) {
    ComplexMatrix e = s * raw[i] * s;
    labels.push_back(static_cast<int>(i));
    elements.push_back(0.5 * (e + e.adjoint()));
  }
  return Povm(std::move(labels), std::move(elements));
}

Povm projective_from_basis(const ComplexMatrix& basis, std::span<const int> assignment,
                           std::size_t outcomes) {
  if (static_cast<Eigen::Index>(assignment.size()) != basis.cols()) {
    throw Error(Errc::invalid_argument, "one label per basis vector required");
  }
  const auto d = basis.rows();
  std::vector<ComplexMatrix> elements(outcomes, ComplexMatrix::Zero(d, d));
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const int label = assignment[i];
    if (label < 0 || static_cast<std::size_t>(label) >= outcomes) {
      throw Error(Errc::invalid_argument, "basis assignment label out of range");
    }
    const auto col = basis.col(static_cast<Eigen::Index>(i));
    elements[static_cast<std::size_t>(label)] += col * col.adjoint();
  }
  std::vector<int> labels(outcomes);
  for (std::size_t z = 0; z < outcomes; ++z) {
    labels[z] = static_cast<int>(z);
    elements[z] = 0.5 * (elements[z] + elements[z].adjoint());
  }
  return Povm(std::move(labels), std::move(elements));
}

}  // namespace oneway
