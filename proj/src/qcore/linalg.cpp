#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "oneway/error.hpp"
#include "oneway/qcore.hpp"

namespace oneway {

ComplexMatrix identity(std::size_t dim) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

double hermitian_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  return hermitian_deviation(m) <= tolerance;
}

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

double trace_norm(const ComplexMatrix& m) {
  if (is_hermitian(m)) return hermitian_eigen(m).values.cwiseAbs().sum();
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

EigenSystem hermitian_eigen(const ComplexMatrix& m) {
  if (!is_hermitian(m)) {
    throw Error(Errc::invalid_operator, "matrix is not Hermitian (deviation " +
                                            std::to_string(hermitian_deviation(m)) + ")");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::invalid_operator, "eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& m) {
  if (m.rows() == 0) return 0.0;
  return hermitian_eigen(m).values.minCoeff();
}

bool is_psd(const ComplexMatrix& m, double tolerance) {
  return is_hermitian(m, tolerance) && min_eigenvalue(m) >= -tolerance;
}

namespace {

void require_psd(const ComplexMatrix& m, const EigenSystem& es) {
  const double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());
  if (es.values.size() > 0 && es.values.minCoeff() < -tol::kValidation * scale) {
    throw Error(Errc::invalid_operator,
                "matrix is not positive semidefinite (min eigenvalue " +
                    std::to_string(es.values.minCoeff()) + ")");
  }
  (void)m;
}

ComplexMatrix rebuild(const EigenSystem& es, const RealVector& mapped) {
  return es.vectors * mapped.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

}  // namespace

ComplexMatrix mat_inv_sqrt(const ComplexMatrix& m) {
  const EigenSystem es = hermitian_eigen(m);
  require_psd(m, es);
  RealVector mapped(es.values.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    mapped[i] = es.values[i] > tol::kSupportCutoff ? 1.0 / std::sqrt(es.values[i]) : 0.0;
  }
  return rebuild(es, mapped);
}

ComplexMatrix mat_sqrt(const ComplexMatrix& m) {
  const EigenSystem es = hermitian_eigen(m);
  require_psd(m, es);
  RealVector mapped(es.values.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    mapped[i] = es.values[i] > tol::kSupportCutoff ? std::sqrt(es.values[i]) : 0.0;
  }
  return rebuild(es, mapped);
}

ComplexMatrix support_projector(const ComplexMatrix& m) {
  const EigenSystem es = hermitian_eigen(m);
  RealVector mapped(es.values.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    mapped[i] = es.values[i] > tol::kSupportCutoff ? 1.0 : 0.0;
  }
  return rebuild(es, mapped);
}

std::size_t support_rank(const ComplexMatrix& m) {
  const EigenSystem es = hermitian_eigen(m);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values[i] > tol::kSupportCutoff) ++rank;
  }
  return rank;
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) {
    throw Error(Errc::dimension_mismatch, "trace_distance: dims " + std::to_string(a.dim()) +
                                              " and " + std::to_string(b.dim()));
  }
  const ComplexMatrix diff = a.matrix() - b.matrix();
  return 0.5 * hermitian_eigen(diff).values.cwiseAbs().sum();
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_first, std::size_t dim_second,
                            Subsystem traced) {
  const auto total = static_cast<std::size_t>(m.rows());
  if (m.rows() != m.cols() || dim_first * dim_second != total) {
    throw Error(Errc::dimension_mismatch, "partial_trace: " + std::to_string(total) +
                                              " does not factor as " + std::to_string(dim_first) +
                                              " x " + std::to_string(dim_second));
  }
  const auto da = static_cast<Eigen::Index>(dim_first);
  const auto db = static_cast<Eigen::Index>(dim_second);
  if (traced == Subsystem::first) {
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (Eigen::Index a = 0; a < da; ++a) out += m.block(a * db, a * db, db, db);
    return out;
  }
  ComplexMatrix out(da, da);
  for (Eigen::Index a = 0; a < da; ++a) {
    for (Eigen::Index a2 = 0; a2 < da; ++a2) {
      out(a, a2) = m.block(a * db, a2 * db, db, db).trace();
    }
  }
  return out;
}

}  // namespace oneway
