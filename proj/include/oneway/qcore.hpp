#pragma once

// Dense complex linear algebra and finite-dimensional quantum state primitives.
//
// Index convention for composite registers A⊗B: basis |a⟩|b⟩ has flat index
// a * dim(B) + b (the first factor is most significant).

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "oneway/rng.hpp"

namespace oneway {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Centralized numerical tolerances.
namespace tol {
/// Hermiticity, PSD, trace and normalization checks on states and POVMs.
inline constexpr double kValidation = 1e-9;
/// Eigenvalues at or below this are exact zeros; defines "support" everywhere.
inline constexpr double kSupportCutoff = 1e-10;
/// Postcondition tolerance for projector identities such as B·m·B = Π_supp.
inline constexpr double kProjector = 1e-8;
/// Outcome probabilities handed to the sampler must sum to 1 within this.
inline constexpr double kMeasureSum = 1e-6;
}  // namespace tol

// ---------------------------------------------------------------------------
// Matrix helpers

ComplexMatrix identity(std::size_t dim);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// max_ij |m_ij − conj(m_ji)|; +inf for non-square input.
double hermitian_deviation(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::kValidation);

double frobenius_norm(const ComplexMatrix& m);
/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

struct EigenSystem {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are eigenvectors
};

/// Eigendecomposition of a Hermitian matrix (the input is symmetrized first).
/// Throws Errc::invalid_operator when the input is not Hermitian within tolerance.
EigenSystem hermitian_eigen(const ComplexMatrix& m);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& m);
bool is_psd(const ComplexMatrix& m, double tolerance = tol::kValidation);

/// Pseudo-inverse square root on supp(m). Throws invalid_operator for
/// non-Hermitian or clearly non-PSD input.
ComplexMatrix mat_inv_sqrt(const ComplexMatrix& m);
ComplexMatrix mat_sqrt(const ComplexMatrix& m);
/// Orthogonal projector onto the span of eigenvectors with eigenvalue > cutoff.
ComplexMatrix support_projector(const ComplexMatrix& m);
std::size_t support_rank(const ComplexMatrix& m);

// ---------------------------------------------------------------------------
// States

class PureState {
 public:
  /// Validates ‖ψ‖² = 1 within tolerance.
  explicit PureState(ComplexVector amplitudes);

  static PureState normalized(const ComplexVector& v);
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  ComplexMatrix projector() const;
  PureState tensor(const PureState& other) const;

 private:
  ComplexVector amplitudes_;
};

class DensityOperator {
 public:
  /// Validates Hermitian, PSD and unit trace within tolerance.
  explicit DensityOperator(ComplexMatrix matrix);

  static DensityOperator from_pure(const PureState& psi);
  static DensityOperator maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  DensityOperator tensor(const DensityOperator& other) const;
  /// Tr(A ρ) for Hermitian A (real part).
  double expectation(const ComplexMatrix& observable) const;

 private:
  ComplexMatrix matrix_;
};

/// Classical-quantum state Σ_x p_x |x⟩⟨x| ⊗ ρ^x.
class CqState {
 public:
  CqState(std::vector<double> weights, std::vector<DensityOperator> states);

  std::size_t size() const noexcept { return weights_.size(); }
  std::size_t dim() const noexcept { return states_.front().dim(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<DensityOperator>& states() const noexcept { return states_; }

 private:
  std::vector<double> weights_;
  std::vector<DensityOperator> states_;
};

// ---------------------------------------------------------------------------
// Measurements

class Povm {
 public:
  /// Validates: one element per label, labels distinct, each element Hermitian
  /// PSD, and ‖Σ E_i − I‖_F ≤ 1e-9. Throws Errc::invalid_povm otherwise.
  Povm(std::vector<int> labels, std::vector<ComplexMatrix> elements);

  /// Projective measurement in the computational basis, labels 0..dim-1.
  static Povm computational_basis(std::size_t dim);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(elements_.front().rows()); }
  const std::vector<int>& labels() const noexcept { return labels_; }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  /// Index of `label` in labels(), or size() when absent.
  std::size_t index_of(int label) const noexcept;
  bool is_projective(double tolerance = tol::kValidation) const;
  /// Tr(E_i ρ) in label order.
  std::vector<double> probabilities(const DensityOperator& rho) const;

 private:
  std::vector<int> labels_;
  std::vector<ComplexMatrix> elements_;
};

/// Projective realization of a POVM on system ⊗ ancilla, where the ancilla has
/// one level per outcome and is appended in state |0⟩.
struct NaimarkDilation {
  Povm projective;
  std::size_t system_dim = 0;
  std::size_t ancilla_dim = 0;
  /// U with U(|ψ⟩⊗|0⟩) = Σ_i sqrt(E_i)|ψ⟩⊗|i⟩.
  ComplexMatrix unitary;

  DensityOperator embed(const DensityOperator& rho) const;
  PureState embed(const PureState& psi) const;
};

NaimarkDilation naimark_dilate(const Povm& povm);

/// Samples an outcome label with Pr(i) = Tr(E_i ρ).
int measure(const DensityOperator& state, const Povm& povm, Rng& rng);

// ---------------------------------------------------------------------------
// Distances and reductions

double trace_distance(const DensityOperator& a, const DensityOperator& b);

/// (ρ^{1/2} ⊗ I) Σ_i |i⟩|i⟩ on dim d².
PureState canonical_purification(const DensityOperator& rho);

enum class Subsystem { first, second };

/// Traces out `traced` from an operator on dim_first ⊗ dim_second.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_first, std::size_t dim_second,
                            Subsystem traced);
DensityOperator partial_trace(const DensityOperator& rho, std::size_t dim_first,
                              std::size_t dim_second, Subsystem traced);

// ---------------------------------------------------------------------------
// Random generators (test fixtures and protocol generation)

ComplexVector random_gaussian_vector(std::size_t dim, Rng& rng);
ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);
/// Haar-random unitary via QR with phase correction.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
/// dim_out × dim_in with V†V = I.
ComplexMatrix random_isometry(std::size_t dim_in, std::size_t dim_out, Rng& rng);
PureState random_pure_state(std::size_t dim, Rng& rng);
/// Ginibre-ensemble density operator of the given rank (0 → full rank).
DensityOperator random_density(std::size_t dim, Rng& rng, std::size_t rank = 0);
/// Random PSD matrix (not normalized) of given rank (0 → full).
ComplexMatrix random_psd(std::size_t dim, Rng& rng, std::size_t rank = 0);
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);
/// Random POVM with `outcomes` elements, labels 0..outcomes-1.
Povm random_povm(std::size_t dim, std::size_t outcomes, Rng& rng);
/// Random projective measurement: a Haar basis whose vectors are grouped by
/// `assignment[i]` (label of basis vector i).
Povm projective_from_basis(const ComplexMatrix& basis, std::span<const int> assignment,
                           std::size_t outcomes);

}  // namespace oneway
