#pragma once

// Pretty good measurements and guessing probabilities.

#include <cstddef>
#include <vector>

#include "oneway/qcore.hpp"

namespace oneway {

/// {p_x, ρ^x} with A_x = p_x ρ^x and A = Σ_x A_x. Labels default to 0..k-1.
class Ensemble {
 public:
  explicit Ensemble(const CqState& cq);
  Ensemble(const CqState& cq, std::vector<int> labels);

  std::size_t size() const noexcept { return weights_.size(); }
  std::size_t dim() const noexcept { return states_.front().dim(); }
  const std::vector<int>& labels() const noexcept { return labels_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const DensityOperator& state(std::size_t i) const { return states_.at(i); }
  const ComplexMatrix& weighted(std::size_t i) const { return weighted_.at(i); }
  const ComplexMatrix& average() const noexcept { return average_; }

 private:
  std::vector<int> labels_;
  std::vector<double> weights_;
  std::vector<DensityOperator> states_;
  std::vector<ComplexMatrix> weighted_;
  ComplexMatrix average_;
};

/// A^{-1/2} A_x A^{-1/2} for every x, without the kernel completion.
std::vector<ComplexMatrix> pgm_support_elements(const Ensemble& e);

/// E_x = A^{-1/2} A_x A^{-1/2}. The kernel projector I − Proj(supp A) is added to
/// the element with the largest prior (smallest index on ties).
Povm build_pgm(const Ensemble& e);

/// Σ_x p_x Tr(E_x ρ^x). Throws Errc::label_mismatch when p lacks an ensemble label.
double guess_prob(const Ensemble& e, const Povm& p);

/// Optimal two-state discrimination ½(1 + ‖p0 ρ0 − p1 ρ1‖_1).
double helstrom_opt(double p0, const DensityOperator& rho0, double p1, const DensityOperator& rho1);

/// g(x) = x² + (1 − x)²/(d − 1).
double g_function(double x, std::size_t d);

}  // namespace oneway
