#include "oneway/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "oneway/error.hpp"

namespace oneway {

namespace {

std::vector<int> default_labels(std::size_t n) {
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return labels;
}

}  // namespace

Ensemble::Ensemble(const CqState& cq) : Ensemble(cq, default_labels(cq.size())) {}

Ensemble::Ensemble(const CqState& cq, std::vector<int> labels)
    : labels_(std::move(labels)), weights_(cq.weights()), states_(cq.states()) {
  if (labels_.size() != weights_.size()) {
    throw Error(Errc::label_mismatch, "ensemble needs one label per state");
  }
  const auto d = static_cast<Eigen::Index>(dim());
  average_ = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < size(); ++i) {
    weighted_.push_back(weights_[i] * states_[i].matrix());
    average_ += weighted_.back();
  }
}

std::vector<ComplexMatrix> pgm_support_elements(const Ensemble& e) {
  const ComplexMatrix b = mat_inv_sqrt(e.average());
  std::vector<ComplexMatrix> elements;
  elements.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    ComplexMatrix el = b * e.weighted(i) * b;
    elements.push_back(0.5 * (el + el.adjoint()));
  }
  return elements;
}

Povm build_pgm(const Ensemble& e) {
  auto elements = pgm_support_elements(e);
  const auto top = static_cast<std::size_t>(
      std::max_element(e.weights().begin(), e.weights().end()) - e.weights().begin());
  elements[top] += identity(e.dim()) - support_projector(e.average());
  return Povm(e.labels(), std::move(elements));
}

double guess_prob(const Ensemble& e, const Povm& p) {
  if (p.dim() != e.dim()) throw Error(Errc::dimension_mismatch, "POVM and ensemble dimensions differ");
  double total = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::size_t k = p.index_of(e.labels()[i]);
    if (k == p.size()) {
      throw Error(Errc::label_mismatch, "POVM has no element for label " + std::to_string(e.labels()[i]));
    }
    total += e.weights()[i] * e.state(i).expectation(p.elements()[k]);
  }
  return total;
}

double helstrom_opt(double p0, const DensityOperator& rho0, double p1, const DensityOperator& rho1) {
  if (rho0.dim() != rho1.dim()) throw Error(Errc::dimension_mismatch, "Helstrom dimensions differ");
  return 0.5 * (1.0 + trace_norm(p0 * rho0.matrix() - p1 * rho1.matrix()));
}

double g_function(double x, std::size_t d) {
  if (d < 2) throw Error(Errc::invalid_argument, "g needs d >= 2");
  return x * x + (1.0 - x) * (1.0 - x) / static_cast<double>(d - 1);
}

}  // namespace oneway
