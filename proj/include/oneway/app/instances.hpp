#pragma once

// Seeded problem instances shared by the runner and the verify suites.

#include <cstddef>
#include <cstdint>
#include <string>

#include "oneway/comm.hpp"

namespace oneway::app {

struct ProductInstance {
  PartialFunction f;
  InputDistribution mu;
  QuantumOneWayProtocol qp;
  ErrorMode mode;
};

/// Random total f with d ∈ {2, 3} and |X|, |Y| ∈ [2, 8], a random product μ and
/// a random protocol of at most three message qubits. Index i cycles through
/// (unentangled, entangled) × (average, worst-case-y).
ProductInstance random_product_instance(std::uint64_t seed, std::size_t index);

/// Random total function table.
PartialFunction random_function(std::size_t x_size, std::size_t y_size, std::size_t z_size, Rng& rng);

/// Random product distribution with every weight positive.
InputDistribution random_product_distribution(std::size_t x_size, std::size_t y_size, Rng& rng);

/// Distributions over {0,1}^bits × {0,1}^bits for EQUALITY:
/// "uniform", "product-random", or "correlated" (mass 1 − w on the diagonal,
/// w spread evenly off it).
InputDistribution equality_distribution(std::size_t bits, const std::string& kind, double offdiag_mass,
                                        Rng& rng);

}  // namespace oneway::app
