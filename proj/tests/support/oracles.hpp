#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's numerical routines; only its data types are shared.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oneway/comm.hpp"
#include "oneway/oneshot.hpp"
#include "oneway/qcore.hpp"

namespace oracle {

using oneway::ComplexMatrix;
using oneway::ComplexVector;
using oneway::Rng;

// Seeded generators ---------------------------------------------------------

/// Runs `prop(rng, i)` for `count` cases, each with its own stream of `seed`.
void for_all(std::uint64_t seed, std::size_t count, const std::function<void(Rng&, std::size_t)>& prop);

std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi);
std::vector<double> simplex(std::size_t n, Rng& rng);
std::vector<std::vector<double>> stochastic(std::size_t rows, std::size_t cols, Rng& rng);
/// Random joint table with about a fifth of the entries zero.
oneway::ClassicalJoint joint(std::size_t nx, std::size_t nc, Rng& rng);

// Linear algebra ------------------------------------------------------------

/// Pseudo-inverse square root from a direct eigendecomposition.
ComplexMatrix inv_sqrt(const ComplexMatrix& m, double cutoff = 1e-10);
ComplexMatrix support(const ComplexMatrix& m, double cutoff = 1e-10);
double min_eig(const ComplexMatrix& m);

// Discrimination ------------------------------------------------------------

/// p1 + Σ of positive eigenvalues of p0ρ0 − p1ρ1 (projector onto the positive part).
double helstrom(double p0, const ComplexMatrix& r0, double p1, const ComplexMatrix& r1);
/// Σ_x p_x Tr(E_x ρ_x) with E_x = A^{-1/2} p_x ρ_x A^{-1/2}, kernel ignored.
double pgm_success(const std::vector<double>& p, const std::vector<ComplexMatrix>& rho);

// Stabilizer states ---------------------------------------------------------

/// All n-qubit stabilizer states (n ≤ 3) by brute force: vectors with entries in
/// {0, ±1, ±i} whose Pauli expectation moduli equal 1 for exactly 2^n Paulis.
std::vector<ComplexVector> stabilizer_states(std::size_t n);

// Information measures ------------------------------------------------------

/// min over the σ simplex of max_{x,c} log2 p(c|x)/σ(c), by pattern search.
double imax_search(const oneway::ClassicalJoint& j, std::vector<double>* argmin = nullptr);
/// Smallest λ with 2^λ σ − ρ ⪰ 0, by bisection (tolerance 1e-9).
double dmax_bisection(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Output law of the rejection-sampling simulation for input x, by summing over
/// the index of the first accepted candidate.
std::vector<double> rejection_output(const oneway::ClassicalJoint& j, std::size_t x,
                                     const std::vector<double>& sigma, double lambda, std::size_t n);

// Protocols -----------------------------------------------------------------

/// Exact error from Tr(E ρ) computed with plain matrix products.
double quantum_error(const oneway::QuantumOneWayProtocol& qp, const oneway::PartialFunction& f,
                     const oneway::InputDistribution& mu, oneway::ErrorMode mode);

/// Total variation between two distributions of the same size.
double tv(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace oracle
