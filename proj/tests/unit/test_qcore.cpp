#include <gtest/gtest.h>

#include <cmath>

#include "expect_errc.hpp"
#include "oneway/qcore.hpp"
#include "oneway/serialize.hpp"
#include "oracles.hpp"

using namespace oneway;

TEST(Qcore, KronUsesFirstFactorAsMostSignificant) {
  const auto v = kron(PureState::basis(2, 0).amplitudes(), PureState::basis(3, 2).amplitudes());
  ASSERT_EQ(v.size(), 6);
  EXPECT_EQ(v(2), Complex(1.0));
  const auto w = kron(PureState::basis(2, 1).amplitudes(), PureState::basis(3, 0).amplitudes());
  EXPECT_EQ(w(3), Complex(1.0));
}

TEST(Qcore, InvSqrtMatchesEigenOracle) {
  oracle::for_all(11, 40, [](Rng& rng, std::size_t) {
    const auto d = oracle::uniform_size(rng, 1, 6);
    const auto m = random_psd(d, rng, oracle::uniform_size(rng, 1, d));
    EXPECT_LT((mat_inv_sqrt(m) - oracle::inv_sqrt(m)).norm(), 1e-8);
    EXPECT_LT((support_projector(m) - oracle::support(m)).norm(), 1e-8);
    const auto b = mat_inv_sqrt(m);
    EXPECT_LT((b * m * b - support_projector(m)).norm(), tol::kProjector);
  });
}

TEST(Qcore, InvSqrtOfDiagonal) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 4.0;
  m(1, 1) = 0.25;
  const auto b = mat_inv_sqrt(m);
  EXPECT_NEAR(b(0, 0).real(), 0.5, 1e-12);
  EXPECT_NEAR(b(1, 1).real(), 2.0, 1e-12);
  EXPECT_NEAR(std::abs(b(2, 2)), 0.0, 1e-12);
  EXPECT_EQ(support_rank(m), 2u);
}

TEST(Qcore, InvSqrtRejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 1.0;
  EXPECT_ERRC(mat_inv_sqrt(m), Errc::invalid_operator);
}

TEST(Qcore, StateValidation) {
  ComplexVector v(2);
  v << 1.0, 1.0;
  EXPECT_ERRC(PureState{v}, Errc::invalid_state);
  EXPECT_NEAR(PureState::normalized(v).amplitudes().norm(), 1.0, 1e-15);
  ComplexMatrix r = ComplexMatrix::Identity(2, 2);
  EXPECT_ERRC(DensityOperator{r}, Errc::invalid_state);
  r(1, 1) = -0.0;
  r(0, 0) = 1.0;
  EXPECT_NO_THROW(DensityOperator{r});
  ComplexMatrix neg(2, 2);
  neg << 1.5, 0.0, 0.0, -0.5;
  EXPECT_ERRC(DensityOperator{neg}, Errc::invalid_state);
}

TEST(Qcore, PovmValidation) {
  const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
  EXPECT_NO_THROW(Povm({0, 1}, {half, half}));
  EXPECT_ERRC(Povm({0, 0}, {half, half}), Errc::invalid_povm);
  EXPECT_ERRC(Povm({0, 1}, {half, 0.4 * ComplexMatrix::Identity(2, 2)}), Errc::invalid_povm);
  EXPECT_ERRC(Povm({0}, {half, half}), Errc::invalid_povm);
  EXPECT_FALSE(Povm({0, 1}, {half, half}).is_projective());
  EXPECT_TRUE(Povm::computational_basis(3).is_projective());
}

TEST(Qcore, TraceDistanceMatchesEigenvalueOracle) {
  oracle::for_all(12, 30, [](Rng& rng, std::size_t) {
    const auto d = oracle::uniform_size(rng, 2, 5);
    const auto a = random_density(d, rng), b = random_density(d, rng);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix() - b.matrix(), Eigen::EigenvaluesOnly);
    EXPECT_NEAR(trace_distance(a, b), 0.5 * es.eigenvalues().cwiseAbs().sum(), 1e-10);
    EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-12);
  });
}

TEST(Qcore, OrthogonalPureStatesAreAtDistanceOne) {
  EXPECT_NEAR(trace_distance(DensityOperator::from_pure(PureState::basis(2, 0)),
                             DensityOperator::from_pure(PureState::basis(2, 1))),
              1.0, 1e-12);
}

TEST(Qcore, CanonicalPurificationReducesToState) {
  oracle::for_all(13, 20, [](Rng& rng, std::size_t) {
    const auto d = oracle::uniform_size(rng, 2, 4);
    const auto rho = random_density(d, rng, oracle::uniform_size(rng, 1, d));
    const auto psi = canonical_purification(rho);
    ASSERT_EQ(psi.dim(), d * d);
    const ComplexMatrix full = psi.amplitudes() * psi.amplitudes().adjoint();
    // Reduce by hand: (ρ_A)_{ij} = Σ_k ψ_{ik} conj(ψ_{jk}).
    ComplexMatrix red = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          red(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
              full(static_cast<Eigen::Index>(i * d + k), static_cast<Eigen::Index>(j * d + k));
    EXPECT_LT((red - rho.matrix()).norm(), 1e-9);
    EXPECT_LT((partial_trace(full, d, d, Subsystem::second) - rho.matrix()).norm(), 1e-9);
  });
}

TEST(Qcore, PartialTraceOfProduct) {
  Rng rng(14);
  const auto a = random_density(2, rng), b = random_density(3, rng);
  const auto ab = a.tensor(b);
  EXPECT_LT((partial_trace(ab, 2, 3, Subsystem::second).matrix() - a.matrix()).norm(), 1e-12);
  EXPECT_LT((partial_trace(ab, 2, 3, Subsystem::first).matrix() - b.matrix()).norm(), 1e-12);
  EXPECT_ERRC(partial_trace(ab.matrix(), 2, 2, Subsystem::first), Errc::dimension_mismatch);
}

TEST(Qcore, NaimarkDilationPreservesProbabilities) {
  oracle::for_all(15, 20, [](Rng& rng, std::size_t) {
    const auto d = oracle::uniform_size(rng, 2, 4);
    const auto povm = random_povm(d, oracle::uniform_size(rng, 2, 4), rng);
    const auto dil = naimark_dilate(povm);
    EXPECT_TRUE(dil.projective.is_projective());
    const ComplexMatrix u = dil.unitary;
    EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm(), 1e-9);
    const auto rho = random_density(d, rng);
    const auto p = povm.probabilities(rho), q = dil.projective.probabilities(dil.embed(rho));
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], q[i], 1e-9);
  });
}

TEST(Qcore, RandomGeneratorsProduceValidObjects) {
  oracle::for_all(16, 10, [](Rng& rng, std::size_t) {
    const auto d = oracle::uniform_size(rng, 2, 5);
    const auto u = random_unitary(d, rng);
    EXPECT_LT((u.adjoint() * u - identity(d)).norm(), 1e-10);
    const auto v = random_isometry(2, d, rng);
    EXPECT_LT((v.adjoint() * v - identity(2)).norm(), 1e-10);
    const auto rank = oracle::uniform_size(rng, 1, d);
    EXPECT_EQ(support_rank(random_density(d, rng, rank).matrix()), rank);
    EXPECT_TRUE(is_hermitian(random_hermitian(d, rng)));
  });
}

TEST(Qcore, MeasureFrequenciesMatchBornRule) {
  Rng rng(17);
  const auto rho = random_density(3, rng);
  const auto povm = random_povm(3, 3, rng);
  const auto p = povm.probabilities(rho);
  std::vector<double> count(3, 0.0);
  const int n = 60000;
  for (int i = 0; i < n; ++i) count[static_cast<std::size_t>(measure(rho, povm, rng))] += 1.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double se = std::sqrt(p[k] * (1 - p[k]) / n);
    EXPECT_NEAR(count[k] / n, p[k], 5 * se + 1e-12);
  }
}

TEST(Qcore, SerializationRoundTripsExactly) {
  Rng rng(18);
  const auto m = random_gaussian_matrix(3, 2, rng);
  EXPECT_EQ(matrix_from_json(nlohmann::json::parse(matrix_to_json(m).dump())), m);
  const auto v = random_gaussian_vector(4, rng);
  EXPECT_EQ(vector_from_json(nlohmann::json::parse(vector_to_json(v).dump())), v);
  const auto p = random_povm(2, 3, rng);
  const auto back = povm_from_json(nlohmann::json::parse(povm_to_json(p).dump()));
  EXPECT_EQ(back.labels(), p.labels());
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(back.elements()[i], p.elements()[i]);
  EXPECT_ERRC(matrix_from_json(nlohmann::json{{"rows", 1}}), Errc::parse);
}
