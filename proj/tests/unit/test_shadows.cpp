#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "expect_errc.hpp"
#include "oneway/shadows.hpp"
#include "oracles.hpp"

using namespace oneway;

namespace {

bool same_ray(const ComplexVector& a, const ComplexVector& b) { return std::abs(a.dot(b)) > 1.0 - 1e-9; }

}  // namespace

TEST(Shadows, CountsMatchFormula) {
  const std::size_t expected[] = {6, 60, 1080, 36720};
  for (std::size_t n = 1; n <= 4; ++n) {
    EXPECT_EQ(stabilizer_count(n), expected[n - 1]);
    EXPECT_EQ(stabilizer_table(n)->size(), expected[n - 1]);
  }
  EXPECT_ERRC(build_stabilizer_table(5), Errc::unsupported_size);
}

TEST(Shadows, TableEqualsBruteForceEnumeration) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto table = stabilizer_table(n);
    const auto brute = oracle::stabilizer_states(n);
    ASSERT_EQ(brute.size(), table->size()) << "n=" << n;
    for (const auto& b : brute) {
      bool found = false;
      for (std::size_t i = 0; i < table->size() && !found; ++i) found = same_ray(b, table->state(i));
      EXPECT_TRUE(found);
    }
    // Duplicate-free.
    for (std::size_t i = 0; i < table->size(); ++i)
      for (std::size_t j = i + 1; j < table->size(); ++j) ASSERT_FALSE(same_ray(table->state(i), table->state(j)));
  }
}

TEST(Shadows, TableIsAOneDesign) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto t = stabilizer_table(n);
    ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(t->dim()), static_cast<Eigen::Index>(t->dim()));
    for (std::size_t i = 0; i < t->size(); ++i) sum += t->state(i) * t->state(i).adjoint();
    const double scale = static_cast<double>(t->size()) / static_cast<double>(t->dim());
    EXPECT_LT((sum - scale * identity(t->dim())).norm(), 1e-8);
  }
}

TEST(Shadows, TableOrderAndChecksumAreStable) {
  const auto a = build_stabilizer_table(2), b = build_stabilizer_table(2);
  EXPECT_EQ(a->checksum(), b->checksum());
  for (std::size_t i = 0; i < a->size(); ++i) EXPECT_EQ(a->state(i), b->state(i));
  EXPECT_NE(stabilizer_table(1)->checksum(), stabilizer_table(2)->checksum());
}

TEST(Shadows, SingleQubitZeroStateDistribution) {
  const auto t = stabilizer_table(1);
  const auto probs = snapshot_distribution(*t, PureState::basis(2, 0));
  for (std::size_t i = 0; i < t->size(); ++i) {
    const auto& s = t->state(i);
    if (same_ray(s, PureState::basis(2, 0).amplitudes())) {
      EXPECT_NEAR(probs[i], 1.0 / 3.0, 1e-12);
    } else if (same_ray(s, PureState::basis(2, 1).amplitudes())) {
      EXPECT_NEAR(probs[i], 0.0, 1e-12);
    } else {
      EXPECT_NEAR(probs[i], 1.0 / 6.0, 1e-12);
    }
  }
}

TEST(Shadows, EmpiricalFrequenciesMatchExactLaw) {
  Rng rng(41);
  const auto psi = random_pure_state(2, rng);
  const auto t = stabilizer_table(1);
  const auto probs = snapshot_distribution(*t, psi);
  const std::size_t n = 100000;
  const auto sample = sample_shadow(psi, n, rng);
  ASSERT_EQ(sample.size(), n);
  std::vector<double> freq(t->size(), 0.0);
  for (auto s : sample.indices) freq[s] += 1.0;
  for (std::size_t i = 0; i < t->size(); ++i) {
    const double se = std::sqrt(probs[i] * (1 - probs[i]) / static_cast<double>(n));
    EXPECT_NEAR(freq[i] / static_cast<double>(n), probs[i], 3 * se + 1e-12);
  }
}

TEST(Shadows, SnapshotEstimateExamples) {
  const auto t = stabilizer_table(1);
  for (std::size_t s = 0; s < t->size(); ++s) EXPECT_NEAR(snapshot_estimate(*t, identity(2), s), 1.0, 1e-12);
  const ComplexMatrix zero = PureState::basis(2, 0).projector();
  for (std::size_t s = 0; s < t->size(); ++s) {
    if (same_ray(t->state(s), PureState::basis(2, 0).amplitudes())) {
      EXPECT_NEAR(snapshot_estimate(*t, zero, s), 2.0, 1e-12);
    }
  }
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  EXPECT_ERRC(snapshot_estimate(*t, bad, 0), Errc::invalid_operator);
}

TEST(Shadows, ExactUnbiasednessAndVariance) {
  oracle::for_all(42, 50, [](Rng& rng, std::size_t i) {
    const std::size_t n = 1 + i % 2;
    const auto t = stabilizer_table(n);
    const auto a = random_hermitian(t->dim(), rng);
    const auto psi = random_pure_state(t->dim(), rng);
    const auto probs = snapshot_distribution(*t, psi);
    double mean = 0.0, second = 0.0;
    for (std::size_t s = 0; s < t->size(); ++s) {
      // Direct formula, independent of the estimator class.
      const double d = (static_cast<double>(t->dim() + 1) * t->state(s).dot(a * t->state(s)) - a.trace()).real();
      mean += probs[s] * d;
      second += probs[s] * d * d;
    }
    const double truth = (psi.amplitudes().dot(a * psi.amplitudes())).real();
    EXPECT_NEAR(mean, truth, 1e-8);
    EXPECT_LE(second - mean * mean, 4.0 * a.squaredNorm());
  });
}

TEST(Shadows, MedianOfMeansRules) {
  const std::vector<double> same(12, 2.5);
  EXPECT_DOUBLE_EQ(median_of_means(same, 4), 2.5);
  const std::vector<double> v{0, 0, 0, 100};
  EXPECT_DOUBLE_EQ(median_of_means(v, 4), 0.0);
  // Trailing remainder dropped: groups {1,2} {3,4}; lower median of {1.5, 3.5}.
  const std::vector<double> w{1, 2, 3, 4, 1000};
  EXPECT_DOUBLE_EQ(median_of_means(w, 2), 1.5);
  EXPECT_ERRC(median_of_means(std::vector<double>{}, 1), Errc::invalid_argument);
}

TEST(Shadows, BudgetArithmetic) {
  const auto b = shadow_budget(1.0, 0.1, 0.1);
  EXPECT_EQ(b.group_size, 3200u);
  EXPECT_EQ(b.groups, 19u);
  EXPECT_EQ(b.total(), 60800u);
  EXPECT_EQ(shadow_budget(0.0, 0.5, 0.5).group_size, 1u);
  EXPECT_ERRC(shadow_budget(1.0, 0.1, 1.0), Errc::invalid_argument);
}

TEST(Shadows, EstimationGuaranteeOnSmallBudget) {
  Rng rng(43);
  const auto t = stabilizer_table(2);
  const auto psi = random_pure_state(4, rng);
  const ComplexMatrix a = PureState::basis(4, 0).projector();
  const double eps = 0.25, delta = 0.2;
  const auto budget = shadow_budget(a.squaredNorm(), eps, delta);
  const SnapshotEstimator est(*t, a);
  const SnapshotSampler sampler(t, psi);
  const double truth = std::norm(psi.amplitudes()(0));
  int good = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const auto s = sampler.sample(budget.total(), rng);
    good += std::abs(est.estimate(s, budget.groups) - truth) <= eps;
  }
  EXPECT_GE(good, static_cast<int>((1 - delta) * reps));
}

TEST(Shadows, FileRoundTripAndChecksumGuard) {
  Rng rng(44);
  const auto s = sample_shadow(random_pure_state(4, rng), 50, rng);
  std::stringstream ss;
  write_shadow(ss, s);
  const std::string text = ss.str();
  std::istringstream in(text);
  EXPECT_EQ(read_shadow(in), s);

  std::string bad = text;
  const auto pos = bad.find('\n', bad.find('\n') + 1) - 1;
  bad[pos] = bad[pos] == '0' ? '1' : '0';
  std::istringstream in2(bad);
  EXPECT_ERRC(read_shadow(in2), Errc::parse);
  std::istringstream in3("not a shadow");
  EXPECT_ERRC(read_shadow(in3), Errc::parse);
}

TEST(Shadows, SamplingIsSeedDeterministic) {
  Rng a(45), b(45);
  const auto psi = PureState::basis(8, 3);
  EXPECT_EQ(sample_shadow(psi, 100, a), sample_shadow(psi, 100, b));
}
