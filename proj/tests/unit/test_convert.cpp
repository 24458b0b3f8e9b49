#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "expect_errc.hpp"
#include "oneway/app/instances.hpp"
#include "oneway/convert.hpp"
#include "oracles.hpp"

using namespace oneway;

namespace {

// Alice sends |x⟩; Bob measures the computational basis and outputs f(x, y).
QuantumOneWayProtocol perfect_protocol(const PartialFunction& f) {
  const std::size_t dim = std::bit_ceil(f.x_size());
  std::vector<PureState> enc;
  for (std::size_t x = 0; x < f.x_size(); ++x) enc.push_back(PureState::basis(dim, x));
  std::vector<Povm> dec;
  for (std::size_t y = 0; y < f.y_size(); ++y) {
    std::vector<ComplexMatrix> el(f.z_size(), ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                                                  static_cast<Eigen::Index>(dim)));
    for (std::size_t x = 0; x < dim; ++x) {
      const int z = x < f.x_size() && f.defined(x, y) ? f(x, y) : 0;
      el[static_cast<std::size_t>(z)](static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = 1.0;
    }
    std::vector<int> labels(f.z_size());
    std::iota(labels.begin(), labels.end(), 0);
    dec.emplace_back(labels, el);
  }
  return QuantumOneWayProtocol::unentangled(enc, dec, f.z_size());
}

}  // namespace

TEST(Theorem1, BoundFormula) {
  EXPECT_NEAR(theorem1_bound(0.1, 2, 0.02), 0.2, 1e-15);
  EXPECT_NEAR(theorem1_bound(0.0, 3, 0.05), 0.05, 1e-15);
  EXPECT_NEAR(theorem1_bound(2.0 / 3.0, 3, 0.0), 2.0 / 3.0, 1e-15);
}

TEST(Theorem1, PerfectProtocolLosesAtMostEta) {
  Rng rng(61);
  const auto f = app::random_function(4, 3, 3, rng);
  const auto mu = app::random_product_distribution(4, 3, rng);
  const auto qp = perfect_protocol(f);
  auto res = theorem1_convert(qp, f, mu, 0.05, ErrorMode::average);
  EXPECT_NEAR(res.report.epsilon, 0.0, 1e-12);
  EXPECT_NEAR(res.report.pgm_stage_error, 0.0, 1e-9);
  EXPECT_LE(res.report.exact_error, 0.05);
  evaluate_theorem1(res, f, mu, 20000, 3);
  EXPECT_LE(res.report.final_error, 0.05 + 4 * res.report.final_standard_error);
  EXPECT_TRUE(res.report.all_pass());
}

TEST(Theorem1, RequiresProductDistribution) {
  const auto f = PartialFunction::equality(2);
  const auto qp = make_fingerprint_protocol(2, FingerprintCode{2, 0.5});
  const InputDistribution mu(4, 4, {0.25, 0, 0, 0, 0, 0.25, 0, 0, 0, 0, 0.25, 0, 0, 0, 0, 0.25});
  EXPECT_ERRC(theorem1_convert(qp, f, mu, 0.05, ErrorMode::average), Errc::precondition);
  EXPECT_ERRC(pgm_split_check(qp, f, mu), Errc::precondition);
}

TEST(Theorem1, SplitIdentityOnRandomInstances) {
  for (std::size_t i = 0; i < 8; ++i) {
    const auto inst = app::random_product_instance(62, i);
    EXPECT_LE(pgm_split_check(inst.qp, inst.f, inst.mu), 1e-8);
  }
}

TEST(Theorem1, SplitIdentityIsInvariantUnderRelabeling) {
  const auto inst = app::random_product_instance(63, 0);
  const std::size_t nx = inst.f.x_size(), ny = inst.f.y_size();
  std::vector<std::size_t> perm(nx);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::vector<int> table(nx * ny);
  std::vector<double> w(nx * ny);
  std::vector<PureState> enc;
  for (std::size_t x = 0; x < nx; ++x) {
    enc.push_back(*inst.qp.pure_message(perm[x]));
    for (std::size_t y = 0; y < ny; ++y) {
      table[x * ny + y] = inst.f(perm[x], y);
      w[x * ny + y] = inst.mu(perm[x], y);
    }
  }
  std::vector<Povm> dec;
  for (std::size_t y = 0; y < ny; ++y) dec.push_back(inst.qp.decoder(y));
  const auto qp2 = QuantumOneWayProtocol::unentangled(enc, dec, inst.f.z_size());
  const PartialFunction f2(nx, ny, inst.f.z_size(), table);
  const InputDistribution mu2(nx, ny, w);
  EXPECT_NEAR(pgm_split_check(qp2, f2, mu2), pgm_split_check(inst.qp, inst.f, inst.mu), 1e-8);
}

TEST(Theorem1, SingleColumnWithSingletonClasses) {
  Rng rng(64);
  const PartialFunction f(3, 1, 3, {0, 1, 2});
  std::vector<PureState> enc;
  for (int x = 0; x < 3; ++x) enc.push_back(random_pure_state(2, rng));
  const auto qp = QuantumOneWayProtocol::unentangled(enc, {random_povm(2, 3, rng)}, 3);
  const auto mu = app::random_product_distribution(3, 1, rng);
  EXPECT_LE(pgm_split_check(qp, f, mu), 1e-10);
}

TEST(Theorem1, ExactAndMonteCarloAgreeAndMeetBound) {
  for (std::size_t i = 0; i < 4; ++i) {
    const auto inst = app::random_product_instance(65, i);
    auto res = theorem1_convert(inst.qp, inst.f, inst.mu, 0.05, inst.mode);
    EXPECT_EQ(res.report.entangled, inst.qp.is_entangled());
    EXPECT_DOUBLE_EQ(res.report.imax_budget, (inst.qp.is_entangled() ? 2.0 : 1.0) * inst.qp.message_qubits());
    EXPECT_LE(res.report.imax, res.report.imax_budget + 1e-9);
    EXPECT_LE(static_cast<double>(res.report.message_bits), res.report.length_bound);
    EXPECT_LE(res.report.exact_error, res.report.bound + 1e-12);
    evaluate_theorem1(res, inst.f, inst.mu, 20000, 10 + i);
    EXPECT_NEAR(res.report.final_error, res.report.exact_error, 4 * res.report.final_standard_error + 1e-12);
    EXPECT_TRUE(res.report.all_pass());
  }
}

TEST(Theorem1, ReportSerializesVerdicts) {
  const auto inst = app::random_product_instance(66, 0);
  const auto res = theorem1_convert(inst.qp, inst.f, inst.mu, 0.05, inst.mode);
  const auto j = to_json(res.report);
  EXPECT_EQ(j.at("pipeline"), "theorem1");
  for (const auto& c : j.at("checks")) {
    EXPECT_TRUE(c.contains("bound") && c.contains("measured") && c.contains("tolerance"));
    EXPECT_EQ(bound_check_from_json(c), bound_check_from_json(nlohmann::json::parse(c.dump())));
  }
}

TEST(Tilde, FingerprintRanksAndColumnSparsity) {
  const auto f = PartialFunction::equality(3);
  const auto qp = make_fingerprint_protocol(3, FingerprintCode{4, 0.5});
  const auto cols = build_tilde_projectors(qp, f);
  ASSERT_EQ(cols.size(), 8u);
  std::size_t k = 0;
  for (const auto& c : cols) {
    EXPECT_EQ(c.b, 1);
    EXPECT_EQ(c.rank[1], 1u);
    EXPECT_LE(c.rank[0], c.class_size[0]);
    k = std::max(k, std::min(c.rank[0], c.rank[1]));
  }
  EXPECT_EQ(k, column_sparsity(f));
}

TEST(Tilde, PostconditionsOnRandomPureProtocols) {
  oracle::for_all(67, 10, [](Rng& rng, std::size_t) {
    const auto nx = oracle::uniform_size(rng, 2, 6), ny = oracle::uniform_size(rng, 1, 4);
    const auto f = app::random_function(nx, ny, 2, rng);
    std::vector<PureState> enc;
    for (std::size_t x = 0; x < nx; ++x) enc.push_back(random_pure_state(4, rng));
    std::vector<Povm> dec;
    for (std::size_t y = 0; y < ny; ++y) {
      const std::vector<int> assign{0, 1, static_cast<int>(rng() % 2), static_cast<int>(rng() % 2)};
      dec.push_back(projective_from_basis(random_unitary(4, rng), assign, 2));
    }
    const auto qp = QuantumOneWayProtocol::unentangled(enc, dec, 2);
    const auto cols = build_tilde_projectors(qp, f);
    for (std::size_t y = 0; y < ny; ++y) {
      const auto& c = cols[y];
      EXPECT_LE(c.class_size[c.b], c.class_size[1 - c.b]);
      for (int b = 0; b < 2; ++b) {
        const auto& proj = c.projector[b];
        const auto& e = qp.decoder(y).elements()[static_cast<std::size_t>(b)];
        EXPECT_GE(oracle::min_eig(e - proj), -1e-9);
        EXPECT_NEAR(proj.squaredNorm(), static_cast<double>(c.rank[b]), 1e-8);
        EXPECT_LE(c.rank[b], c.class_size[b]);
        for (auto x : f.preimage(y, b)) {
          const auto& v = enc[x].amplitudes();
          EXPECT_NEAR(v.dot(proj * v).real(), v.dot(e * v).real(), 1e-9);
        }
      }
    }
  });
}

TEST(Theorem2, PreconditionAndSizeLimits) {
  const auto f = PartialFunction::equality(3);
  const auto qp = make_fingerprint_protocol(3, FingerprintCode{4, 0.5});
  Rng rng(68);
  const auto mu = app::equality_distribution(3, "correlated", 0.1, rng);
  Theorem2Options opt;
  opt.eta = 0.48;
  EXPECT_ERRC(theorem2_convert(qp, f, mu, opt), Errc::precondition);
  opt.eta = 0.1;
  opt.epsilon_declared = 0.0;
  EXPECT_ERRC(theorem2_convert(qp, f, mu, opt), Errc::precondition);
  opt.epsilon_declared = -1.0;
  opt.purify = true;
  EXPECT_ERRC(theorem2_convert(qp, f, mu, opt), Errc::unsupported_size);
}

TEST(Theorem2, ReportFieldsOnEquality) {
  const auto f = PartialFunction::equality(3);
  const auto qp = make_fingerprint_protocol(3, FingerprintCode{4, 0.5});
  Rng rng(69);
  const auto mu = app::equality_distribution(3, "correlated", 0.1, rng);
  Theorem2Options opt;
  const auto res = theorem2_convert(qp, f, mu, opt);
  const auto& r = res.report;
  EXPECT_FALSE(mu.is_product());
  EXPECT_EQ(r.k, 1u);
  EXPECT_EQ(r.column_sparsity, 1u);
  EXPECT_EQ(r.group_size, 3200u);
  EXPECT_EQ(r.groups, 19u);
  EXPECT_EQ(r.snapshots, 60800u);
  EXPECT_EQ(r.register_qubits, 3u);
  EXPECT_LE(static_cast<double>(r.message_bits), r.message_length_bound);
  EXPECT_GE(r.good_set_mass, 1.0 - opt.eta);
  EXPECT_TRUE(r.all_pass());

  opt.compression = Theorem2Compression::per_snapshot;
  const auto res2 = theorem2_convert(qp, f, mu, opt);
  EXPECT_NEAR(res2.report.snapshot_eta, 0.1 / (2.0 * 60800.0), 1e-18);
  EXPECT_LE(res2.report.snapshot_imax, 3.0 + 1e-9);
  EXPECT_TRUE(res2.report.all_pass());
  const auto j = to_json(res2.report);
  EXPECT_EQ(j.at("compression"), "per-snapshot");
  EXPECT_EQ(j.at("K"), 1);
}

TEST(Theorem2, ShadowProtocolErrorOnSmallInstance) {
  const auto f = PartialFunction::equality(2);
  const auto qp = make_fingerprint_protocol(2, FingerprintCode{2, 0.5});
  Rng rng(70);
  const auto mu = app::equality_distribution(2, "correlated", 0.1, rng);
  Theorem2Options opt;
  opt.eta = 0.2;
  auto res = theorem2_convert(qp, f, mu, opt);
  evaluate_theorem2(res, f, mu, 400, 5);
  EXPECT_LE(res.report.p1_error, 2 * opt.eta + 3 * res.report.p1_standard_error);
  EXPECT_TRUE(res.report.all_pass());
}

TEST(Theorem2, MoreSnapshotsDoNotHurt) {
  const auto f = PartialFunction::equality(2);
  const auto qp = make_fingerprint_protocol(2, FingerprintCode{2, 0.5});
  const auto mu = InputDistribution::uniform(4, 4);
  const auto tilde = build_tilde_projectors(qp, f);
  double prev = 1.0, prev_se = 0.0;
  for (std::size_t group : {2u, 8u, 32u, 128u}) {
    const Theorem2Protocol p(qp, tilde, group, 5, std::nullopt);
    const auto e = eval_err(p, f, mu, ErrorMode::average, MonteCarloMethod{4000, 71});
    EXPECT_LE(e.value, prev + 3 * std::hypot(e.standard_error, prev_se));
    prev = e.value;
    prev_se = e.standard_error;
  }
}
