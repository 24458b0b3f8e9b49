#include "oneway/app/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oneway/app/instances.hpp"
#include "oneway/convert.hpp"
#include "oneway/error.hpp"
#include "oneway/oneshot.hpp"
#include "oneway/pgm.hpp"
#include "oneway/shadows.hpp"

namespace oneway::app {

namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<double> random_simplex(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& v : w) {
    v = -std::log(1.0 - uniform01(rng));
    total += v;
  }
  for (auto& v : w) v /= total;
  return w;
}

ClassicalJoint random_joint(Rng& rng) {
  const std::size_t nx = pick(rng, 2, 6), nc = pick(rng, 2, 6);
  std::vector<double> p(nx * nc);
  double total = 0.0;
  for (auto& v : p) {
    // Some exact zeros so supports differ between rows.
    v = uniform01(rng) < 0.2 ? 0.0 : uniform01(rng);
    total += v;
  }
  if (total == 0.0) {
    p[0] = 1.0;
    total = 1.0;
  }
  for (auto& v : p) v /= total;
  return ClassicalJoint(nx, nc, std::move(p));
}

std::vector<std::vector<double>> random_stochastic(std::size_t rows, std::size_t cols, Rng& rng) {
  std::vector<std::vector<double>> m(rows);
  for (auto& r : m) r = random_simplex(cols, rng);
  return m;
}

SuiteResult qcore_suite(std::uint64_t seed) {
  Rng rng = make_rng(seed, 1);
  SuiteResult s{"qcore", {}};
  double inv = 0.0, sym = 0.0, tri = 0.0, pur = 0.0, nai = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = pick(rng, 2, 6);
    const ComplexMatrix m = random_psd(d, rng, pick(rng, 1, d));
    const ComplexMatrix b = mat_inv_sqrt(m);
    inv = std::max(inv, (b * m * b - support_projector(m)).norm());

    const auto a = random_density(d, rng), bb = random_density(d, rng), c = random_density(d, rng);
    sym = std::max(sym, std::abs(trace_distance(a, bb) - trace_distance(bb, a)));
    tri = std::max(tri, trace_distance(a, c) - trace_distance(a, bb) - trace_distance(bb, c));

    const auto rho = random_density(d, rng, pick(rng, 1, d));
    const auto psi = canonical_purification(rho);
    const auto red = partial_trace(DensityOperator::from_pure(psi), d, d, Subsystem::second);
    pur = std::max(pur, (red.matrix() - rho.matrix()).norm());

    const auto povm = random_povm(d, pick(rng, 2, 4), rng);
    const auto dil = naimark_dilate(povm);
    const auto p0 = povm.probabilities(rho);
    const auto p1 = dil.projective.probabilities(dil.embed(rho));
    for (std::size_t k = 0; k < p0.size(); ++k) nai = std::max(nai, std::abs(p0[k] - p1[k]));
  }
  s.rows.push_back(BoundCheck::at_most("inv-sqrt support projector deviation", inv, 0.0, tol::kProjector));
  s.rows.push_back(BoundCheck::at_most("trace distance symmetry", sym, 0.0, 1e-12));
  s.rows.push_back(BoundCheck::at_most("trace distance triangle violation", tri, 0.0, 1e-9));
  s.rows.push_back(BoundCheck::at_most("partial trace of canonical purification", pur, 0.0, tol::kProjector));
  s.rows.push_back(BoundCheck::at_most("Naimark probability deviation", nai, 0.0, tol::kValidation));
  return s;
}

SuiteResult pgm_suite(std::uint64_t seed) {
  Rng rng = make_rng(seed, 2);
  SuiteResult s{"pgm", {}};
  double binary = -1.0, general = -1.0, completeness = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = pick(rng, 2, 3);
    const double p0 = 0.05 + 0.9 * uniform01(rng);
    const auto r0 = random_density(d, rng, pick(rng, 1, d)), r1 = random_density(d, rng, pick(rng, 1, d));
    const Ensemble e(CqState({p0, 1.0 - p0}, {r0, r1}));
    const auto pgm = build_pgm(e);
    binary = std::max(binary, g_function(helstrom_opt(p0, r0, 1.0 - p0, r1), 2) - guess_prob(e, pgm));
    ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (const auto& el : pgm.elements()) sum += el;
    completeness = std::max(completeness, (sum - identity(d)).norm());
  }
  for (int i = 0; i < 100; ++i) {
    const std::size_t k = pick(rng, 3, 4), d = pick(rng, 2, 4);
    const auto w = random_simplex(k, rng);
    std::vector<DensityOperator> states;
    for (std::size_t j = 0; j < k; ++j) states.push_back(random_density(d, rng, pick(rng, 1, d)));
    const Ensemble e(CqState(w, states));
    const double p_pgm = guess_prob(e, build_pgm(e));
    for (int t = 0; t < 20; ++t) {
      const double p = guess_prob(e, random_povm(d, k, rng));
      if (p >= 1.0 / static_cast<double>(k)) general = std::max(general, g_function(p, k) - p_pgm);
    }
    general = std::max(general, g_function(p_pgm, k) - p_pgm);
  }
  s.rows.push_back(BoundCheck::at_most("g(p_opt) <= p_pgm", binary, 0.0, 1e-9));
  s.rows.push_back(BoundCheck::at_most("g(p) <= p_pgm for measurements with p >= 1/d", general, 0.0, 1e-9));
  s.rows.push_back(BoundCheck::at_most("PGM completeness", completeness, 0.0, tol::kValidation));
  return s;
}

SuiteResult shadows_suite(std::uint64_t seed) {
  Rng rng = make_rng(seed, 3);
  SuiteResult s{"shadows", {}};
  for (std::size_t n = 1; n <= kMaxShadowQubits; ++n) {
    const auto table = stabilizer_table(n);
    const double diff = std::abs(static_cast<double>(table->size()) - static_cast<double>(stabilizer_count(n)));
    s.rows.push_back(BoundCheck::at_most("stabilizer count n=" + std::to_string(n) + " matches formula", diff, 0.0, 0.0));
    s.rows.push_back(BoundCheck::at_most("index bits n=" + std::to_string(n) + " <= 2n^2+3n",
                                         static_cast<double>(table->index_bits()),
                                         static_cast<double>(2 * n * n + 3 * n), 0.0));
    if (n <= 3) {
      ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(table->dim()), static_cast<Eigen::Index>(table->dim()));
      for (std::size_t i = 0; i < table->size(); ++i) sum += table->state(i) * table->state(i).adjoint();
      const double scale = static_cast<double>(table->size()) / static_cast<double>(table->dim());
      s.rows.push_back(BoundCheck::at_most("1-design deviation n=" + std::to_string(n),
                                           (sum - scale * identity(table->dim())).norm(), 0.0, tol::kProjector));
    }
  }
  double bias = 0.0, ratio = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 2);
    const auto table = stabilizer_table(n);
    const ComplexMatrix a = random_hermitian(table->dim(), rng);
    const auto psi = random_pure_state(table->dim(), rng);
    const auto probs = snapshot_distribution(*table, psi);
    const SnapshotEstimator est(*table, a);
    double mean = 0.0, second = 0.0;
    for (std::size_t k = 0; k < table->size(); ++k) {
      mean += probs[k] * est(k);
      second += probs[k] * est(k) * est(k);
    }
    const double truth = DensityOperator::from_pure(psi).expectation(a);
    bias = std::max(bias, std::abs(mean - truth));
    ratio = std::max(ratio, (second - mean * mean) / (4.0 * a.squaredNorm()));
  }
  s.rows.push_back(BoundCheck::at_most("exact unbiasedness max deviation", bias, 0.0, tol::kProjector));
  s.rows.push_back(BoundCheck::at_most("exact variance / (4 ||A||_F^2)", ratio, 1.0, 0.0));
  return s;
}

SuiteResult oneshot_suite(std::uint64_t seed) {
  Rng rng = make_rng(seed, 4);
  SuiteResult s{"oneshot", {}};
  double attain = 0.0, beaten = -1.0, mono = -1.0, dim = -1.0, reject = -1.0, length = -1.0;
  for (int i = 0; i < 50; ++i) {
    const auto j = random_joint(rng);
    const auto im = imax_classical(j);
    attain = std::max(attain, std::abs(classical_dmax(j, im.sigma) - im.lambda));
    for (int t = 0; t < 200; ++t) beaten = std::max(beaten, im.lambda - classical_dmax(j, random_simplex(j.c_size(), rng)));
    const auto post = j.post_process(random_stochastic(j.c_size(), pick(rng, 2, 6), rng));
    mono = std::max(mono, imax_classical(post).lambda - im.lambda);
    dim = std::max(dim, im.lambda - std::log2(static_cast<double>(std::min(j.x_size(), j.c_size()))));
    const double eta = 0.01 + 0.3 * uniform01(rng);
    const auto plan = build_compression_plan(j, eta);
    reject = std::max(reject, plan.rejection_probability() - eta);
    length = std::max(length, static_cast<double>(plan.message_bits) - plan.length_guarantee());
  }
  s.rows.push_back(BoundCheck::at_most("closed form attains D_max at sigma*", attain, 0.0, 1e-9));
  s.rows.push_back(BoundCheck::at_most("no sampled sigma beats the closed form", beaten, 0.0, 1e-9));
  s.rows.push_back(BoundCheck::at_most("I_max monotone under post-processing", mono, 0.0, 1e-9));
  s.rows.push_back(BoundCheck::at_most("I_max <= log2 min(|X|,|C|)", dim, 0.0, 1e-9));
  s.rows.push_back(BoundCheck::at_most("rejection probability <= eta", reject, 0.0, 0.0));
  s.rows.push_back(BoundCheck::at_most("message bits <= lambda + log2 ln(1/eta) + 2", length, 0.0, 0.0));
  return s;
}

SuiteResult convert_suite(std::uint64_t seed) {
  SuiteResult s{"convert", {}};
  double split = 0.0, excess = -1.0, length = -1.0;
  for (std::size_t i = 0; i < 20; ++i) {
    const auto inst = random_product_instance(derive_seed(seed, 5), i);
    split = std::max(split, pgm_split_check(inst.qp, inst.f, inst.mu));
    const auto res = theorem1_convert(inst.qp, inst.f, inst.mu, 0.05, inst.mode);
    excess = std::max(excess, res.report.exact_error - res.report.bound);
    length = std::max(length, static_cast<double>(res.report.message_bits) - res.report.length_bound);
  }
  s.rows.push_back(BoundCheck::at_most("PGM splitting identity deviation", split, 0.0, tol::kProjector));
  s.rows.push_back(BoundCheck::at_most("Theorem 1 exact error minus bound", excess, 0.0, 1e-9));
  s.rows.push_back(BoundCheck::at_most("Theorem 1 message bits minus length bound", length, 0.0, 0.0));

  Rng rng = make_rng(seed, 6);
  const auto f = PartialFunction::equality(3);
  const auto mu = equality_distribution(3, "correlated", 0.1, rng);
  const auto qp = make_fingerprint_protocol(3, FingerprintCode{4, 0.5});
  Theorem2Options opt;
  opt.eta = 0.1;
  const auto res = theorem2_convert(qp, f, mu, opt);
  s.rows.push_back(BoundCheck::at_most("Theorem 2 |K - CS(f)| on EQUALITY(3)",
                                       std::abs(static_cast<double>(res.report.k) -
                                                static_cast<double>(res.report.column_sparsity)),
                                       0.0, 0.0));
  s.rows.push_back(BoundCheck::at_least("Theorem 2 good-set mass", res.report.good_set_mass, 1.0 - opt.eta, 1e-12));
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"qcore", "pgm", "shadows", "oneshot", "convert"};
  return names;
}

std::vector<SuiteResult> run_suites(const std::string& name, std::uint64_t seed) {
  auto one = [&](const std::string& n) -> SuiteResult {
    if (n == "qcore") return qcore_suite(seed);
    if (n == "pgm") return pgm_suite(seed);
    if (n == "shadows") return shadows_suite(seed);
    if (n == "oneshot") return oneshot_suite(seed);
    if (n == "convert") return convert_suite(seed);
    throw Error(Errc::invalid_argument, "unknown suite '" + n + "'");
  };
  if (name == "all") {
    std::vector<SuiteResult> out;
    for (const auto& n : suite_names()) out.push_back(one(n));
    return out;
  }
  return {one(name)};
}

}  // namespace oneway::app
