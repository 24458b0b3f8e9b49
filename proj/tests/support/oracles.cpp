#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace oracle {

using Cplx = std::complex<double>;

void for_all(std::uint64_t seed, std::size_t count, const std::function<void(Rng&, std::size_t)>& prop) {
  for (std::size_t i = 0; i < count; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), 0x7e57u};
    Rng rng(seq);
    prop(rng, i);
  }
}

std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<double> simplex(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& v : w) s += (v = e(rng));
  for (auto& v : w) v /= s;
  return w;
}

std::vector<std::vector<double>> stochastic(std::size_t rows, std::size_t cols, Rng& rng) {
  std::vector<std::vector<double>> m;
  for (std::size_t r = 0; r < rows; ++r) m.push_back(simplex(cols, rng));
  return m;
}

oneway::ClassicalJoint joint(std::size_t nx, std::size_t nc, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(nx * nc);
  double s = 0.0;
  for (auto& v : p) s += (v = u(rng) < 0.2 ? 0.0 : u(rng));
  if (s == 0.0) {
    p[0] = 1.0;
    s = 1.0;
  }
  for (auto& v : p) v /= s;
  return oneway::ClassicalJoint(nx, nc, std::move(p));
}

ComplexMatrix inv_sqrt(const ComplexMatrix& m, double cutoff) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = d(i) > cutoff ? 1.0 / std::sqrt(d(i)) : 0.0;
  return es.eigenvectors() * d.cast<Cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix support(const ComplexMatrix& m, double cutoff) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = d(i) > cutoff ? 1.0 : 0.0;
  return es.eigenvectors() * d.cast<Cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

double min_eig(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double helstrom(double p0, const ComplexMatrix& r0, double p1, const ComplexMatrix& r1) {
  const ComplexMatrix gamma = p0 * r0 - p1 * r1;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (gamma + gamma.adjoint()), Eigen::EigenvaluesOnly);
  double pos = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) pos += std::max(0.0, es.eigenvalues()(i));
  return p1 + pos;
}

double pgm_success(const std::vector<double>& p, const std::vector<ComplexMatrix>& rho) {
  ComplexMatrix a = ComplexMatrix::Zero(rho[0].rows(), rho[0].cols());
  for (std::size_t i = 0; i < p.size(); ++i) a += p[i] * rho[i];
  const ComplexMatrix b = inv_sqrt(a);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * (b * (p[i] * rho[i]) * b * rho[i]).trace().real();
  return s;
}

namespace {

// |⟨ψ|X^a Z^b|ψ⟩|; Y factors only change a global phase of the operator.
double pauli_modulus(const ComplexVector& psi, std::size_t a, std::size_t b) {
  Cplx s = 0.0;
  for (Eigen::Index j = 0; j < psi.size(); ++j) {
    const auto k = static_cast<std::size_t>(j) ^ a;
    const double sign = (std::popcount(b & k) % 2) ? -1.0 : 1.0;
    s += std::conj(psi(j)) * sign * psi(static_cast<Eigen::Index>(k));
  }
  return std::abs(s);
}

}  // namespace

std::vector<ComplexVector> stabilizer_states(std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  const Cplx alphabet[5] = {0.0, 1.0, -1.0, Cplx(0, 1), Cplx(0, -1)};
  std::vector<ComplexVector> out;
  std::vector<int> digit(dim, 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= 5;
  for (std::size_t code = 1; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < dim; ++i) {
      digit[i] = static_cast<int>(c % 5);
      c /= 5;
    }
    // Global phase: the first nonzero amplitude is +1.
    const auto first = std::find_if(digit.begin(), digit.end(), [](int d) { return d != 0; });
    if (*first != 1) continue;
    ComplexVector v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) = alphabet[digit[i]];
    v /= v.norm();
    std::size_t hits = 0;
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = 0; b < dim; ++b) {
        if (pauli_modulus(v, a, b) > 1.0 - 1e-9) ++hits;
      }
    }
    if (hits == dim) out.push_back(v);
  }
  return out;
}

namespace {

double objective(const oneway::ClassicalJoint& j, const std::vector<double>& sigma) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < j.x_size(); ++x) {
    double px = 0.0;
    for (std::size_t c = 0; c < j.c_size(); ++c) px += j(x, c);
    if (px <= 0.0) continue;
    for (std::size_t c = 0; c < j.c_size(); ++c) {
      const double cond = j(x, c) / px;
      if (cond <= 0.0) continue;
      if (sigma[c] <= 0.0) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, std::log2(cond / sigma[c]));
    }
  }
  return worst;
}

}  // namespace

double imax_search(const oneway::ClassicalJoint& j, std::vector<double>* argmin) {
  // Random zero-sum directions, so several tied maxima can be lowered at once.
  const std::size_t k = j.c_size();
  Rng rng(0x1ab5ull + k);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> sigma(k, 1.0 / static_cast<double>(k)), trial(k), dir(k);
  double best = objective(j, sigma);
  for (double step = 0.1; step > 1e-11; step *= 0.5) {
    for (int attempt = 0; attempt < 600; ++attempt) {
      double mean = 0.0;
      for (auto& d : dir) mean += (d = u(rng));
      mean /= static_cast<double>(k);
      bool ok = true;
      for (std::size_t c = 0; c < k; ++c) {
        trial[c] = sigma[c] + step * (dir[c] - mean);
        if (trial[c] < 0.0) ok = false;
      }
      if (!ok) continue;
      const double v = objective(j, trial);
      if (v < best) {
        best = v;
        sigma = trial;
        attempt = 0;
      }
    }
  }
  if (argmin) *argmin = sigma;
  return best;
}

double dmax_bisection(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  double lo = -60.0, hi = 60.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (min_eig(std::exp2(mid) * sigma - rho) >= -1e-12) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::vector<double> rejection_output(const oneway::ClassicalJoint& j, std::size_t x,
                                     const std::vector<double>& sigma, double lambda, std::size_t n) {
  const std::size_t k = j.c_size();
  double px = 0.0;
  for (std::size_t c = 0; c < k; ++c) px += j(x, c);
  std::vector<double> accept_c(k), out(k, 0.0);
  double accept = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double bias = sigma[c] > 0.0 ? (j(x, c) / px) / (std::exp2(lambda) * sigma[c]) : 0.0;
    accept_c[c] = sigma[c] * bias;
    accept += accept_c[c];
  }
  double none_yet = 1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t c = 0; c < k; ++c) out[c] += none_yet * accept_c[c];
    none_yet *= 1.0 - accept;
  }
  for (std::size_t c = 0; c < k; ++c) out[c] += none_yet * sigma[c];
  return out;
}

double quantum_error(const oneway::QuantumOneWayProtocol& qp, const oneway::PartialFunction& f,
                     const oneway::InputDistribution& mu, oneway::ErrorMode mode) {
  double total = 0.0;
  std::vector<double> col_err(f.y_size(), 0.0);
  for (std::size_t x = 0; x < f.x_size(); ++x) {
    for (std::size_t y = 0; y < f.y_size(); ++y) {
      if (!f.defined(x, y)) continue;
      const auto& dec = qp.decoder(y);
      const auto it = std::find(dec.labels().begin(), dec.labels().end(), f(x, y));
      const auto& e = dec.elements()[static_cast<std::size_t>(it - dec.labels().begin())];
      const double err = 1.0 - (e * qp.message_state(x).matrix()).trace().real();
      total += mu(x, y) * err;
      col_err[y] += mu.marginal_x()[x] * err;
    }
  }
  if (mode == oneway::ErrorMode::average) return total;
  return *std::max_element(col_err.begin(), col_err.end());
}

double tv(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

}  // namespace oracle
