#include "oneway/oneshot.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "oneway/error.hpp"

namespace oneway {

double dmax(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw Error(Errc::dimension_mismatch, "D_max dimensions differ");
  const ComplexMatrix outside = identity(sigma.dim()) - support_projector(sigma.matrix());
  const double residual = (outside * rho.matrix()).norm();
  if (residual > tol::kProjector) {
    throw Error(Errc::infinite_dmax, "supp(rho) is not contained in supp(sigma) (residual " +
                                         std::to_string(residual) + ")");
  }
  const ComplexMatrix b = mat_inv_sqrt(sigma.matrix());
  const auto eig = hermitian_eigen(b * rho.matrix() * b);
  return std::log2(eig.values(eig.values.size() - 1));
}

ClassicalJoint::ClassicalJoint(std::size_t x_size, std::size_t c_size, std::vector<double> p)
    : x_size_(x_size), c_size_(c_size), p_(std::move(p)) {
  if (x_size_ == 0 || c_size_ == 0 || p_.size() != x_size_ * c_size_) {
    throw Error(Errc::dimension_mismatch, "joint table size does not match alphabets");
  }
  double total = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0)) throw Error(Errc::invalid_argument, "joint has a negative entry");
    total += v;
  }
  if (std::abs(total - 1.0) > kTolerance) {
    throw Error(Errc::invalid_argument, "joint sums to " + std::to_string(total));
  }
  px_.assign(x_size_, 0.0);
  cond_.resize(x_size_);
  for (std::size_t x = 0; x < x_size_; ++x) {
    for (std::size_t c = 0; c < c_size_; ++c) px_[x] += (*this)(x, c);
    if (px_[x] > 0.0) {
      cond_[x].resize(c_size_);
      for (std::size_t c = 0; c < c_size_; ++c) cond_[x][c] = (*this)(x, c) / px_[x];
    }
  }
}

ClassicalJoint ClassicalJoint::from_channel(std::span<const double> p_x,
                                            const std::vector<std::vector<double>>& channel) {
  if (channel.size() != p_x.size() || channel.empty()) {
    throw Error(Errc::dimension_mismatch, "channel needs one row per x");
  }
  const std::size_t nc = channel.front().size();
  std::vector<double> p;
  p.reserve(p_x.size() * nc);
  for (std::size_t x = 0; x < p_x.size(); ++x) {
    if (channel[x].size() != nc) throw Error(Errc::dimension_mismatch, "ragged channel");
    for (double q : channel[x]) p.push_back(p_x[x] * q);
  }
  // Renormalize away rounding from the products.
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
  return ClassicalJoint(p_x.size(), nc, std::move(p));
}

std::vector<double> ClassicalJoint::marginal_c() const {
  std::vector<double> out(c_size_, 0.0);
  for (std::size_t x = 0; x < x_size_; ++x) {
    for (std::size_t c = 0; c < c_size_; ++c) out[c] += (*this)(x, c);
  }
  return out;
}

ClassicalJoint ClassicalJoint::post_process(const std::vector<std::vector<double>>& map) const {
  if (map.size() != c_size_ || map.empty()) throw Error(Errc::dimension_mismatch, "map needs one row per c");
  const std::size_t nc2 = map.front().size();
  std::vector<double> p(x_size_ * nc2, 0.0);
  for (std::size_t x = 0; x < x_size_; ++x) {
    for (std::size_t c = 0; c < c_size_; ++c) {
      for (std::size_t k = 0; k < nc2; ++k) p[x * nc2 + k] += (*this)(x, c) * map[c].at(k);
    }
  }
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
  return ClassicalJoint(x_size_, nc2, std::move(p));
}

ImaxResult imax_classical(const ClassicalJoint& j) {
  std::vector<double> peak(j.c_size(), 0.0);
  for (std::size_t x = 0; x < j.x_size(); ++x) {
    if (j.marginal_x()[x] <= 0.0) continue;
    for (std::size_t c = 0; c < j.c_size(); ++c) peak[c] = std::max(peak[c], j.conditional(x)[c]);
  }
  double total = 0.0;
  for (double v : peak) total += v;
  ImaxResult out;
  out.lambda = std::max(0.0, std::log2(total));
  out.sigma = peak;
  for (double& v : out.sigma) v /= total;
  return out;
}

double classical_dmax(const ClassicalJoint& j, std::span<const double> sigma) {
  if (sigma.size() != j.c_size()) throw Error(Errc::dimension_mismatch, "σ size differs from C");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < j.x_size(); ++x) {
    if (j.marginal_x()[x] <= 0.0) continue;
    for (std::size_t c = 0; c < j.c_size(); ++c) {
      const double p = j.conditional(x)[c];
      if (p <= 0.0) continue;
      if (sigma[c] <= 0.0) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, std::log2(p / sigma[c]));
    }
  }
  return worst;
}

double CompressionPlan::rejection_probability() const {
  return std::pow(1.0 - std::exp2(-lambda), static_cast<double>(candidates));
}

double CompressionPlan::length_guarantee() const {
  return lambda + std::log2(std::log(1.0 / eta)) + 2.0;
}

CompressionPlan build_compression_plan(const ClassicalJoint& j, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw Error(Errc::invalid_argument, "compression needs 0 < η < 1");
  const auto im = imax_classical(j);
  CompressionPlan plan;
  plan.eta = eta;
  plan.lambda = im.lambda;
  plan.sigma = im.sigma;
  plan.candidates = static_cast<std::size_t>(std::ceil(std::exp2(im.lambda) * std::log(1.0 / eta)));
  plan.candidates = std::max<std::size_t>(1, plan.candidates);
  plan.message_bits = static_cast<std::size_t>(std::bit_width(plan.candidates));
  const double scale = std::exp2(im.lambda);
  plan.bias.resize(j.x_size());
  for (std::size_t x = 0; x < j.x_size(); ++x) {
    if (j.marginal_x()[x] <= 0.0) continue;
    plan.bias[x].resize(j.c_size());
    for (std::size_t c = 0; c < j.c_size(); ++c) {
      const double p = j.conditional(x)[c];
      const double b = p == 0.0 ? 0.0 : p / (scale * plan.sigma[c]);
      if (b > 1.0 + 1e-12) {
        throw Error(Errc::plan_inconsistency, "acceptance bias " + std::to_string(b) + " exceeds 1");
      }
      plan.bias[x][c] = std::min(1.0, b);
    }
  }
  return plan;
}

CandidateStream::CandidateStream(const std::vector<double>& sigma) : alias_(sigma) {}

std::size_t CandidateStream::candidate(const PublicCoins& coins, std::size_t i) const {
  return alias_.sample(coins.uniform(2 * i), coins.uniform(2 * i + 1));
}

CompressionEncoder::CompressionEncoder(const CompressionPlan& plan)
    : candidates_(plan.candidates), bias_(plan.bias), stream_(plan.sigma) {}

std::uint32_t CompressionEncoder::encode(std::size_t x, const PublicCoins& coins,
                                         Rng& private_rng) const {
  const auto& bias = bias_.at(x);
  if (bias.empty()) throw Error(Errc::precondition, "input x has zero probability");
  for (std::size_t i = 1; i <= candidates_; ++i) {
    if (uniform01(private_rng) < bias[stream_.candidate(coins, i)]) return static_cast<std::uint32_t>(i);
  }
  return 0;
}

CompressionDecoder::CompressionDecoder(std::vector<double> sigma, std::size_t candidates)
    : candidates_(candidates), stream_(sigma) {}

std::size_t CompressionDecoder::decode(std::uint32_t message, const PublicCoins& coins) const {
  if (message > candidates_) throw Error(Errc::invalid_argument, "message index out of range");
  return stream_.candidate(coins, message == 0 ? candidates_ + 1 : message);
}

CompressionRun run_compression(const CompressionPlan& plan, std::size_t x, Rng& rng) {
  const PublicCoins coins{rng()};
  CompressionRun run;
  run.message = CompressionEncoder(plan).encode(x, coins, rng);
  run.bits = plan.message_bits;
  run.decoded = CompressionDecoder(plan.sigma, plan.candidates).decode(run.message, coins);
  return run;
}

std::vector<double> compressed_conditional(const CompressionPlan& plan, const ClassicalJoint& j,
                                           std::size_t x) {
  const double q = plan.rejection_probability();
  std::vector<double> out(j.c_size());
  for (std::size_t c = 0; c < j.c_size(); ++c) {
    out[c] = (1.0 - q) * j.conditional(x).at(c) + q * plan.sigma[c];
  }
  return out;
}

double compression_tv(const CompressionPlan& plan, const ClassicalJoint& j) {
  double tv = 0.0;
  for (std::size_t x = 0; x < j.x_size(); ++x) {
    if (j.marginal_x()[x] <= 0.0) continue;
    const auto out = compressed_conditional(plan, j, x);
    for (std::size_t c = 0; c < j.c_size(); ++c) tv += j.marginal_x()[x] * std::abs(out[c] - j.conditional(x)[c]);
  }
  return 0.5 * tv;
}

}  // namespace oneway
