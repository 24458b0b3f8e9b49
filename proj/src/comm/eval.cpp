#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "oneway/comm.hpp"
#include "oneway/error.hpp"
#include "oneway/parallel.hpp"

namespace oneway {

namespace {

constexpr std::size_t kChunk = 4096;

void check_alphabets(std::size_t px, std::size_t py, std::size_t pz, const PartialFunction& f,
                     const InputDistribution& mu) {
  if (px != f.x_size() || py != f.y_size() || pz != f.z_size()) {
    throw Error(Errc::dimension_mismatch, "protocol and function alphabets differ");
  }
  mu.require_supported_on(f);
}

double cell_error(const std::vector<double>& dist, int target) {
  return std::clamp(1.0 - dist.at(static_cast<std::size_t>(target)), 0.0, 1.0);
}

double standard_error(double p, std::size_t trials) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

// Counts failures of `p` on `trials` draws of (x, y); draw(rng) yields the pair.
template <typename Draw>
std::size_t count_failures(const ClassicalOneWayProtocol& p, const PartialFunction& f,
                           std::size_t trials, std::uint64_t seed, const Draw& draw) {
  std::mutex mutex;
  std::size_t failures = 0;
  for_each_chunk(trials, kChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Rng rng = make_rng(seed, chunk);
    std::size_t local = 0;
    for (std::size_t t = begin; t < end; ++t) {
      const auto [x, y] = draw(rng);
      const int target = f(x, y);
      if (target == kBottom) continue;
      if (p.execute(x, y, rng).output != target) ++local;
    }
    std::lock_guard lock(mutex);
    failures += local;
  });
  return failures;
}

}  // namespace

double aggregate_error(std::span<const double> cell_err, const InputDistribution& mu,
                       ErrorMode mode, std::size_t* worst_y) {
  const std::size_t nx = mu.x_size(), ny = mu.y_size();
  if (cell_err.size() != nx * ny) throw Error(Errc::dimension_mismatch, "cell error size");
  if (mode == ErrorMode::average) {
    double total = 0.0;
    for (std::size_t i = 0; i < cell_err.size(); ++i) total += mu.weights()[i] * cell_err[i];
    if (worst_y) *worst_y = 0;
    return total;
  }
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t y = 0; y < ny; ++y) {
    double e = 0.0;
    for (std::size_t x = 0; x < nx; ++x) e += mu.marginal_x()[x] * cell_err[x * ny + y];
    if (e > best) {
      best = e;
      arg = y;
    }
  }
  if (worst_y) *worst_y = arg;
  return best;
}

std::vector<double> cell_errors(const QuantumOneWayProtocol& qp, const PartialFunction& f) {
  if (qp.x_size() != f.x_size() || qp.y_size() != f.y_size() || qp.z_size() != f.z_size()) {
    throw Error(Errc::dimension_mismatch, "protocol and function alphabets differ");
  }
  std::vector<double> err(f.x_size() * f.y_size(), 0.0);
  for (std::size_t x = 0; x < f.x_size(); ++x) {
    for (std::size_t y = 0; y < f.y_size(); ++y) {
      if (f.defined(x, y)) err[x * f.y_size() + y] = cell_error(qp.outcome_distribution(x, y), f(x, y));
    }
  }
  return err;
}

ErrorEstimate eval_err(const QuantumOneWayProtocol& qp, const PartialFunction& f,
                       const InputDistribution& mu, ErrorMode mode) {
  check_alphabets(qp.x_size(), qp.y_size(), qp.z_size(), f, mu);
  const auto err = cell_errors(qp, f);
  ErrorEstimate out;
  out.value = aggregate_error(err, mu, mode, &out.worst_y);
  return out;
}

ErrorEstimate eval_err(const ClassicalOneWayProtocol& p, const PartialFunction& f,
                       const InputDistribution& mu, ErrorMode mode, const EvalMethod& method) {
  check_alphabets(p.x_size(), p.y_size(), p.z_size(), f, mu);
  const std::size_t nx = f.x_size(), ny = f.y_size();
  ErrorEstimate out;

  if (std::holds_alternative<ExactMethod>(method)) {
    if (!p.supports_exact()) {
      throw Error(Errc::unsupported_exact, "protocol randomness is not enumerable");
    }
    std::vector<double> err(nx * ny, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) {
        const bool needed = mode == ErrorMode::average ? mu(x, y) > 0.0 : mu.marginal_x()[x] > 0.0;
        if (needed && f.defined(x, y)) err[x * ny + y] = cell_error(p.output_distribution(x, y), f(x, y));
      }
    }
    out.value = aggregate_error(err, mu, mode, &out.worst_y);
    return out;
  }

  const auto& mc = std::get<MonteCarloMethod>(method);
  if (mc.trials == 0) throw Error(Errc::invalid_argument, "Monte Carlo needs at least one trial");
  out.trials = mc.trials;
  if (mode == ErrorMode::average) {
    const AliasSampler cells(mu.weights());
    const std::size_t failures = count_failures(p, f, mc.trials, mc.seed, [&](Rng& rng) {
      const std::size_t c = cells(rng);
      return std::pair{c / ny, c % ny};
    });
    out.value = static_cast<double>(failures) / static_cast<double>(mc.trials);
    out.standard_error = standard_error(out.value, mc.trials);
    return out;
  }

  const AliasSampler xs(mu.marginal_x());
  out.value = -1.0;
  for (std::size_t y = 0; y < ny; ++y) {
    const std::size_t failures =
        count_failures(p, f, mc.trials, derive_seed(mc.seed, y + 1),
                       [&](Rng& rng) { return std::pair{xs(rng), y}; });
    const double e = static_cast<double>(failures) / static_cast<double>(mc.trials);
    if (e > out.value) {
      out.value = e;
      out.worst_y = y;
    }
  }
  out.standard_error = standard_error(out.value, mc.trials);
  return out;
}

}  // namespace oneway
