#include "oneway/app/instances.hpp"

#include <string>

#include "oneway/error.hpp"

namespace oneway::app {

namespace {

std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<double> positive_weights(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& v : w) {
    v = 0.05 + uniform01(rng);
    total += v;
  }
  for (auto& v : w) v /= total;
  return w;
}

}  // namespace

PartialFunction random_function(std::size_t x_size, std::size_t y_size, std::size_t z_size, Rng& rng) {
  std::vector<int> table(x_size * y_size);
  for (auto& v : table) v = static_cast<int>(uniform_int(rng, 0, z_size - 1));
  return PartialFunction(x_size, y_size, z_size, std::move(table));
}

InputDistribution random_product_distribution(std::size_t x_size, std::size_t y_size, Rng& rng) {
  const auto wx = positive_weights(x_size, rng);
  const auto wy = positive_weights(y_size, rng);
  return InputDistribution::product(wx, wy);
}

ProductInstance random_product_instance(std::uint64_t seed, std::size_t index) {
  Rng rng = make_rng(seed, index);
  const std::size_t d = uniform_int(rng, 2, 3);
  const std::size_t nx = uniform_int(rng, 2, 8), ny = uniform_int(rng, 2, 8);
  auto f = random_function(nx, ny, d, rng);
  auto mu = random_product_distribution(nx, ny, rng);
  const bool entangled = (index / 2) % 2 == 1;
  const ErrorMode mode = index % 2 == 0 ? ErrorMode::average : ErrorMode::worst_case_y;

  RandomProtocolShape shape;
  shape.decoder_candidates = 8;
  if (entangled) {
    shape.message_dim = 2;
    shape.shared_dim_a = 2;
    shape.shared_dim_b = 2;
    shape.residual_dim = 2;
  } else {
    shape.message_dim = std::size_t{1} << uniform_int(rng, 1, 3);
  }
  const double target = 1.0 - 1.0 / static_cast<double>(d);
  auto qp = make_random_protocol(f, mu, shape, target, mode, rng);
  return ProductInstance{std::move(f), std::move(mu), std::move(qp), mode};
}

InputDistribution equality_distribution(std::size_t bits, const std::string& kind, double offdiag_mass,
                                        Rng& rng) {
  const std::size_t n = std::size_t{1} << bits;
  if (kind == "uniform") return InputDistribution::uniform(n, n);
  if (kind == "product-random") return random_product_distribution(n, n, rng);
  if (kind == "correlated") {
    std::vector<double> w(n * n, offdiag_mass / static_cast<double>(n * (n - 1)));
    for (std::size_t x = 0; x < n; ++x) w[x * n + x] = (1.0 - offdiag_mass) / static_cast<double>(n);
    double total = 0.0;
    for (double v : w) total += v;
    for (double& v : w) v /= total;
    return InputDistribution(n, n, std::move(w));
  }
  throw Error(Errc::configuration, "unknown distribution '" + kind + "'");
}

}  // namespace oneway::app
