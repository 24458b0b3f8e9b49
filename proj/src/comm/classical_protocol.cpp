#include <bit>
#include <cmath>
#include <string>

#include "oneway/comm.hpp"
#include "oneway/error.hpp"

namespace oneway {

namespace {

std::size_t bits_for(std::size_t symbols) {
  return symbols <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(symbols - 1));
}

class InnerProductEquality final : public ClassicalOneWayProtocol {
 public:
  InnerProductEquality(std::size_t bits, std::size_t repetitions)
      : bits_(bits), reps_(repetitions) {}

  std::size_t x_size() const override { return std::size_t{1} << bits_; }
  std::size_t y_size() const override { return x_size(); }
  std::size_t z_size() const override { return 2; }
  std::size_t max_message_bits() const override { return reps_; }

  Message send(std::size_t x, const PublicCoins& coins, Rng&) const override {
    Message m;
    m.bits = reps_;
    for (std::size_t k = 0; k < reps_; ++k) m.symbols.push_back(parity(x, coins, k));
    return m;
  }

  int receive(const Message& message, const PublicCoins& coins, std::size_t y) const override {
    for (std::size_t k = 0; k < reps_; ++k) {
      if (message.symbols.at(k) != parity(y, coins, k)) return 0;
    }
    return 1;
  }

  bool supports_exact() const override { return true; }

  // Repetitions are independent, so the acceptance probability is the k-th power
  // of the single-vector acceptance, enumerated over all r in {0,1}^bits.
  std::vector<double> output_distribution(std::size_t x, std::size_t y) const override {
    const std::size_t n = x_size();
    std::size_t agree = 0;
    for (std::size_t r = 0; r < n; ++r) {
      agree += (std::popcount(x & r) & 1U) == (std::popcount(y & r) & 1U) ? 1 : 0;
    }
    const double accept =
        std::pow(static_cast<double>(agree) / static_cast<double>(n), static_cast<double>(reps_));
    return {1.0 - accept, accept};
  }

 private:
  std::uint32_t parity(std::size_t v, const PublicCoins& coins, std::size_t k) const {
    const std::uint64_t r = coins.word(k) & ((std::uint64_t{1} << bits_) - 1);
    return static_cast<std::uint32_t>(std::popcount(v & r) & 1U);
  }

  std::size_t bits_;
  std::size_t reps_;
};

}  // namespace

std::vector<double> ClassicalOneWayProtocol::output_distribution(std::size_t, std::size_t) const {
  throw Error(Errc::unsupported_exact, "protocol randomness is not enumerable");
}

Transcript ClassicalOneWayProtocol::execute(std::size_t x, std::size_t y, Rng& rng) const {
  const PublicCoins coins = draw_coins(rng);
  Transcript t;
  t.message = send(x, coins, rng);
  if (t.message.bits > max_message_bits()) {
    throw Error(Errc::internal_consistency,
                "message of " + std::to_string(t.message.bits) + " bits exceeds declared " +
                    std::to_string(max_message_bits()));
  }
  t.output = receive(t.message, coins, y);
  return t;
}

EnumerableProtocol::EnumerableProtocol(std::size_t x_size, std::size_t y_size, std::size_t z_size,
                                       std::vector<double> r_weights, std::size_t max_bits,
                                       MessageFn message, OutputFn output)
    : x_size_(x_size),
      y_size_(y_size),
      z_size_(z_size),
      r_weights_(std::move(r_weights)),
      r_sampler_(r_weights_),
      max_bits_(max_bits),
      message_(std::move(message)),
      output_(std::move(output)) {}

PublicCoins EnumerableProtocol::draw_coins(Rng& rng) const { return PublicCoins{r_sampler_(rng)}; }

Message EnumerableProtocol::send(std::size_t x, const PublicCoins& coins, Rng&) const {
  return message_(x, static_cast<std::size_t>(coins.key));
}

int EnumerableProtocol::receive(const Message& message, const PublicCoins& coins,
                                std::size_t y) const {
  return output_(message, static_cast<std::size_t>(coins.key), y);
}

std::vector<double> EnumerableProtocol::output_distribution(std::size_t x, std::size_t y) const {
  std::vector<double> out(z_size_, 0.0);
  for (std::size_t r = 0; r < r_weights_.size(); ++r) {
    if (r_weights_[r] == 0.0) continue;
    const int z = output_(message_(x, r), r, y);
    out.at(static_cast<std::size_t>(z)) += r_weights_[r];
  }
  return out;
}

EnumerableProtocol make_oracle_protocol(const PartialFunction& f) {
  return EnumerableProtocol(
      f.x_size(), f.y_size(), f.z_size(), {1.0}, bits_for(f.x_size()),
      [bits = bits_for(f.x_size())](std::size_t x, std::size_t) {
        return Message{{static_cast<std::uint32_t>(x)}, bits};
      },
      [f](const Message& m, std::size_t, std::size_t y) {
        const int z = f(m.symbols.at(0), y);
        return z == kBottom ? 0 : z;
      });
}

EnumerableProtocol make_uniform_guess_protocol(std::size_t x_size, std::size_t y_size,
                                               std::size_t z_size) {
  return EnumerableProtocol(
      x_size, y_size, z_size, std::vector<double>(z_size, 1.0 / static_cast<double>(z_size)), 0,
      [](std::size_t, std::size_t) { return Message{}; },
      [](const Message&, std::size_t r, std::size_t) { return static_cast<int>(r); });
}

std::unique_ptr<ClassicalOneWayProtocol> make_inner_product_equality_protocol(
    std::size_t bits, std::size_t repetitions) {
  if (bits == 0 || bits > 16 || repetitions == 0 || repetitions > 64) {
    throw Error(Errc::invalid_argument, "inner-product protocol needs 1..16 bits, 1..64 repetitions");
  }
  return std::make_unique<InnerProductEquality>(bits, repetitions);
}

}  // namespace oneway
