#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "oneway/comm.hpp"
#include "oneway/error.hpp"

namespace oneway {

PartialFunction::PartialFunction(std::size_t x_size, std::size_t y_size, std::size_t z_size,
                                 std::vector<int> table)
    : x_size_(x_size), y_size_(y_size), z_size_(z_size), table_(std::move(table)) {
  if (x_size_ == 0 || y_size_ == 0 || z_size_ == 0) {
    throw Error(Errc::invalid_argument, "alphabets must be nonempty");
  }
  if (table_.size() != x_size_ * y_size_) {
    throw Error(Errc::dimension_mismatch, "table has " + std::to_string(table_.size()) +
                                              " entries, expected " +
                                              std::to_string(x_size_ * y_size_));
  }
  for (int v : table_) {
    if (v != kBottom && (v < 0 || static_cast<std::size_t>(v) >= z_size_)) {
      throw Error(Errc::invalid_argument, "table entry " + std::to_string(v) + " is not a label");
    }
  }
}

PartialFunction PartialFunction::equality(std::size_t bits) {
  if (bits == 0 || bits > 16) throw Error(Errc::invalid_argument, "equality needs 1..16 bits");
  const std::size_t n = std::size_t{1} << bits;
  std::vector<int> table(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) table[x * n + x] = 1;
  return PartialFunction(n, n, 2, std::move(table));
}

std::vector<std::size_t> PartialFunction::preimage(std::size_t y, int z) const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < x_size_; ++x) {
    if ((*this)(x, y) == z) out.push_back(x);
  }
  return out;
}

bool PartialFunction::is_total() const {
  return std::none_of(table_.begin(), table_.end(), [](int v) { return v == kBottom; });
}

PartialFunction PartialFunction::with_cell(std::size_t x, std::size_t y, int value) const {
  auto table = table_;
  table.at(x * y_size_ + y) = value;
  return PartialFunction(x_size_, y_size_, z_size_, std::move(table));
}

InputDistribution::InputDistribution(std::size_t x_size, std::size_t y_size,
                                     std::vector<double> weights)
    : x_size_(x_size), y_size_(y_size), weights_(std::move(weights)) {
  if (weights_.size() != x_size_ * y_size_ || weights_.empty()) {
    throw Error(Errc::dimension_mismatch, "distribution size does not match alphabets");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw Error(Errc::invalid_argument, "negative distribution weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kTolerance) {
    throw Error(Errc::invalid_argument, "distribution sums to " + std::to_string(total));
  }
  marginal_x_.assign(x_size_, 0.0);
  marginal_y_.assign(y_size_, 0.0);
  for (std::size_t x = 0; x < x_size_; ++x) {
    for (std::size_t y = 0; y < y_size_; ++y) {
      marginal_x_[x] += (*this)(x, y);
      marginal_y_[y] += (*this)(x, y);
    }
  }
  product_ = true;
  for (std::size_t x = 0; x < x_size_ && product_; ++x) {
    for (std::size_t y = 0; y < y_size_; ++y) {
      if (std::abs((*this)(x, y) - marginal_x_[x] * marginal_y_[y]) > kTolerance) {
        product_ = false;
        break;
      }
    }
  }
}

InputDistribution InputDistribution::product(std::span<const double> mu_x,
                                             std::span<const double> mu_y) {
  std::vector<double> w;
  w.reserve(mu_x.size() * mu_y.size());
  for (double px : mu_x) {
    for (double py : mu_y) w.push_back(px * py);
  }
  return InputDistribution(mu_x.size(), mu_y.size(), std::move(w));
}

InputDistribution InputDistribution::uniform(std::size_t x_size, std::size_t y_size) {
  const double w = 1.0 / static_cast<double>(x_size * y_size);
  return InputDistribution(x_size, y_size, std::vector<double>(x_size * y_size, w));
}

void InputDistribution::require_supported_on(const PartialFunction& f) const {
  if (f.x_size() != x_size_ || f.y_size() != y_size_) {
    throw Error(Errc::dimension_mismatch, "distribution and function alphabets differ");
  }
  for (std::size_t x = 0; x < x_size_; ++x) {
    for (std::size_t y = 0; y < y_size_; ++y) {
      if ((*this)(x, y) > 0.0 && !f.defined(x, y)) {
        throw Error(Errc::precondition, "distribution has weight on undefined cell (" +
                                            std::to_string(x) + ", " + std::to_string(y) + ")");
      }
    }
  }
}

std::size_t column_sparsity(const PartialFunction& f) {
  if (f.z_size() != 2) throw Error(Errc::unsupported, "column sparsity needs binary outputs");
  std::size_t cs = 0;
  for (std::size_t y = 0; y < f.y_size(); ++y) {
    cs = std::max(cs, std::min(f.preimage(y, 0).size(), f.preimage(y, 1).size()));
  }
  return cs;
}

const char* to_string(ErrorMode mode) noexcept {
  return mode == ErrorMode::average ? "average" : "worst-case-y";
}

ErrorMode error_mode_from_string(const std::string& s) {
  if (s == "average") return ErrorMode::average;
  if (s == "worst-case-y") return ErrorMode::worst_case_y;
  throw Error(Errc::invalid_argument, "unknown error mode '" + s + "'");
}

}  // namespace oneway
