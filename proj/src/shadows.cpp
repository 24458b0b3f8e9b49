#include "oneway/shadows.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <deque>
#include <istream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "oneway/error.hpp"

namespace oneway {

namespace {

using Eigen::Index;
using Key = std::string;

// Per amplitude: 0 for zero, 1..4 for phase i^(k-1) relative to the first
// nonzero amplitude. Magnitudes are fixed by the support size.
Key canonical_key(const ComplexVector& v) {
  Key key(static_cast<std::size_t>(v.size()), '\0');
  Complex ref = 0.0;
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-9) {
      ref = v(i) / std::abs(v(i));
      break;
    }
  }
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) <= 1e-9) continue;
    const double angle = std::arg(v(i) / ref);
    const long quarter = std::lround(angle / (std::numbers::pi / 2));
    key[static_cast<std::size_t>(i)] = static_cast<char>(1 + ((quarter % 4) + 4) % 4);
  }
  return key;
}

ComplexVector from_key(const Key& key) {
  static const std::array<Complex, 4> phases{Complex(1, 0), Complex(0, 1), Complex(-1, 0),
                                             Complex(0, -1)};
  const auto support = static_cast<double>(
      std::count_if(key.begin(), key.end(), [](char c) { return c != 0; }));
  ComplexVector v = ComplexVector::Zero(static_cast<Index>(key.size()));
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (key[i] != 0) v(static_cast<Index>(i)) = phases[static_cast<std::size_t>(key[i] - 1)] / std::sqrt(support);
  }
  return v;
}

// Qubit 0 is the most significant bit of the basis index.
std::size_t bit_of(std::size_t n, std::size_t q) { return std::size_t{1} << (n - 1 - q); }

ComplexVector apply_h(const ComplexVector& v, std::size_t n, std::size_t q) {
  ComplexVector out = v;
  const std::size_t m = bit_of(n, q);
  const double r = std::numbers::sqrt2 / 2;
  for (std::size_t i = 0; i < static_cast<std::size_t>(v.size()); ++i) {
    if (i & m) continue;
    const Complex a = v(static_cast<Index>(i)), b = v(static_cast<Index>(i | m));
    out(static_cast<Index>(i)) = r * (a + b);
    out(static_cast<Index>(i | m)) = r * (a - b);
  }
  return out;
}

ComplexVector apply_s(const ComplexVector& v, std::size_t n, std::size_t q) {
  ComplexVector out = v;
  const std::size_t m = bit_of(n, q);
  for (std::size_t i = 0; i < static_cast<std::size_t>(v.size()); ++i) {
    if (i & m) out(static_cast<Index>(i)) *= Complex(0, 1);
  }
  return out;
}

ComplexVector apply_cnot(const ComplexVector& v, std::size_t n, std::size_t c, std::size_t t) {
  ComplexVector out = v;
  const std::size_t mc = bit_of(n, c), mt = bit_of(n, t);
  for (std::size_t i = 0; i < static_cast<std::size_t>(v.size()); ++i) {
    if (i & mc) out(static_cast<Index>(i ^ mt)) = v(static_cast<Index>(i));
  }
  return out;
}

std::uint64_t fnv1a(std::uint64_t h, const Key& key) {
  for (char c : key) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::size_t stabilizer_count(std::size_t n) {
  std::size_t count = std::size_t{1} << n;
  for (std::size_t i = 1; i <= n; ++i) count *= (std::size_t{1} << i) + 1;
  return count;
}

std::size_t StabilizerTable::index_bits() const {
  return static_cast<std::size_t>(std::bit_width(size() - 1));
}

std::vector<double> StabilizerTable::diagonal(const ComplexMatrix& a) const {
  if (a.rows() != static_cast<Index>(dim()) || a.cols() != static_cast<Index>(dim())) {
    throw Error(Errc::dimension_mismatch, "observable dimension differs from the table");
  }
  std::vector<double> out(size());
  for (std::size_t s = 0; s < size(); ++s) out[s] = states_[s].dot(a * states_[s]).real();
  return out;
}

std::shared_ptr<const StabilizerTable> build_stabilizer_table(std::size_t n) {
  if (n == 0 || n > kMaxShadowQubits) {
    throw Error(Errc::unsupported_size, "stabilizer tables support 1.." +
                                            std::to_string(kMaxShadowQubits) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << n;
  std::set<Key> seen;
  std::deque<Key> frontier;
  ComplexVector zero = ComplexVector::Zero(static_cast<Index>(dim));
  zero(0) = 1.0;
  frontier.push_back(canonical_key(zero));
  seen.insert(frontier.back());
  while (!frontier.empty()) {
    const ComplexVector v = from_key(frontier.front());
    frontier.pop_front();
    auto visit = [&](const ComplexVector& w) {
      Key k = canonical_key(w);
      if (seen.insert(k).second) frontier.push_back(std::move(k));
    };
    for (std::size_t q = 0; q < n; ++q) {
      visit(apply_h(v, n, q));
      visit(apply_s(v, n, q));
      for (std::size_t t = 0; t < n; ++t) {
        if (t != q) visit(apply_cnot(v, n, q, t));
      }
    }
  }
  auto table = std::make_shared<StabilizerTable>();
  table->n_ = n;
  table->checksum_ = 0xcbf29ce484222325ULL;
  for (const auto& key : seen) {
    table->states_.push_back(from_key(key));
    table->checksum_ = fnv1a(table->checksum_, key);
  }
  if (table->size() != stabilizer_count(n)) {
    throw Error(Errc::internal_consistency, "stabilizer enumeration found " +
                                                std::to_string(table->size()) + " states");
  }
  return table;
}

std::shared_ptr<const StabilizerTable> stabilizer_table(std::size_t n) {
  static std::mutex mutex;
  static std::array<std::shared_ptr<const StabilizerTable>, kMaxShadowQubits + 1> cache;
  if (n == 0 || n > kMaxShadowQubits) return build_stabilizer_table(n);
  std::lock_guard lock(mutex);
  if (!cache[n]) cache[n] = build_stabilizer_table(n);
  return cache[n];
}

std::vector<double> snapshot_distribution(const StabilizerTable& table, const PureState& psi) {
  if (psi.dim() != table.dim()) throw Error(Errc::dimension_mismatch, "state and table dimensions differ");
  const double scale = static_cast<double>(table.dim()) / static_cast<double>(table.size());
  std::vector<double> probs(table.size());
  double total = 0.0;
  for (std::size_t s = 0; s < table.size(); ++s) {
    probs[s] = std::norm(table.state(s).dot(psi.amplitudes())) * scale;
    total += probs[s];
  }
  if (std::abs(total - 1.0) > 1e-8) {
    throw Error(Errc::internal_consistency, "snapshot probabilities sum to " + std::to_string(total));
  }
  return probs;
}

SnapshotSampler::SnapshotSampler(std::shared_ptr<const StabilizerTable> table, const PureState& psi)
    : table_(std::move(table)), probs_(snapshot_distribution(*table_, psi)), alias_(probs_) {}

ShadowSample SnapshotSampler::sample(std::size_t count, Rng& rng) const {
  ShadowSample out{table_->qubits(), {}};
  out.indices.reserve(count);
  for (std::size_t t = 0; t < count; ++t) out.indices.push_back((*this)(rng));
  return out;
}

ShadowSample sample_shadow(const PureState& psi, std::size_t count, Rng& rng) {
  const auto n = static_cast<std::size_t>(std::countr_zero(psi.dim()));
  if ((std::size_t{1} << n) != psi.dim()) {
    throw Error(Errc::dimension_mismatch, "shadow target is not an n-qubit state");
  }
  return SnapshotSampler(stabilizer_table(n), psi).sample(count, rng);
}

double snapshot_estimate(const StabilizerTable& table, const ComplexMatrix& a, std::size_t s) {
  if (!is_hermitian(a)) throw Error(Errc::invalid_operator, "snapshot observable must be Hermitian");
  const ComplexVector& v = table.state(s);
  const Complex value = static_cast<double>(table.dim() + 1) * v.dot(a * v) - a.trace();
  if (std::abs(value.imag()) > tol::kValidation) {
    throw Error(Errc::internal_consistency, "snapshot estimate has imaginary part");
  }
  return value.real();
}

SnapshotEstimator::SnapshotEstimator(const StabilizerTable& table, const ComplexMatrix& a) {
  if (!is_hermitian(a)) throw Error(Errc::invalid_operator, "snapshot observable must be Hermitian");
  const double tr = a.trace().real();
  values_ = table.diagonal(a);
  for (double& v : values_) v = static_cast<double>(table.dim() + 1) * v - tr;
}

double SnapshotEstimator::estimate(const ShadowSample& sample, std::size_t groups) const {
  std::vector<double> v;
  v.reserve(sample.size());
  for (auto s : sample.indices) v.push_back(values_.at(s));
  return median_of_means(v, groups);
}

double median_of_means(std::span<const double> values, std::size_t groups) {
  if (values.empty()) throw Error(Errc::invalid_argument, "median of means of an empty list");
  if (groups == 0 || groups > values.size()) {
    throw Error(Errc::invalid_argument, "group count must be between 1 and the sample size");
  }
  const std::size_t size = values.size() / groups;
  std::vector<double> means(groups);
  for (std::size_t k = 0; k < groups; ++k) {
    double sum = 0.0;
    for (std::size_t i = k * size; i < (k + 1) * size; ++i) sum += values[i];
    means[k] = sum / static_cast<double>(size);
  }
  const auto mid = means.begin() + static_cast<std::ptrdiff_t>((groups - 1) / 2);
  std::nth_element(means.begin(), mid, means.end());
  return *mid;
}

ShadowBudget shadow_budget(double frobenius_sq, double epsilon, double delta) {
  if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    throw Error(Errc::invalid_argument, "shadow budget needs ε > 0 and 0 < δ < 1");
  }
  ShadowBudget b;
  b.group_size = static_cast<std::size_t>(std::ceil(32.0 * frobenius_sq / (epsilon * epsilon)));
  b.group_size = std::max<std::size_t>(1, b.group_size);
  b.groups = static_cast<std::size_t>(std::ceil(8.0 * std::log(1.0 / delta)));
  b.groups = std::max<std::size_t>(1, b.groups);
  return b;
}

void write_shadow(std::ostream& os, const ShadowSample& sample) {
  const auto table = stabilizer_table(sample.qubits);
  std::ostringstream hex;
  hex << std::hex << table->checksum();
  os << "oneway-shadow 1\n" << sample.qubits << ' ' << sample.size() << ' ' << hex.str() << '\n';
  for (std::size_t i = 0; i < sample.size(); ++i) {
    os << sample.indices[i] << ((i + 1) % 16 == 0 || i + 1 == sample.size() ? '\n' : ' ');
  }
}

ShadowSample read_shadow(std::istream& is) {
  std::string magic;
  int version = 0;
  if (!(is >> magic >> version) || magic != "oneway-shadow" || version != 1) {
    throw Error(Errc::parse, "not a shadow file (expected header 'oneway-shadow 1')");
  }
  std::size_t n = 0, count = 0;
  std::string checksum;
  if (!(is >> n >> count >> checksum)) throw Error(Errc::parse, "shadow header needs n, T, checksum");
  const auto table = stabilizer_table(n);
  std::ostringstream hex;
  hex << std::hex << table->checksum();
  if (hex.str() != checksum) {
    throw Error(Errc::parse, "shadow checksum " + checksum + " does not match table " + hex.str());
  }
  ShadowSample out{n, {}};
  out.indices.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t s = 0;
    if (!(is >> s)) throw Error(Errc::parse, "shadow file ends after " + std::to_string(i) + " indices");
    if (s >= table->size()) throw Error(Errc::parse, "shadow index " + std::to_string(s) + " out of range");
    out.indices.push_back(static_cast<std::uint32_t>(s));
  }
  return out;
}

}  // namespace oneway
