#include "oneway/serialize.hpp"

#include "oneway/error.hpp"

namespace oneway {
namespace {

nlohmann::json complex_pair(const Complex& z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex pair_value(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(Errc::parse, "complex entry must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::size_t require_count(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 0) {
    throw Error(Errc::parse, std::string("missing or invalid field '") + key + "'");
  }
  return j.at(key).get<std::size_t>();
}

}  // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back(complex_pair(m(i, k)));
  }
  return {{"rows", static_cast<std::size_t>(m.rows())}, {"cols", static_cast<std::size_t>(m.cols())}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  const std::size_t rows = require_count(j, "rows");
  const std::size_t cols = require_count(j, "cols");
  const auto& data = j.at("data");
  if (!data.is_array() || data.size() != rows * cols) {
    throw Error(Errc::parse, "matrix data must hold rows*cols entries");
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = pair_value(data[i * cols + k]);
    }
  }
  return m;
}

nlohmann::json vector_to_json(const ComplexVector& v) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) data.push_back(complex_pair(v[i]));
  return {{"dim", static_cast<std::size_t>(v.size())}, {"data", std::move(data)}};
}

ComplexVector vector_from_json(const nlohmann::json& j) {
  const std::size_t dim = require_count(j, "dim");
  const auto& data = j.at("data");
  if (!data.is_array() || data.size() != dim) throw Error(Errc::parse, "vector data length");
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) v[static_cast<Eigen::Index>(i)] = pair_value(data[i]);
  return v;
}

nlohmann::json povm_to_json(const Povm& p) {
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& e : p.elements()) elements.push_back(matrix_to_json(e));
  return {{"labels", p.labels()}, {"elements", std::move(elements)}};
}

Povm povm_from_json(const nlohmann::json& j) {
  if (!j.contains("labels") || !j.contains("elements")) {
    throw Error(Errc::parse, "POVM needs 'labels' and 'elements'");
  }
  std::vector<ComplexMatrix> elements;
  for (const auto& e : j.at("elements")) elements.push_back(matrix_from_json(e));
  return Povm(j.at("labels").get<std::vector<int>>(), std::move(elements));
}

}  // namespace oneway
