#include <string>

#include "oneway/comm.hpp"
#include "oneway/error.hpp"
#include "oneway/serialize.hpp"

namespace oneway {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(Errc::parse, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::size_t count_field(const nlohmann::json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw Error(Errc::parse, std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

nlohmann::json task_to_json(const PartialFunction& f, const InputDistribution& mu) {
  nlohmann::json table = nlohmann::json::array(), weights = nlohmann::json::array();
  for (std::size_t x = 0; x < f.x_size(); ++x) {
    nlohmann::json row = nlohmann::json::array(), wrow = nlohmann::json::array();
    for (std::size_t y = 0; y < f.y_size(); ++y) {
      row.push_back(f(x, y));
      wrow.push_back(mu(x, y));
    }
    table.push_back(std::move(row));
    weights.push_back(std::move(wrow));
  }
  return {{"x_size", f.x_size()}, {"y_size", f.y_size()}, {"z_size", f.z_size()},
          {"table", std::move(table)}, {"weights", std::move(weights)}};
}

Task task_from_json(const nlohmann::json& j) {
  const std::size_t nx = count_field(j, "x_size"), ny = count_field(j, "y_size");
  const std::size_t nz = count_field(j, "z_size");
  const auto& table = field(j, "table");
  const auto& weights = field(j, "weights");
  if (!table.is_array() || table.size() != nx || !weights.is_array() || weights.size() != nx) {
    throw Error(Errc::parse, "task table and weights need x_size rows");
  }
  std::vector<int> cells;
  std::vector<double> w;
  try {
    for (std::size_t x = 0; x < nx; ++x) {
      if (table[x].size() != ny || weights[x].size() != ny) {
        throw Error(Errc::parse, "task row " + std::to_string(x) + " needs y_size entries");
      }
      for (std::size_t y = 0; y < ny; ++y) {
        cells.push_back(table[x][y].get<int>());
        w.push_back(weights[x][y].get<double>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("task file: ") + e.what());
  }
  Task t{PartialFunction(nx, ny, nz, std::move(cells)), InputDistribution(nx, ny, std::move(w))};
  t.mu.require_supported_on(t.f);
  return t;
}

nlohmann::json protocol_to_json(const QuantumOneWayProtocol& qp) {
  nlohmann::json decoders = nlohmann::json::array();
  for (std::size_t y = 0; y < qp.y_size(); ++y) decoders.push_back(povm_to_json(qp.decoder(y)));
  nlohmann::json j{{"z_size", qp.z_size()}, {"decoders", std::move(decoders)}};
  if (qp.is_entangled()) {
    const auto& sh = *qp.shared();
    j["kind"] = "entangled";
    j["shared"] = {{"dim_a", sh.dim_a}, {"dim_b", sh.dim_b}, {"state", vector_to_json(sh.state.amplitudes())}};
    j["residual_dim"] = qp.residual_dim();
    j["message_dim"] = qp.message_dim();
    nlohmann::json iso = nlohmann::json::array();
    for (const auto& u : qp.isometries()) iso.push_back(matrix_to_json(u));
    j["isometries"] = std::move(iso);
  } else {
    j["kind"] = "unentangled";
    nlohmann::json enc = nlohmann::json::array();
    for (std::size_t x = 0; x < qp.x_size(); ++x) enc.push_back(vector_to_json(qp.pure_message(x)->amplitudes()));
    j["encoders"] = std::move(enc);
  }
  return j;
}

QuantumOneWayProtocol protocol_from_json(const nlohmann::json& j) {
  const std::size_t nz = count_field(j, "z_size");
  std::vector<Povm> decoders;
  for (const auto& d : field(j, "decoders")) decoders.push_back(povm_from_json(d));
  const auto& kind = field(j, "kind");
  if (kind == "unentangled") {
    std::vector<PureState> encoders;
    for (const auto& v : field(j, "encoders")) encoders.emplace_back(vector_from_json(v));
    return QuantumOneWayProtocol::unentangled(std::move(encoders), std::move(decoders), nz);
  }
  if (kind == "entangled") {
    const auto& sh = field(j, "shared");
    SharedEntanglement shared{PureState(vector_from_json(field(sh, "state"))),
                              count_field(sh, "dim_a"), count_field(sh, "dim_b")};
    std::vector<ComplexMatrix> iso;
    for (const auto& u : field(j, "isometries")) iso.push_back(matrix_from_json(u));
    return QuantumOneWayProtocol::entangled(std::move(shared), std::move(iso),
                                            count_field(j, "residual_dim"),
                                            count_field(j, "message_dim"), std::move(decoders), nz);
  }
  throw Error(Errc::parse, "protocol kind must be 'unentangled' or 'entangled'");
}

}  // namespace oneway
