#include "oneway/convert.hpp"
#include "oneway/error.hpp"

namespace oneway {

nlohmann::json to_json(const BoundCheck& c) {
  return {{"name", c.name},
          {"bound", c.bound},
          {"measured", c.measured},
          {"tolerance", c.tolerance},
          {"verdict", c.pass ? "pass" : "fail"}};
}

BoundCheck bound_check_from_json(const nlohmann::json& j) {
  try {
    BoundCheck c;
    c.name = j.at("name").get<std::string>();
    c.bound = j.at("bound").get<double>();
    c.measured = j.at("measured").get<double>();
    c.tolerance = j.at("tolerance").get<double>();
    const auto verdict = j.at("verdict").get<std::string>();
    if (verdict != "pass" && verdict != "fail") throw Error(Errc::parse, "verdict must be pass or fail");
    c.pass = verdict == "pass";
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("bound check: ") + e.what());
  }
}

namespace {

nlohmann::json checks_json(const std::vector<BoundCheck>& checks) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : checks) out.push_back(to_json(c));
  return out;
}

}  // namespace

nlohmann::json to_json(const Theorem1Report& r) {
  return {{"pipeline", "theorem1"},
          {"mode", to_string(r.mode)},
          {"entangled", r.entangled},
          {"d", r.d},
          {"message_qubits", r.message_qubits},
          {"epsilon", r.epsilon},
          {"epsilon_in_range", r.epsilon_in_range},
          {"eta", r.eta},
          {"bound", r.bound},
          {"pgm_stage_error", r.pgm_stage_error},
          {"exact_final_error", r.exact_error},
          {"final_error", r.final_error},
          {"final_standard_error", r.final_standard_error},
          {"trials", r.trials},
          {"imax", r.imax},
          {"imax_budget", r.imax_budget},
          {"candidates", r.candidates},
          {"message_bits", r.message_bits},
          {"length_bound", r.length_bound},
          {"split_deviation", r.split_deviation},
          {"length_formula", "ceil(log2(N+1)), N = ceil(2^lambda ln(1/eta))"},
          {"checks", checks_json(r.checks)},
          {"all_pass", r.all_pass()}};
}

nlohmann::json to_json(const Theorem2Report& r) {
  nlohmann::json j{{"pipeline", "theorem2"},
                   {"compression", to_string(r.compression)},
                   {"eta", r.eta},
                   {"epsilon_declared", r.epsilon_declared},
                   {"epsilon_measured", r.epsilon_measured},
                   {"precondition_value", r.precondition_value},
                   {"column_sparsity", r.column_sparsity},
                   {"K", r.k},
                   {"estimated_rank", r.estimated_rank},
                   {"b", r.b},
                   {"register_qubits", r.register_qubits},
                   {"includes_purification", r.includes_purification},
                   {"dilated", r.dilated},
                   {"group_size", r.group_size},
                   {"groups", r.groups},
                   {"snapshots", r.snapshots},
                   {"snapshot_formula", "ceil(32 rank/eta^2) * ceil(8 ln(1/eta))"},
                   {"complexity_formula_cs_a_over_eta3", r.complexity_formula},
                   {"good_set_mass", r.good_set_mass},
                   {"raw_message_bits", r.raw_message_bits},
                   {"raw_length_bound", r.raw_length_bound},
                   {"information_bound", r.information_bound},
                   {"message_bits", r.message_bits},
                   {"message_length_bound", r.message_length_bound},
                   {"trials", r.trials},
                   {"checks", checks_json(r.checks)},
                   {"all_pass", r.all_pass()}};
  if (r.compression == Theorem2Compression::none) {
    j["p1_error"] = r.p1_error;
    j["p1_standard_error"] = r.p1_standard_error;
  } else {
    j["snapshot_eta"] = r.snapshot_eta;
    j["snapshot_imax"] = r.snapshot_imax;
    j["snapshot_candidates"] = r.snapshot_candidates;
    j["snapshot_message_bits"] = r.snapshot_message_bits;
    j["final_error"] = r.final_error;
    j["final_standard_error"] = r.final_standard_error;
  }
  return j;
}

}  // namespace oneway
