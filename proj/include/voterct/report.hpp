#pragma once

#include <json.hpp>

#include "voterct/criteria.hpp"

namespace voterct {

using Json = nlohmann::ordered_json;

inline Json to_json(const FluctuationEvidence& ev) {
  Json j;
  switch (ev.kind) {
    case FluctuationEvidence::Kind::None: j["kind"] = "none"; break;
    case FluctuationEvidence::Kind::RadiusTest: j["kind"] = "radius_test"; break;
    case FluctuationEvidence::Kind::Partition: j["kind"] = "partition"; break;
  }
  if (ev.found()) {
    j["V1"] = ev.v1;
    j["V2"] = ev.v2;
  }
  return j;
}

inline Json to_json(const CriteriaReport& rep) {
  Json j;
  j["graph"] = rep.graph_name;
  j["F"] = rep.opinion_count;
  j["radius"] = rep.radius;
  j["diameter"] = rep.diameter;
  j["tau"] = rep.tau;
  j["uniform"] = rep.uniform;
  j["center"] = rep.center;
  j["rho_cent"] = rational_to_string(rep.rho_cent);
  j["fluctuation_evidence"] = to_json(rep.fluctuation);
  j["expected_weight"] = rep.expected_weight_value
                             ? Json(rational_to_string(*rep.expected_weight_value))
                             : Json(nullptr);
  j["S"] = rep.s_value ? Json(rational_to_string(*rep.s_value)) : Json(nullptr);
  j["distance_regular"] = rep.distance_regular;
  if (rep.bd) {
    Json p = Json::array(), q = Json::array();
    for (int n = 2; n <= rep.bd->state_count; ++n) {
      p.push_back(rational_to_string(rep.bd->p[n]));
      q.push_back(rational_to_string(rep.bd->q[n]));
    }
    j["M"] = rep.bd->state_count;
    j["p"] = p;
    j["q"] = q;
  }
  if (rep.w) {
    Json w = Json::array();
    for (const auto& value : *rep.w) w.push_back(rational_to_string(value));
    j["W"] = w;
  }
  j["S_reg"] =
      rep.s_reg_value ? Json(rational_to_string(*rep.s_reg_value)) : Json(nullptr);
  j["fixates_for_some_densities"] = rep.fixates_for_some_densities;
  j["verdict"] = verdict_name(rep.verdict);
  j["verdict_reason"] = rep.verdict_reason;
  return j;
}

}  // namespace voterct
