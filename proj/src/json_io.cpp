#include "wcl/json_io.hpp"

namespace wcl {

Json chaos_to_json(const ChaosElement& f) {
  Json terms = Json::array();
  for (auto& [a, c] : f.terms()) {
    Json idx = Json::object();
    for (auto& [i, e] : a.entries()) idx[std::to_string(i)] = e;
    Json t;
    t["index"] = idx;
    t["coeff"] = format_rational(c);
    terms.push_back(t);
  }
  Json j;
  j["terms"] = terms;
  return j;
}

ChaosElement chaos_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw std::invalid_argument("chaos element JSON must be {\"terms\": [...]}");
  ChaosElement f;
  for (auto& t : j["terms"]) {
    MultiIndex a;
    for (auto& [key, val] : t.at("index").items()) {
      int coord = std::stoi(key);
      a.set(coord, val.get<int>());
    }
    f.add_term(a, parse_rational(t.at("coeff").get<std::string>()));
  }
  return f;
}

Json field_to_json(const PredictableField& z) {
  Json comps = Json::object();
  for (auto& [k, zk] : z.components)
    if (!zk.is_zero()) comps[std::to_string(k)] = chaos_to_json(zk);
  Json j;
  j["level"] = z.frame.level;
  j["components"] = comps;
  return j;
}

PredictableField field_from_json(const Json& j) {
  PredictableField z;
  z.frame.level = j.at("level").get<int>();
  if (z.frame.level < 0) throw std::invalid_argument("field level must be >= 0");
  for (auto& [key, val] : j.at("components").items()) {
    int k = std::stoi(key);
    ChaosElement zk = chaos_from_json(val);
    if (!zk.is_zero()) z.components.emplace(k, std::move(zk));
  }
  return z;
}

Json nilpotency_to_json(const NilpotencyReport& rep) {
  Json traces = Json::array();
  for (auto& t : rep.traces) traces.push_back(chaos_to_json(t));
  Json j;
  j["traces"] = traces;
  j["nilpotent"] = rep.nilpotent;
  return j;
}

}  // namespace wcl
