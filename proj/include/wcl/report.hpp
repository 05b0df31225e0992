#pragma once

#include <string>

#include <json.hpp>

namespace wcl {

using Json = nlohmann::ordered_json;

/// Structured outcome of one identity check, exact or statistical.
struct VerificationReport {
  std::string identity;
  long long instance_id = 0;
  std::string lhs;
  std::string rhs;
  bool pass = false;
  Json params = Json::object();
  Json extra = Json::object();

  Json to_json() const {
    Json j;
    j["identity"] = identity;
    j["instance_id"] = instance_id;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["pass"] = pass;
    j["params"] = params;
    if (!extra.empty())
      for (auto& [k, v] : extra.items()) j[k] = v;
    return j;
  }
};

}  // namespace wcl
