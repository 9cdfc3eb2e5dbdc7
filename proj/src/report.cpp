#include "slecoset/report.hpp"

namespace slecoset {

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["check"] = check;
  j["parameters"] = parameters;
  j["status"] = status();
  j["witness"] = witness;
  if (!details.empty()) j["details"] = details;
  for (auto it = top_level.begin(); it != top_level.end(); ++it) j[it.key()] = it.value();
  return j;
}

VerificationReport combine_reports(std::string check, nlohmann::json parameters,
                                   const std::vector<VerificationReport>& parts) {
  VerificationReport out;
  out.check = std::move(check);
  out.parameters = std::move(parameters);
  out.verified = true;
  nlohmann::json sub = nlohmann::json::array();
  for (const auto& p : parts) {
    sub.push_back(p.to_json());
    if (!p.verified && out.verified) {
      out.verified = false;
      out.witness = {{"failed_check", p.check}, {"witness", p.witness}};
    }
  }
  out.details["parts"] = std::move(sub);
  return out;
}

}  // namespace slecoset
