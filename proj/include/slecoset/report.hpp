#pragma once

#include "slecoset/rational.hpp"

#include <json.hpp>

#include <string>

namespace slecoset {

inline constexpr int kSchemaVersion = 1;

/// Outcome of an exact verification. Symbolic checks are all-or-nothing:
/// either the identity holds in exact arithmetic, or `witness` names an
/// offending coefficient.
struct VerificationReport {
  std::string check;
  nlohmann::json parameters = nlohmann::json::object();
  bool verified = false;
  nlohmann::json witness;  // null when verified
  nlohmann::json details = nlohmann::json::object();
  /// Fields merged at top level (e.g. theorem/k/kappa/tau/grade for drift checks).
  nlohmann::json top_level = nlohmann::json::object();

  nlohmann::json to_json() const;
  std::string status() const { return verified ? "verified" : "violated"; }
};

/// Merge several sub-reports into one; verified iff all are.
VerificationReport combine_reports(std::string check, nlohmann::json parameters,
                                   const std::vector<VerificationReport>& parts);

}  // namespace slecoset
