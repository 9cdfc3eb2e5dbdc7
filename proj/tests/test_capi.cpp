#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slecoset.h"

#include <json.hpp>

#include <string>

using nlohmann::json;

namespace {

json verify(const char* check, const json& params, slecoset_status expected) {
  slecoset_result* r = nullptr;
  slecoset_status s = slecoset_verify(check, params.dump().c_str(), &r);
  CHECK(s == expected);
  REQUIRE(r != nullptr);
  json j = json::parse(slecoset_result_json(r));
  CHECK(slecoset_result_verified(r) == (expected == SLECOSET_OK ? 1 : 0));
  slecoset_result_free(r);
  return j;
}

}  // namespace

TEST_CASE("schema and status names") {
  CHECK(slecoset_schema_version() == 1);
  CHECK(std::string(slecoset_status_name(SLECOSET_TRUNCATION)) == "truncation overflow");
}

TEST_CASE("verify thm2 echoes defaults") {
  json j = verify("thm2", {{"k", "1"}}, SLECOSET_OK);
  CHECK(j["schema_version"] == 1);
  CHECK(j["theorem"] == "thm2");
  CHECK(j["kappa"] == "3");
  CHECK(j["tau"] == "1/2");
  CHECK(j["status"] == "verified");

  json bad = verify("thm2", {{"k", "1"}, {"tau", "1"}}, SLECOSET_VIOLATED);
  CHECK(bad["witness"]["direction"] == "casimir");
}

TEST_CASE("verify dispatch") {
  verify("singular", {{"p", "3"}, {"q", "4"}}, SLECOSET_OK);
  verify("singular", {{"p", "3"}, {"q", "4"}, {"kappa", "31/10"}}, SLECOSET_VIOLATED);
  verify("sugawara", {{"k", "-1/2"}, {"grade", 2}}, SLECOSET_OK);
  verify("branching", {{"k", "1"}, {"j", "1/2"}, {"eps", "0"}, {"grade", 2}}, SLECOSET_OK);
  verify("vacuum-drift", {{"k", "2"}}, SLECOSET_OK);
  verify("corollary", {{"k", "1"}}, SLECOSET_OK);
  verify("coset", {{"k", "1"}, {"grade", 1}}, SLECOSET_OK);
}

TEST_CASE("errors") {
  slecoset_result* r = nullptr;
  CHECK(slecoset_verify("thm2", R"({"k": "1/0"})", &r) == SLECOSET_INVALID_ARGUMENT);
  CHECK(r == nullptr);
  CHECK(std::string(slecoset_last_error()).find("zero denominator") != std::string::npos);
  CHECK(slecoset_verify("thm2", "{not json", &r) == SLECOSET_INVALID_ARGUMENT);
  CHECK(slecoset_verify("nope", R"({"k": "1"})", &r) == SLECOSET_INVALID_ARGUMENT);
  CHECK(slecoset_verify("thm2", R"({"k": "-5/2"})", &r) == SLECOSET_INVALID_ARGUMENT);
  CHECK(std::string(slecoset_last_error()).find("admissible") != std::string::npos);
  CHECK(slecoset_verify("thm2", R"({"k": 1.5})", &r) == SLECOSET_INVALID_ARGUMENT);
  CHECK(slecoset_verify("thm2", "{}", nullptr) == SLECOSET_INVALID_ARGUMENT);
  CHECK(slecoset_verify("branching", R"({"k": "1", "j": "1/3"})", &r) == SLECOSET_INVALID_ARGUMENT);
}

TEST_CASE("minimal table") {
  slecoset_result* r = nullptr;
  REQUIRE(slecoset_minimal_table(3, 4, &r) == SLECOSET_OK);
  json j = json::parse(slecoset_result_json(r));
  bool found = false;
  for (const auto& row : j["rows"]) {
    if (row["p"] == 3 && row["q"] == 4 && row["r"] == 2 && row["s"] == 1) {
      CHECK(row["c"] == "1/2");
      CHECK(row["h"] == "1/2");
      CHECK(row["duplicate_of"].is_null());
      found = true;
    }
    if (row["p"] == 3 && row["q"] == 4 && row["r"] == 1 && row["s"] == 1) CHECK(row["h"] == "0");
    if (row["p"] == 3 && row["q"] == 4 && row["r"] == 2 && row["s"] == 3) CHECK(row["duplicate_of"]["r"] == 1);
  }
  CHECK(found);
  CHECK(std::string(slecoset_result_csv(r)).rfind("p,q,r,s,c,h,duplicate\n", 0) == 0);
  slecoset_result_free(r);
}

TEST_CASE("generator and simulation handles") {
  slecoset_generator* g = nullptr;
  REQUIRE(slecoset_generator_create(R"({"target": "tensor", "k": "1", "grade": 2})", &g) == SLECOSET_OK);
  CHECK(slecoset_generator_dim(g) == 40);
  slecoset_result* r = nullptr;
  CHECK(slecoset_simulate(g, R"({"T": 0.1, "dt": 0.01, "samples": 1000})", &r) == SLECOSET_OK);
  json j = json::parse(slecoset_result_json(r));
  CHECK(j["parameters"]["samples"] == 1000);
  CHECK(std::string(slecoset_result_csv(r)).rfind("t,component_id", 0) == 0);
  slecoset_result_free(r);
  CHECK(slecoset_simulate(g, R"({"samples": 10})", &r) == SLECOSET_INVALID_ARGUMENT);
  slecoset_generator_free(g);

  CHECK(slecoset_generator_create(R"({"target": "tensor", "k": "1", "grade": 1})", &g) ==
        SLECOSET_INVALID_ARGUMENT);
  CHECK(slecoset_generator_create(R"({"target": "virasoro", "kappa": "6"})", &g) == SLECOSET_OK);
  CHECK(slecoset_generator_dim(g) == 1);
  slecoset_generator_free(g);
}

TEST_CASE("trajectory and internal process") {
  slecoset_result* r = nullptr;
  REQUIRE(slecoset_sle_trajectory(R"({"kappa": 3, "T": 0.01, "dt": 0.001, "order": 3})", &r) == SLECOSET_OK);
  CHECK(std::string(slecoset_result_csv(r)).rfind("t,B_t,a0,a_-1,a_-2,a_-3\n", 0) == 0);
  slecoset_result_free(r);
  REQUIRE(slecoset_internal_process(R"({"T": 0.01})", &r) == SLECOSET_OK);
  json j = json::parse(slecoset_result_json(r));
  CHECK(j["steps"] == 100);
  CHECK(j["max_det_deviation"].get<double>() < 1e-3);
  slecoset_result_free(r);
  CHECK(slecoset_internal_process(R"({"scheme": "rk4"})", &r) == SLECOSET_INVALID_ARGUMENT);
}
