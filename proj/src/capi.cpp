#include "slecoset.h"

#include "slecoset/affine.hpp"
#include "slecoset/coset.hpp"
#include "slecoset/errors.hpp"
#include "slecoset/loewner.hpp"
#include "slecoset/martingale.hpp"
#include "slecoset/virasoro.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

using namespace slecoset;
using nlohmann::json;

struct slecoset_result {
  std::string json;
  std::string csv;
  bool verified = false;
};

struct slecoset_generator {
  GeneratorSpec spec;
};

namespace {

thread_local std::string last_error;

json parse_params(const char* text) {
  if (!text || !*text) return json::object();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("malformed parameter JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("parameters must be a JSON object");
  return j;
}

std::optional<Rational> opt_rational(const json& p, const char* key) {
  if (!p.contains(key) || p[key].is_null()) return std::nullopt;
  const json& v = p[key];
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InvalidArgument(std::string("parameter '") + key + "' must be a rational string like \"-2/3\"");
}

Rational req_rational(const json& p, const char* key) {
  auto r = opt_rational(p, key);
  if (!r) throw InvalidArgument(std::string("missing parameter '") + key + "'");
  return *r;
}

template <class T>
T get_or(const json& p, const char* key, T fallback) {
  if (!p.contains(key) || p[key].is_null()) return fallback;
  try {
    return p[key].get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument(std::string("parameter '") + key + "' has the wrong type");
  }
}

int small_int(const Rational& r, const char* what) {
  if (!r.is_integer() || !r.numerator().fits_sint_p()) throw InvalidArgument(std::string(what) + " must be an integer");
  return static_cast<int>(r.numerator().get_si());
}

int twice_spin(const Rational& j, const char* what) {
  const Rational t = j * Rational(2);
  if (!t.is_integer() || t.sign() < 0)
    throw InvalidArgument(std::string(what) + " must be a non-negative half-integer, got " + j.str());
  return small_int(t, what);
}

Rational kappa_or_default(const json& p, const Rational& k) {
  auto v = opt_rational(p, "kappa");
  return v ? *v : critical_kappa(k);
}

Rational tau_or_default(const json& p, const Rational& k) {
  auto v = opt_rational(p, "tau");
  return v ? *v : critical_tau(k);
}

VerificationReport run_check(const std::string& check, const json& p) {
  if (check == "singular") {
    const int pp = small_int(req_rational(p, "p"), "p");
    const int qq = small_int(req_rational(p, "q"), "q");
    return singular_vector_check(pp, qq, opt_rational(p, "kappa"));
  }
  if (check == "sugawara") return sugawara_check(req_rational(p, "k"), get_or(p, "grade", 4));
  if (check == "coset") return coset_check(req_rational(p, "k"), get_or(p, "grade", 3));
  if (check == "branching") {
    const Rational j = opt_rational(p, "j").value_or(Rational(1, 2));
    const Rational eps = opt_rational(p, "eps").value_or(Rational(1, 2));
    return branching_check(req_rational(p, "k"), twice_spin(j, "j"), twice_spin(eps, "eps"), get_or(p, "grade", 3));
  }
  const Rational k = req_rational(p, "k");
  const Rational kappa = kappa_or_default(p, k), tau = tau_or_default(p, k);
  if (check == "vacuum-drift") return vacuum_drift_check(k, kappa, tau);
  if (check == "thm2") return theorem2_drift_check(k, kappa, tau, get_or(p, "grade", 2));
  if (check == "corollary") return corollary_projection_check(k, kappa, tau);
  throw InvalidArgument("unknown check '" + check +
                        "' (expected singular, sugawara, coset, branching, vacuum-drift, thm2, corollary)");
}

json minimal_table(int pmax, int qmax) {
  if (pmax < 2 || qmax < 3) throw InvalidArgument("need pmax >= 2 and qmax >= 3");
  json rows = json::array();
  for (int p = 2; p <= pmax; ++p)
    for (int q = p + 1; q <= qmax; ++q) {
      if (std::gcd(p, q) != 1) continue;
      for (int r = 1; r < p; ++r)
        for (int s = 1; s < q; ++s) {
          const MinimalConstants m = minimal_constants(p, q, r, s);
          json row = {{"p", p}, {"q", q}, {"r", r}, {"s", s}, {"c", m.c.str()}, {"h", m.h.str()}};
          const bool dup = std::make_pair(q - s, p - r) < std::make_pair(s, r);
          row["duplicate_of"] = dup ? json{{"r", p - r}, {"s", q - s}} : json(nullptr);
          rows.push_back(row);
        }
    }
  return rows;
}

template <class F>
slecoset_status guarded(F&& body) {
  try {
    return body();
  } catch (const InvalidArgument& e) {
    last_error = e.what();
    return SLECOSET_INVALID_ARGUMENT;
  } catch (const TruncationError& e) {
    last_error = e.what();
    return SLECOSET_TRUNCATION;
  } catch (const NumericalError& e) {
    last_error = e.what();
    return SLECOSET_NUMERICAL;
  } catch (const IoError& e) {
    last_error = e.what();
    return SLECOSET_IO;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SLECOSET_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return SLECOSET_INTERNAL;
  }
}

slecoset_status require_out(const void* out) {
  if (out) return SLECOSET_OK;
  last_error = "null output pointer";
  return SLECOSET_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

int slecoset_schema_version(void) { return kSchemaVersion; }

const char* slecoset_last_error(void) { return last_error.c_str(); }

const char* slecoset_status_name(slecoset_status status) {
  switch (status) {
    case SLECOSET_OK: return "ok";
    case SLECOSET_VIOLATED: return "violated";
    case SLECOSET_INVALID_ARGUMENT: return "invalid argument";
    case SLECOSET_TRUNCATION: return "truncation overflow";
    case SLECOSET_NUMERICAL: return "numerical error";
    case SLECOSET_IO: return "i/o error";
    case SLECOSET_INTERNAL: return "internal error";
  }
  return "unknown";
}

slecoset_status slecoset_verify(const char* check, const char* params_json, slecoset_result** out) {
  if (auto s = require_out(out); s != SLECOSET_OK) return s;
  *out = nullptr;
  return guarded([&] {
    if (!check) throw InvalidArgument("null check name");
    const json p = parse_params(params_json);
    const VerificationReport r = run_check(check, p);
    *out = new slecoset_result{r.to_json().dump(2), "", r.verified};
    return r.verified ? SLECOSET_OK : SLECOSET_VIOLATED;
  });
}

slecoset_status slecoset_minimal_table(int pmax, int qmax, slecoset_result** out) {
  if (auto s = require_out(out); s != SLECOSET_OK) return s;
  *out = nullptr;
  return guarded([&] {
    const json rows = minimal_table(pmax, qmax);
    std::ostringstream csv;
    csv << "p,q,r,s,c,h,duplicate\n";
    for (const auto& row : rows)
      csv << row["p"] << ',' << row["q"] << ',' << row["r"] << ',' << row["s"] << ','
          << row["c"].get<std::string>() << ',' << row["h"].get<std::string>() << ','
          << (row["duplicate_of"].is_null() ? 0 : 1) << '\n';
    json doc = {{"schema_version", kSchemaVersion},
                {"check", "minimal-table"},
                {"parameters", {{"pmax", pmax}, {"qmax", qmax}}},
                {"rows", rows}};
    *out = new slecoset_result{doc.dump(2), csv.str(), true};
    return SLECOSET_OK;
  });
}

slecoset_status slecoset_generator_create(const char* params_json, slecoset_generator** out) {
  if (auto s = require_out(out); s != SLECOSET_OK) return s;
  *out = nullptr;
  return guarded([&] {
    const json p = parse_params(params_json);
    const Target target = parse_target(get_or<std::string>(p, "target", "tensor"));
    const Rational k = opt_rational(p, "k").value_or(Rational(1));
    Rational kappa, tau;
    if (target == Target::Virasoro) {
      kappa = opt_rational(p, "kappa").value_or(critical_kappa(k));
      tau = opt_rational(p, "tau").value_or(Rational(0));
    } else {
      kappa = kappa_or_default(p, k);
      tau = tau_or_default(p, k);
    }
    if (kappa.sign() < 0 || tau.sign() < 0) throw InvalidArgument("kappa and tau must be non-negative");
    *out = new slecoset_generator{assemble_generator(target, k, kappa, tau, get_or(p, "grade", 3))};
    return SLECOSET_OK;
  });
}

size_t slecoset_generator_dim(const slecoset_generator* g) { return g ? g->spec.dim() : 0; }

void slecoset_generator_free(slecoset_generator* g) { delete g; }

slecoset_status slecoset_simulate(const slecoset_generator* g, const char* config_json, slecoset_result** out) {
  if (auto s = require_out(out); s != SLECOSET_OK) return s;
  *out = nullptr;
  return guarded([&] {
    if (!g) throw InvalidArgument("null generator");
    const json p = parse_params(config_json);
    McConfig cfg;
    cfg.total_time = get_or(p, "T", cfg.total_time);
    cfg.dt = get_or(p, "dt", cfg.dt);
    cfg.samples = get_or<std::size_t>(p, "samples", cfg.samples);
    cfg.seed = get_or<std::uint64_t>(p, "seed", cfg.seed);
    cfg.checkpoints = get_or(p, "checkpoints", cfg.checkpoints);
    cfg.grade_cap = get_or(p, "grade_cap", cfg.grade_cap);
    cfg.threads = get_or(p, "threads", cfg.threads);
    cfg.z_threshold = get_or(p, "z_threshold", cfg.z_threshold);
    const McResult r = mc_simulate(g->spec, cfg);
    const json summary = mc_summary(g->spec, cfg, r);
    std::ostringstream csv;
    write_mc_csv(csv, r);
    const bool ok = summary["status"] == "verified";
    *out = new slecoset_result{summary.dump(2), csv.str(), ok};
    return ok ? SLECOSET_OK : SLECOSET_VIOLATED;
  });
}

slecoset_status slecoset_sle_trajectory(const char* params_json, slecoset_result** out) {
  if (auto s = require_out(out); s != SLECOSET_OK) return s;
  *out = nullptr;
  return guarded([&] {
    const json p = parse_params(params_json);
    const double kappa = get_or(p, "kappa", 3.0);
    const int order = get_or(p, "order", 8);
    const double total = get_or(p, "T", 0.5), dt = get_or(p, "dt", 1e-3);
    const std::uint64_t seed = get_or<std::uint64_t>(p, "seed", 42);
    const int stride = get_or(p, "stride", 1);
    if (order < 1) throw InvalidArgument("order must be >= 1");
    const auto rows = sle_trajectory(kappa, order, total, dt, seed, stride);
    std::ostringstream csv;
    write_trajectory_csv(csv, rows);
    double worst = 0;
    for (const auto& row : rows) worst = std::max(worst, std::abs(row.coeff[1] - 2 * row.t));
    json doc = {{"schema_version", kSchemaVersion},
                {"check", "sle-trajectory"},
                {"parameters",
                 {{"kappa", kappa}, {"order", order}, {"T", total}, {"dt", dt}, {"seed", seed}, {"stride", stride}}},
                {"rows", rows.size()},
                {"max_abs_a_-1_minus_2t", worst},
                {"final", rows.back().coeff}};
    *out = new slecoset_result{doc.dump(2), csv.str(), true};
    return SLECOSET_OK;
  });
}

slecoset_status slecoset_internal_process(const char* params_json, slecoset_result** out) {
  if (auto s = require_out(out); s != SLECOSET_OK) return s;
  *out = nullptr;
  return guarded([&] {
    const json p = parse_params(params_json);
    InternalConfig cfg;
    cfg.kappa = get_or(p, "kappa", cfg.kappa);
    cfg.tau = get_or(p, "tau", cfg.tau);
    cfg.total_time = get_or(p, "T", cfg.total_time);
    cfg.dt = get_or(p, "dt", cfg.dt);
    cfg.order = get_or(p, "order", cfg.order);
    cfg.seed = get_or<std::uint64_t>(p, "seed", cfg.seed);
    cfg.path_halvings = get_or(p, "path_halvings", cfg.path_halvings);
    const std::string scheme = get_or<std::string>(p, "scheme", "milstein");
    if (scheme == "euler") cfg.scheme = InternalScheme::Euler;
    else if (scheme != "milstein") throw InvalidArgument("scheme must be milstein or euler");
    const InternalResult r = run_internal_process(cfg);
    json doc = {{"schema_version", kSchemaVersion},
                {"check", "internal-process"},
                {"parameters",
                 {{"kappa", cfg.kappa},
                  {"tau", cfg.tau},
                  {"T", cfg.total_time},
                  {"dt", cfg.dt},
                  {"order", cfg.order},
                  {"seed", cfg.seed},
                  {"scheme", scheme},
                  {"path_halvings", cfg.path_halvings}}},
                {"steps", r.steps},
                {"max_det_deviation", r.max_det_deviation},
                {"final_difference", r.final_difference}};
    *out = new slecoset_result{doc.dump(2), "", r.max_det_deviation < 1e-3};
    return SLECOSET_OK;
  });
}

const char* slecoset_result_json(const slecoset_result* r) { return r ? r->json.c_str() : ""; }

const char* slecoset_result_csv(const slecoset_result* r) { return r ? r->csv.c_str() : ""; }

int slecoset_result_verified(const slecoset_result* r) { return r && r->verified ? 1 : 0; }

void slecoset_result_free(slecoset_result* r) { delete r; }

}  // extern "C"
