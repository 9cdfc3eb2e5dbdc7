// slecoset command-line front end. Talks to the library only through slecoset.h.

#include "slecoset.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using nlohmann::json;

enum Exit { kVerified = 0, kViolated = 1, kUsage = 2, kTruncation = 3, kRuntime = 4 };

int exit_for(slecoset_status s) {
  switch (s) {
    case SLECOSET_OK: return kVerified;
    case SLECOSET_VIOLATED: return kViolated;
    case SLECOSET_INVALID_ARGUMENT: return kUsage;
    case SLECOSET_TRUNCATION: return kTruncation;
    default: return kRuntime;
  }
}

int report_error(slecoset_status s) {
  std::cerr << "error (" << slecoset_status_name(s) << "): " << slecoset_last_error() << '\n';
  return exit_for(s);
}

struct Options {
  std::optional<std::string> k, p, q, kappa, tau, j, eps;
  std::optional<int> grade, cutoff;
  std::optional<std::size_t> samples;
  std::optional<double> dt, total_time;
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "json";
  std::string target = "tensor";
  int order = 8;
  int checkpoints = 10;
  unsigned threads = 0;
  int stride = 1;
  std::string scheme = "milstein";
  int path_halvings = 0;
};

void put(json& j, const char* key, const std::optional<std::string>& v) {
  if (v) j[key] = *v;
}

/// Writes `text` to the --out path or stdout.
bool emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error (i/o error): cannot open '" << path << "' for writing\n";
    return false;
  }
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
  if (!f.good()) {
    std::cerr << "error (i/o error): write to '" << path << "' failed\n";
    return false;
  }
  return true;
}

std::string csv_with_header(const json& config, const char* csv) {
  return "# " + config.dump() + "\n" + csv;
}

/// Emits a result in the requested format; the JSON summary also goes to
/// stdout when a CSV is written to a file.
int finish(const Options& o, const json& config, slecoset_result* r, slecoset_status s) {
  std::string text;
  if (o.format == "csv") {
    if (!*slecoset_result_csv(r)) {
      std::cerr << "error: this command has no CSV output; use --format json\n";
      slecoset_result_free(r);
      return kUsage;
    }
    text = csv_with_header(config, slecoset_result_csv(r));
  } else {
    json doc = json::parse(slecoset_result_json(r));
    doc["config"] = config;
    text = doc.dump(2);
  }
  bool ok = emit(o.out, text);
  if (ok && o.format == "csv" && !o.out.empty() && o.out != "-") {
    json doc = json::parse(slecoset_result_json(r));
    doc["config"] = config;
    std::cout << doc.dump(2) << '\n';
  }
  slecoset_result_free(r);
  return ok ? exit_for(s) : kRuntime;
}

int cmd_minimal_table(const Options& o) {
  const int pmax = o.p ? std::stoi(*o.p) : 5;
  const int qmax = o.q ? std::stoi(*o.q) : pmax + 1;
  json config = {{"command", "minimal-table"}, {"p", pmax}, {"q", qmax}, {"format", o.format}};
  slecoset_result* r = nullptr;
  slecoset_status s = slecoset_minimal_table(pmax, qmax, &r);
  if (!r) return report_error(s);
  return finish(o, config, r, s);
}

int cmd_verify(const std::string& check, const Options& o) {
  json params = json::object();
  put(params, "k", o.k);
  put(params, "p", o.p);
  put(params, "q", o.q);
  put(params, "kappa", o.kappa);
  put(params, "tau", o.tau);
  put(params, "j", o.j);
  put(params, "eps", o.eps);
  if (o.grade) params["grade"] = *o.grade;
  else if (o.cutoff) params["grade"] = *o.cutoff;
  json config = {{"command", "verify"}, {"check", check}, {"params", params}};
  slecoset_result* r = nullptr;
  slecoset_status s = slecoset_verify(check.c_str(), params.dump().c_str(), &r);
  if (!r) return report_error(s);
  return finish(o, config, r, s);
}

int cmd_simulate(const Options& o) {
  const double total = o.total_time.value_or(0.5), dt = o.dt.value_or(1e-3);
  slecoset_result* r = nullptr;
  slecoset_status s;
  json config;
  if (o.target == "sle") {
    json params = {{"kappa", o.kappa ? std::stod(*o.kappa) : 3.0},
                   {"order", o.order},
                   {"T", total},
                   {"dt", dt},
                   {"seed", o.seed},
                   {"stride", o.stride}};
    config = {{"command", "simulate"}, {"target", "sle"}, {"params", params}};
    s = slecoset_sle_trajectory(params.dump().c_str(), &r);
  } else {
    json gen = {{"target", o.target}, {"grade", o.cutoff.value_or(3)}};
    put(gen, "k", o.k);
    put(gen, "kappa", o.kappa);
    put(gen, "tau", o.tau);
    json mc = {{"T", total},
               {"dt", dt},
               {"samples", o.samples.value_or(10000)},
               {"seed", o.seed},
               {"checkpoints", o.checkpoints},
               {"threads", o.threads}};
    if (o.grade) mc["grade_cap"] = *o.grade;
    config = {{"command", "simulate"}, {"generator", gen}, {"mc", mc}};
    slecoset_generator* g = nullptr;
    s = slecoset_generator_create(gen.dump().c_str(), &g);
    if (!g) return report_error(s);
    s = slecoset_simulate(g, mc.dump().c_str(), &r);
    slecoset_generator_free(g);
  }
  if (!r) return report_error(s);
  return finish(o, config, r, s);
}

int cmd_internal(const Options& o) {
  json params = {{"kappa", o.kappa ? std::stod(*o.kappa) : 3.0},
                 {"tau", o.tau ? std::stod(*o.tau) : 0.5},
                 {"T", o.total_time.value_or(0.2)},
                 {"dt", o.dt.value_or(1e-4)},
                 {"order", o.order},
                 {"seed", o.seed},
                 {"scheme", o.scheme},
                 {"path_halvings", o.path_halvings}};
  json config = {{"command", "internal"}, {"params", params}};
  slecoset_result* r = nullptr;
  slecoset_status s = slecoset_internal_process(params.dump().c_str(), &r);
  if (!r) return report_error(s);
  return finish(o, config, r, s);
}

void exact_flags(CLI::App* app, Options& o) {
  app->add_option("--k", o.k, "level k as a rational, e.g. 1 or -2/3");
  app->add_option("--kappa", o.kappa, "SLE parameter (default 4(k+2)/(k+3))");
  app->add_option("--tau", o.tau, "noise strength (default 2/(k+3))");
}

void output_flags(CLI::App* app, Options& o) {
  app->add_option("--out", o.out, "output path (default stdout)");
  app->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte-Carlo checks of SLE martingales on Virasoro and sl2 coset modules"};
  app.require_subcommand(1);
  Options o;

  auto* table = app.add_subcommand("minimal-table", "(c, h) grid of the minimal models");
  table->add_option("--p", o.p, "largest p (default 5)");
  table->add_option("--q", o.q, "largest q (default p+1)");
  output_flags(table, o);

  auto* verify = app.add_subcommand("verify", "exact identity checks");
  std::string check;
  verify->add_option("check", check, "singular | sugawara | coset | branching | vacuum-drift | thm2 | corollary")
      ->required()
      ->check(CLI::IsMember({"singular", "sugawara", "coset", "branching", "vacuum-drift", "thm2", "corollary"}));
  exact_flags(verify, o);
  verify->add_option("--p", o.p, "minimal-model p");
  verify->add_option("--q", o.q, "minimal-model q");
  verify->add_option("--j", o.j, "spin of the level-k factor (branching)");
  verify->add_option("--eps", o.eps, "spin of the level-1 factor (branching)");
  verify->add_option("--grade", o.grade, "grade window");
  verify->add_option("--cutoff", o.cutoff, "alias of --grade");
  output_flags(verify, o);

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo martingale test or SLE series path");
  simulate->add_option("--target", o.target, "tensor | virasoro | affine | sle")
      ->check(CLI::IsMember({"tensor", "virasoro", "affine", "sle"}));
  exact_flags(simulate, o);
  simulate->add_option("--cutoff", o.cutoff, "module truncation grade (default 3)");
  simulate->add_option("--grade", o.grade, "largest tracked grade (default: cutoff)");
  simulate->add_option("--samples", o.samples, "number of samples (default 10000)");
  simulate->add_option("--dt", o.dt, "time step (default 1e-3)");
  simulate->add_option("--T", o.total_time, "final time (default 0.5)");
  simulate->add_option("--seed", o.seed, "master seed (default 42)");
  simulate->add_option("--checkpoints", o.checkpoints, "checkpoints in (0, T] (default 10)");
  simulate->add_option("--threads", o.threads, "worker threads (0: all, capped by SLE_COSET_THREADS)");
  simulate->add_option("--N", o.order, "series order for --target sle (default 8)");
  simulate->add_option("--stride", o.stride, "row stride for --target sle");
  output_flags(simulate, o);

  auto* internal = app.add_subcommand("internal", "internal process: direct SDE against Theta^-1|lambda>");
  internal->add_option("--kappa", o.kappa, "SLE parameter (default 3)");
  internal->add_option("--tau", o.tau, "noise strength (default 1/2)");
  internal->add_option("--dt", o.dt, "time step (default 1e-4)");
  internal->add_option("--T", o.total_time, "final time (default 0.2)");
  internal->add_option("--seed", o.seed, "seed (default 42)");
  internal->add_option("--N", o.order, "series order (default 8)");
  internal->add_option("--scheme", o.scheme, "milstein or euler")->check(CLI::IsMember({"milstein", "euler"}));
  internal->add_option("--path-halvings", o.path_halvings, "draw the path on dt/2^h");
  output_flags(internal, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*table) return cmd_minimal_table(o);
    if (*verify) return cmd_verify(check, o);
    if (*simulate) return cmd_simulate(o);
    if (*internal) return cmd_internal(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
