// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run all
//   acceptance 4 11       run the listed criteria

#include "slecoset/affine.hpp"
#include "slecoset/coset.hpp"
#include "slecoset/loewner.hpp"
#include "slecoset/martingale.hpp"
#include "slecoset/virasoro.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace slecoset;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::vector<std::pair<int, int>> coprime_pairs() {
  std::vector<std::pair<int, int>> out;
  for (int p = 3; p <= 12; ++p)
    for (int r = 3; r <= 12; ++r)
      if (p != r && std::gcd(p, r) == 1) out.emplace_back(p, r);
  return out;
}

Outcome singular_vectors() {
  Outcome o;
  int n = 0;
  for (auto [p, r] : coprime_pairs()) {
    const std::string tag = "(p,q)=(" + std::to_string(p) + "," + std::to_string(r) + ")";
    o.require(singular_vector_check(p, r).verified, tag + " not singular");
    o.require(!singular_vector_check(p, r, Rational(4L * p, r) + q(1, 10)).verified, tag + " perturbed still singular");
    ++n;
  }
  if (o.pass) o.detail = std::to_string(n) + " coprime pairs";
  return o;
}

Outcome sle_constants_match() {
  Outcome o;
  for (auto [p, r] : coprime_pairs()) {
    const SleConstants s = sle_constants(Rational(4L * p, r));
    const MinimalConstants m = minimal_constants(p, r, 2, 1);
    o.require(s.c == m.c && s.h == m.h, "mismatch at p=" + std::to_string(p) + " q=" + std::to_string(r));
  }
  return o;
}

Outcome sugawara() {
  Outcome o;
  for (Rational k : {q(1), q(2), q(3), q(-1, 2), q(-2, 3)}) {
    auto r = sugawara_check(k, 4);
    o.require(r.verified, "k=" + k.str() + ": " + r.witness.dump());
    o.require(r.details["central_charge"] == (q(3) * k / (k + q(2))).str(), "c mismatch at k=" + k.str());
  }
  return o;
}

Outcome coset_identity() {
  Outcome o;
  for (Rational k : {q(1), q(2), q(-1, 2)}) {
    auto a = admissible_level(k);
    o.require(a.has_value(), "k=" + k.str() + " not admissible");
    if (a) o.require(coset_central_charge(k) == minimal_central_charge(a->p, a->p + a->q), "c^Com at k=" + k.str());
    auto r = coset_check(k, 3);
    o.require(r.verified, "k=" + k.str() + ": " + r.witness.dump());
  }
  return o;
}

Outcome branching() {
  Outcome o;
  for (auto [tj, te] : {std::pair{1, 1}, std::pair{1, 0}}) {
    auto r = branching_check(q(1), tj, te, 3);
    o.require(r.verified, "k=1 2j=" + std::to_string(tj) + " 2eps=" + std::to_string(te));
  }
  o.require(branching_check(q(2), 1, 1, 3).verified, "k=2");
  return o;
}

Outcome vacuum_drift() {
  Outcome o;
  for (Rational k : {q(1), q(2), q(3), q(-1, 2)}) {
    const Rational tc = critical_tau(k);
    for (Rational kappa : {q(0), q(3), q(17, 3), q(-5, 2)})
      o.require(vacuum_drift_check(k, kappa, tc).verified, "k=" + k.str() + " kappa=" + kappa.str());
    for (Rational tau : {tc + q(1, 7), tc / q(2), q(0), q(3)})
      o.require(!vacuum_drift_check(k, q(3), tau).verified, "k=" + k.str() + " tau=" + tau.str() + " vanished");
  }
  return o;
}

Outcome tensor_drift() {
  Outcome o;
  for (Rational k : {q(1), q(2), q(3), q(-1, 2), q(-2, 3), q(4)})
    o.require(theorem2_drift_check(k, critical_kappa(k), critical_tau(k)).verified, "k=" + k.str());
  int off = 0;
  for (Rational kappa : {q(2), q(5, 2), q(3), q(7, 2), q(4)})
    for (Rational tau : {q(1, 4), q(1, 2), q(1)}) {
      const bool at = kappa == q(3) && tau == q(1, 2);
      const bool zero = theorem2_drift_check(q(1), kappa, tau).verified;
      o.require(zero == at, "sweep kappa=" + kappa.str() + " tau=" + tau.str());
      off += at ? 0 : 1;
    }
  if (o.pass) o.detail = "6 levels, " + std::to_string(off) + " off-critical points nonzero";
  return o;
}

Outcome corollary() {
  Outcome o;
  for (Rational k : {q(1), q(2), q(-1, 2)}) {
    auto r = corollary_projection_check(k, critical_kappa(k), critical_tau(k));
    o.require(r.verified, "k=" + k.str());
    o.require(r.details["projected_vectors_span_L(1/2)"] == true, "span at k=" + k.str());
  }
  return o;
}

AutSeries<Rational> random_series(std::mt19937_64& rng, int order) {
  std::uniform_int_distribution<long> num(-7, 7), den(1, 5);
  auto s = AutSeries<Rational>::identity(order);
  for (auto& c : s.coeff) c = Rational(num(rng), den(rng));
  return s;
}

Outcome q_operator_property() {
  Outcome o;
  std::mt19937_64 rng(2024);
  VermaModule verma(q(-22, 5), q(-1, 5), 6);
  auto quot = virasoro_quotient(verma, 6);
  for (int trial = 0; trial < 50; ++trial) {
    auto rho = random_series(rng, 5), mu = random_series(rng, 5);
    const auto prod = compose(rho, mu);
    o.require(q_operator(verma, prod, 6) == q_operator(verma, rho, 6) * q_operator(verma, mu, 6),
              "Verma, trial " + std::to_string(trial));
    o.require(q_operator(verma, quot, prod) == q_operator(verma, quot, rho) * q_operator(verma, quot, mu),
              "quotient, trial " + std::to_string(trial));
  }
  if (o.pass) o.detail = "50 pairs, M(-22/5,-1/5) and L(-22/5,-1/5), grades <= 6";
  return o;
}

Outcome sle_series() {
  Outcome o;
  // Exact mode: rational time steps and Brownian increments.
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-20, 20);
  for (int path = 0; path < 20; ++path) {
    auto s = SleSeriesState<Rational>::start(q(1), 4);
    for (int n = 0; n < 30; ++n) {
      sle_step(s, q(1, 100 + path), Rational(num(rng), 37));
      o.require(s.f.coeff[1] == q(2) * s.t, "exact a_-1 != 2t");
    }
  }
  // Floating-point paths.
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    for (const auto& row : sle_trajectory(3.0, 4, 0.5, 1e-3, seed))
      worst = std::max(worst, std::abs(row.coeff[1] - 2 * row.t));
  o.require(worst < 1e-12, "floating a_-1 deviates from 2t by " + std::to_string(worst));
  auto stats = sle_coefficient_stats(3.0, 4, 0.5, 1e-3, 10000, 42);
  const double z = std::abs(stats[2].mean) / stats[2].stderr_of_mean();
  o.require(z < 3.0, "E[a_-2(T)] z = " + std::to_string(z));
  std::ostringstream d;
  d << "float |a_-1 - 2t| <= " << worst << ", E[a_-2(T)] z = " << z;
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome mc_suite() {
  Outcome o;
  McConfig cfg;  // T = 0.5, dt = 1e-3, 10^4 samples, seed 42
  cfg.grade_cap = 3;
  auto good = assemble_generator(Target::Tensor, q(1), q(3), q(1, 2), 3);
  auto rg = mc_simulate(good, cfg);
  double worst = 0;
  for (std::size_t cp = 0; cp < rg.times.size(); ++cp)
    for (std::size_t c = 0; c < rg.components.size(); ++c) worst = std::max(worst, rg.z_score(cp, c));
  o.require(rg.max_final_z() < cfg.z_threshold, "correct parameters: final z = " + std::to_string(rg.max_final_z()));
  auto bad = assemble_generator(Target::Tensor, q(1), q(3), q(1), 3);
  auto rb = mc_simulate(bad, cfg);
  o.require(rb.max_final_z() > cfg.detect_threshold, "tau = 1: final z only " + std::to_string(rb.max_final_z()));
  std::ostringstream d;
  d << rg.components.size() << " components, max final z = " << rg.max_final_z() << " (all checkpoints "
    << worst << "); tau=1 max z = " << rb.max_final_z() << " at " << rb.components[rb.argmax_final_z()].label;
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome internal_process() {
  Outcome o;
  InternalConfig cfg;  // kappa 3, tau 1/2, T = 0.2, dt = 1e-4, order 4
  double ratio_sum = 0;
  const int seeds = 5;
  for (int s = 0; s < seeds; ++s) {
    InternalConfig coarse = cfg, fine = cfg;
    coarse.seed = fine.seed = 100 + s;
    coarse.path_halvings = 1;
    fine.dt = cfg.dt / 2;
    auto rc = run_internal_process(coarse);
    auto rf = run_internal_process(fine);
    o.require(rc.max_det_deviation < 1e-3, "det deviation " + std::to_string(rc.max_det_deviation));
    o.require(rf.final_difference > 0, "zero discrepancy");
    ratio_sum += rc.final_difference / rf.final_difference;
  }
  const double ratio = ratio_sum / seeds;
  o.require(ratio > 1.6 && ratio < 2.5, "error ratio under dt halving = " + std::to_string(ratio));
  if (o.pass) o.detail = "mean error ratio dt -> dt/2: " + std::to_string(ratio);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "singular vector", 1, singular_vectors},
      {2, "SLE constants", 1, sle_constants_match},
      {3, "Sugawara central charge", 30, sugawara},
      {4, "coset identity", 60, coset_identity},
      {5, "branching", 120, branching},
      {6, "vacuum drift", 10, vacuum_drift},
      {7, "tensor drift |s>", 120, tensor_drift},
      {8, "corollary projections", 10, corollary},
      {9, "Q multiplicativity", 60, q_operator_property},
      {10, "SLE series integrator", 60, sle_series},
      {11, "MC martingale suite", 300, mc_suite},
      {12, "internal process", 120, internal_process},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.pass && secs > c.budget_s) {
      out.pass = false;
      out.detail = "over runtime budget";
    }
    failures += out.pass ? 0 : 1;
    std::printf("CRITERION %2d %s  %-26s %8.2fs / %gs  %s\n", c.id, out.pass ? "PASS" : "FAIL", c.name, secs,
                c.budget_s, out.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
