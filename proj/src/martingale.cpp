#include "slecoset/martingale.hpp"

#include "slecoset/errors.hpp"
#include "slecoset/virasoro.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace slecoset {

namespace {

using Complex = std::complex<double>;

template <class Key>
std::string key_label(const Key& key) {
  return to_string(key);
}

/// Fills labels, grades, initial and the operator matrices of a spec from a
/// truncated quotient and the module operators.
template <class Quotient, class Vec, class L, class X, class Cas>
void fill_spec(GeneratorSpec& spec, const Quotient& q, const Vec& initial, L&& sug, X&& current, Cas&& casimir,
               bool with_currents) {
  for (std::size_t i = 0; i < q.dim(); ++i) {
    spec.labels.push_back(key_label(q.representative(i)));
    spec.grades.push_back(q.grade(i));
  }
  spec.initial = q.project(initial);
  spec.l_minus2 = q.operator_matrix([&](const Vec& v) { return sug(-2, v); });
  spec.l_minus1 = q.operator_matrix([&](const Vec& v) { return sug(-1, v); });
  const std::size_t n = q.dim();
  spec.drift = Rational(-2) * spec.l_minus2 + (spec.kappa / Rational(2)) * (spec.l_minus1 * spec.l_minus1);
  if (with_currents) {
    for (Generator g : kGenerators)
      spec.currents.push_back(q.operator_matrix([&](const Vec& v) { return current(g, v); }));
    spec.casimir = q.operator_matrix([&](const Vec& v) { return casimir(v); });
    spec.drift += (spec.tau / Rational(2)) * spec.casimir;
  } else {
    spec.casimir = Matrix(n, n);
  }
}

nlohmann::json coordinate_witness(const std::vector<Rational>& x, const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) return {{"component", labels[i]}, {"index", i}, {"coefficient", x[i].str()}};
  return nullptr;
}

bool all_zero(const std::vector<Rational>& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& r) { return r.is_zero(); });
}

std::string vector_string(const AffineVector& v) {
  std::string out;
  for (const auto& [m, c] : v) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ") " + to_string(m);
  }
  return out.empty() ? "0" : out;
}

nlohmann::json drift_top_level(const std::string& theorem, const Rational& k, const Rational& kappa,
                               const Rational& tau, int grade) {
  return {{"theorem", theorem}, {"k", k.str()}, {"kappa", kappa.str()}, {"tau", tau.str()}, {"grade", grade}};
}

void require_tensor_level(const Rational& k) {
  if (!admissible_level(k))
    throw InvalidArgument("k = " + k.str() +
                          " is not admissible: need k = -2 + p/q with p >= 2, gcd(p,q) = 1, q >= 1");
}

/// Real sparse matrix acting on complex vectors.
struct CsrMatrix {
  std::vector<std::uint32_t> ptr{0};
  std::vector<std::uint32_t> col;
  std::vector<double> val;

  static CsrMatrix from(const Matrix& m, const std::vector<std::size_t>& keep) {
    CsrMatrix out;
    for (std::size_t i : keep) {
      for (std::size_t jj = 0; jj < keep.size(); ++jj) {
        const Rational& x = m(i, keep[jj]);
        if (x.is_zero()) continue;
        out.col.push_back(static_cast<std::uint32_t>(jj));
        out.val.push_back(x.to_double());
      }
      out.ptr.push_back(static_cast<std::uint32_t>(out.col.size()));
    }
    return out;
  }

  bool empty() const { return val.empty(); }

  /// y += coef * (M x)
  void add_apply(const Complex* x, Complex coef, Complex* y) const {
    const std::size_t rows = ptr.size() - 1;
    for (std::size_t i = 0; i < rows; ++i) {
      Complex s = 0;
      for (std::uint32_t e = ptr[i]; e < ptr[i + 1]; ++e) s += val[e] * x[col[e]];
      if (s != Complex(0)) y[i] += coef * s;
    }
  }
};

long checked_steps(double total_time, double dt) {
  if (!(dt > 0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (!(total_time > 0) || !std::isfinite(total_time)) throw InvalidArgument("T must be positive");
  const long steps = std::lround(total_time / dt);
  if (steps < 1) throw InvalidArgument("T/dt must be at least 1");
  return steps;
}

// Truncated series over the complex numbers.

CSeries smul(const CSeries& a, const CSeries& b) {
  const std::size_t n = a.size();
  CSeries c(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == Complex(0)) continue;
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

CSeries sadd(const CSeries& a, const CSeries& b, Complex s = 1.0) {
  CSeries c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += s * b[i];
  return c;
}

CSeries sinv(const CSeries& a) {
  if (a[0] == Complex(0)) throw NumericalError("series with vanishing constant term is not invertible");
  CSeries r(a.size());
  r[0] = 1.0 / a[0];
  for (std::size_t i = 1; i < a.size(); ++i) {
    Complex s = 0;
    for (std::size_t j = 1; j <= i; ++j) s += a[j] * r[i - j];
    r[i] = -s / a[0];
  }
  return r;
}

using SMat = std::array<CSeries, 4>;

SMat mmul(const SMat& a, const SMat& b) {
  SMat c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[2 * i + j] = sadd(smul(a[2 * i], b[j]), smul(a[2 * i + 1], b[2 + j]));
  return c;
}

std::array<CSeries, 2> mvec(const SMat& a, const std::array<CSeries, 2>& v) {
  return {sadd(smul(a[0], v[0]), smul(a[1], v[1])), sadd(smul(a[2], v[0]), smul(a[3], v[1]))};
}

using CMat2 = std::array<Complex, 4>;

/// sum_a X_a dW^a in the defining representation.
CMat2 noise_matrix(const std::array<double, 3>& dw) {
  const double r = 1.0 / std::sqrt(2.0);
  return {Complex(dw[0] * r, 0), Complex(dw[1] * r, dw[2] * r), Complex(dw[1] * r, -dw[2] * r),
          Complex(-dw[0] * r, 0)};
}

/// sum_a X_a^2 in the defining representation, from the orthonormal basis.
CMat2 casimir_matrix() {
  CMat2 total{};
  for (const auto& x : orthonormal_basis()) {
    auto m = x.direction.to_matrix();
    const Complex pref =
        std::sqrt(x.scale.to_double()) * (x.imaginary ? Complex(0, 1) : Complex(1, 0));
    CMat2 a{pref * m[0][0].to_double(), pref * m[0][1].to_double(), pref * m[1][0].to_double(),
            pref * m[1][1].to_double()};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) total[2 * i + j] += a[2 * i] * a[j] + a[2 * i + 1] * a[2 + j];
  }
  return total;
}

SMat scalar_times_series(const CMat2& m, const CSeries& g) {
  SMat out;
  for (int i = 0; i < 4; ++i) {
    out[i] = g;
    for (auto& c : out[i]) c *= m[i];
  }
  return out;
}

}  // namespace

std::string target_name(Target t) {
  switch (t) {
    case Target::Virasoro: return "virasoro";
    case Target::AffineVacuum: return "affine";
    case Target::Tensor: return "tensor";
  }
  return "tensor";
}

Target parse_target(const std::string& name) {
  if (name == "virasoro") return Target::Virasoro;
  if (name == "affine" || name == "vacuum") return Target::AffineVacuum;
  if (name == "tensor") return Target::Tensor;
  throw InvalidArgument("unknown target '" + name + "' (expected virasoro, affine or tensor)");
}

Rational critical_kappa(const Rational& k) {
  if (k == Rational(-3)) throw InvalidArgument("k = -3 has no critical kappa");
  return Rational(4) * (k + Rational(2)) / (k + Rational(3));
}

Rational critical_tau(const Rational& k) {
  if (k == Rational(-3)) throw InvalidArgument("k = -3 has no critical tau");
  return Rational(2) / (k + Rational(3));
}

GeneratorSpec assemble_generator(Target target, const Rational& k, const Rational& kappa, const Rational& tau,
                                 int grade) {
  if (grade < 2) throw InvalidArgument("assemble_generator needs grade >= 2");
  GeneratorSpec spec;
  spec.target = target;
  spec.k = k;
  spec.kappa = kappa;
  spec.tau = tau;
  spec.grade = grade;
  switch (target) {
    case Target::Virasoro: {
      const SleConstants sc = sle_constants(kappa);
      VermaModule m(sc.c, sc.h, grade);
      auto q = virasoro_quotient(m, grade);
      fill_spec(
          spec, q, vir_vacuum(), [&](int n, const VirVector& v) { return m.apply_unbounded(n, v); },
          [](Generator, const VirVector& v) { return v; }, [](const VirVector& v) { return v; }, false);
      break;
    }
    case Target::AffineVacuum: {
      if (k + Rational(1) == Rational(-2)) throw InvalidArgument("level k+1 = -2 is critical");
      AffineModule m(k + Rational(1), 0, grade);
      const auto& q = m.quotient(grade);
      fill_spec(
          spec, q, m.highest_weight(), [&](int n, const AffineVector& v) { return m.sugawara_unbounded(n, v); },
          [&](Generator g, const AffineVector& v) { return m.apply_unbounded(g, -1, v); },
          [&](const AffineVector& v) {
            AffineVector out;
            for (const auto& t : casimir_terms())
              add_scaled(out, m.apply_unbounded(t.left, -1, m.apply_unbounded(t.right, -1, v)), t.coeff);
            return out;
          },
          true);
      break;
    }
    case Target::Tensor: {
      require_tensor_level(k);
      TensorModule t = TensorModule::build(k, 1, 1, grade);
      const auto& q = t.quotient(grade);
      fill_spec(
          spec, q, s_vector(t), [&](int n, const TensorVector& v) { return t.total_sugawara(n, v); },
          [&](Generator g, const TensorVector& v) { return t.diag_apply(g, -1, v); },
          [&](const TensorVector& v) { return t.diag_casimir(v); }, true);
      break;
    }
  }
  return spec;
}

VerificationReport vacuum_drift_check(const Rational& k, const Rational& kappa, const Rational& tau) {
  if (k == Rational(-3)) throw InvalidArgument("k = -3 makes the level k+1 critical");
  AffineModule m(k + Rational(1), 0, 2);
  const AffineVector vac = m.highest_weight();
  const AffineVector l1 = m.sugawara(-1, vac);
  AffineVector cas;
  for (const auto& t : casimir_terms())
    add_scaled(cas, m.apply(t.left, -1, m.apply(t.right, -1, vac)), t.coeff);
  AffineVector drift = scaled(m.sugawara(-2, vac), Rational(-2));
  add_scaled(drift, m.sugawara_unbounded(-1, l1), kappa / Rational(2));
  add_scaled(drift, cas, tau / Rational(2));

  VerificationReport r;
  r.check = "vacuum-drift";
  r.parameters = {{"k", k.str()}, {"kappa", kappa.str()}, {"tau", tau.str()}};
  r.top_level = drift_top_level("vacuum", k, kappa, tau, 2);
  r.verified = drift.empty();
  r.details["translation_invariant"] = l1.empty();
  r.details["casimir_coefficient"] = (tau / Rational(2) - Rational(1) / (k + Rational(3))).str();
  r.details["drift"] = vector_string(drift);
  r.details["critical_tau"] = critical_tau(k).str();
  if (!r.verified)
    r.witness = {{"component", to_string(drift.begin()->first)}, {"coefficient", drift.begin()->second.str()},
                 {"direction", "casimir"}};
  return r;
}

VerificationReport theorem2_drift_check(const Rational& k, const Rational& kappa, const Rational& tau, int grade) {
  require_tensor_level(k);
  if (grade < 2) throw InvalidArgument("theorem2 check needs grade >= 2");
  TensorModule t = TensorModule::build(k, 1, 1, grade);
  const TensorVector s = s_vector(t);
  TensorVector drift = scaled(t.total_sugawara(-2, s), Rational(-2));
  add_scaled(drift, t.total_sugawara(-1, t.total_sugawara(-1, s)), kappa / Rational(2));
  add_scaled(drift, t.diag_casimir(s), tau / Rational(2));
  TensorVector vir = scaled(t.coset_virasoro(-2, s), Rational(-2));
  add_scaled(vir, t.coset_virasoro(-1, t.coset_virasoro(-1, s)), kappa / Rational(2));
  const TensorVector cas = drift - vir;

  const auto& q = t.quotient(grade);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < q.dim(); ++i) labels.push_back(q.label(i));
  const auto x = q.project(drift), xv = q.project(vir), xc = q.project(cas);

  VerificationReport r;
  r.check = "thm2";
  r.parameters = {{"k", k.str()}, {"kappa", kappa.str()}, {"tau", tau.str()}, {"grade", grade}};
  r.top_level = drift_top_level("thm2", k, kappa, tau, grade);
  r.verified = all_zero(x);
  const bool vir_zero = all_zero(xv), cas_zero = all_zero(xc);
  r.details["critical_kappa"] = critical_kappa(k).str();
  r.details["critical_tau"] = critical_tau(k).str();
  r.details["coset_virasoro_part_vanishes"] = vir_zero;
  r.details["casimir_part_vanishes"] = cas_zero;
  r.details["casimir_coefficient"] = (tau / Rational(2) - Rational(1) / (k + Rational(3))).str();
  r.details["quotient_dim"] = q.dim();
  r.details["universal_terms"] = drift.size();
  std::string direction = "none";
  if (!r.verified) direction = vir_zero ? "casimir" : (cas_zero ? "coset-virasoro" : "both");
  r.details["residual_direction"] = direction;
  if (!r.verified) {
    r.witness = coordinate_witness(x, labels);
    r.witness["direction"] = direction;
    for (const auto& u : t.basis(2)) {
      Rational p = t.pairing(u, drift);
      if (!p.is_zero()) {
        r.witness["test_vector"] = to_string(u);
        r.witness["pairing"] = p.str();
        break;
      }
    }
  }
  return r;
}

VerificationReport corollary_projection_check(const Rational& k, const Rational& kappa, const Rational& tau) {
  require_tensor_level(k);
  TensorModule t = TensorModule::build(k, 1, 1, 2);
  const AffineModule& left = t.left();
  const AffineModule& right = t.right();
  const AffineMonomial top{{}, 0};

  auto project = [&](const TensorVector& v, bool with_e) {
    AffineVector out;
    for (const auto& [key, c] : v) {
      AffineVector b{{key.second, Rational(1)}};
      if (with_e) b = right.apply_unbounded(Generator::E, 0, b);
      Rational w = right.pairing(top, b);
      if (!w.is_zero()) add_term(out, key.first, c * w);
    }
    return out;
  };
  auto left_drift = [&](const AffineVector& v) {
    AffineVector out = scaled(left.sugawara_unbounded(-2, v), Rational(-2));
    add_scaled(out, left.sugawara_unbounded(-1, left.sugawara_unbounded(-1, v)), kappa / Rational(2));
    for (const auto& term : casimir_terms())
      add_scaled(out, left.apply_unbounded(term.left, -1, left.apply_unbounded(term.right, -1, v)),
                 tau / Rational(2) * term.coeff);
    return out;
  };

  const TensorVector s = s_vector(t);
  TensorVector drift = scaled(t.total_sugawara(-2, s), Rational(-2));
  add_scaled(drift, t.total_sugawara(-1, t.total_sugawara(-1, s)), kappa / Rational(2));
  add_scaled(drift, t.diag_casimir(s), tau / Rational(2));

  VerificationReport r;
  r.check = "corollary";
  r.parameters = {{"k", k.str()}, {"kappa", kappa.str()}, {"tau", tau.str()}};
  r.top_level = drift_top_level("corollary", k, kappa, tau, 2);
  r.verified = true;

  const auto& q0 = left.quotient(0);
  Matrix span(q0.dim(), 2);
  nlohmann::json maps = nlohmann::json::array();
  int column = 0;
  for (bool with_e : {false, true}) {
    const std::string name = with_e ? "1 (x) <1/2|E" : "1 (x) <1/2|";
    const AffineVector ps = project(s, with_e);
    const AffineVector pd = project(drift, with_e);
    const bool vanishes = left.vanishes_in_quotient(pd);
    const bool reduces = (pd - left_drift(ps)).empty();
    auto coords = q0.project(ps);
    for (std::size_t i = 0; i < coords.size(); ++i) span(i, column) = coords[i];
    ++column;
    maps.push_back({{"map", name},
                    {"projected_s", vector_string(ps)},
                    {"projected_drift_vanishes", vanishes},
                    {"reduces_to_level_k_drift", reduces}});
    if ((!vanishes || !reduces) && r.verified) {
      r.verified = false;
      r.witness = {{"map", name}, {"projected_drift", vector_string(pd)}, {"reduces", reduces}};
    }
  }
  const bool spans = rank(span) == 2;
  r.details["maps"] = maps;
  r.details["projected_vectors_span_L(1/2)"] = spans;
  if (!spans && r.verified) {
    r.verified = false;
    r.witness = {{"reason", "projected initial vectors do not span L(1/2)"}};
  }
  return r;
}

std::array<Complex, 3> noise_coefficients(double sqrt_tau, double dw1, double dw2, double dw3) {
  const double r = sqrt_tau / std::sqrt(2.0);
  return {Complex(r * dw2, r * dw3), Complex(r * dw1, 0.0), Complex(r * dw2, -r * dw3)};
}

unsigned worker_count(unsigned requested, std::size_t work_items) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SLE_COSET_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, work_items)));
}

double McResult::z_score(std::size_t checkpoint, std::size_t component) const {
  const RunningStats& st = stats[checkpoint][component];
  const double diff = std::abs(st.mean - components[component].initial);
  const double se = st.stderr_of_mean();
  if (se > 0) return diff / se;
  return diff < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
}

std::size_t McResult::argmax_final_z() const {
  std::size_t best = 0;
  double z = -1;
  for (std::size_t c = 0; c < components.size(); ++c) {
    double zc = z_score(times.size() - 1, c);
    if (zc > z) {
      z = zc;
      best = c;
    }
  }
  return best;
}

double McResult::max_final_z() const {
  return components.empty() ? 0.0 : z_score(times.size() - 1, argmax_final_z());
}

McResult mc_simulate(const GeneratorSpec& spec, const McConfig& config) {
  if (config.samples < 100) throw InvalidArgument("need at least 100 samples");
  if (config.checkpoints < 1) throw InvalidArgument("need at least one checkpoint");
  const int cap = config.grade_cap < 0 ? spec.grade : config.grade_cap;
  if (cap > spec.grade) throw InvalidArgument("grade cap above the generator truncation");
  const long steps = checked_steps(config.total_time, config.dt);
  const int checkpoints = static_cast<int>(std::min<long>(config.checkpoints, steps));

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < spec.dim(); ++i)
    if (spec.grades[i] <= cap) keep.push_back(i);
  const std::size_t n = keep.size();
  const CsrMatrix drift = CsrMatrix::from(spec.drift, keep);
  const CsrMatrix l1 = CsrMatrix::from(spec.l_minus1, keep);
  std::vector<CsrMatrix> cur;
  for (const auto& m : spec.currents) cur.push_back(CsrMatrix::from(m, keep));
  const bool complex_noise = spec.has_currents();

  McResult result;
  std::vector<long> at_step;
  for (int c = 1; c <= checkpoints; ++c) {
    at_step.push_back(steps * c / checkpoints);
    result.times.push_back(config.dt * static_cast<double>(at_step.back()));
  }
  for (std::size_t jj = 0; jj < n; ++jj) {
    const std::size_t i = keep[jj];
    result.components.push_back({jj, false, spec.labels[i], spec.grades[i], spec.initial[i].to_double()});
    if (complex_noise) result.components.push_back({jj, true, spec.labels[i], spec.grades[i], 0.0});
  }

  const double sdt = std::sqrt(config.dt);
  const double sqrt_kappa = std::sqrt(spec.kappa.to_double());
  const double sqrt_tau = complex_noise ? std::sqrt(spec.tau.to_double()) : 0.0;
  if (!std::isfinite(sqrt_kappa) || !std::isfinite(sqrt_tau)) throw InvalidArgument("kappa and tau must be >= 0");
  std::vector<Complex> w0(n);
  for (std::size_t jj = 0; jj < n; ++jj) w0[jj] = spec.initial[keep[jj]].to_double();

  constexpr std::size_t kChunk = 250;
  const std::size_t chunks = (config.samples + kChunk - 1) / kChunk;
  using ChunkStats = std::vector<std::vector<RunningStats>>;
  std::vector<ChunkStats> partial(chunks, ChunkStats(checkpoints, std::vector<RunningStats>(result.components.size())));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    std::vector<Complex> w(n), tmp(n);
    std::normal_distribution<double> normal;
    for (std::size_t chunk; (chunk = next.fetch_add(1)) < chunks && !failed;) {
      ChunkStats& st = partial[chunk];
      const std::size_t first = chunk * kChunk, last = std::min(config.samples, first + kChunk);
      for (std::size_t sample = first; sample < last; ++sample) {
        auto engine = sample_engine(config.seed, sample);
        normal.reset();
        w = w0;
        std::size_t cp = 0;
        for (long step = 1; step <= steps; ++step) {
          tmp = w;
          drift.add_apply(tmp.data(), config.dt, w.data());
          l1.add_apply(tmp.data(), sqrt_kappa * sdt * normal(engine), w.data());
          if (complex_noise) {
            const double d1 = sdt * normal(engine), d2 = sdt * normal(engine), d3 = sdt * normal(engine);
            const auto c = noise_coefficients(sqrt_tau, d1, d2, d3);
            for (int g = 0; g < 3; ++g) cur[g].add_apply(tmp.data(), c[g], w.data());
          }
          if (cp < at_step.size() && step == at_step[cp]) {
            std::size_t comp = 0;
            for (std::size_t jj = 0; jj < n; ++jj) {
              if (!std::isfinite(w[jj].real()) || !std::isfinite(w[jj].imag())) {
                std::lock_guard lock(failure_mutex);
                failure = "non-finite component " + spec.labels[keep[jj]] + " in sample " + std::to_string(sample);
                failed = true;
                return;
              }
              st[cp][comp++].add(w[jj].real());
              if (complex_noise) st[cp][comp++].add(w[jj].imag());
            }
            ++cp;
          }
        }
      }
    }
  };

  const unsigned workers = worker_count(config.threads, chunks);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed) throw NumericalError(failure);

  result.stats.assign(checkpoints, std::vector<RunningStats>(result.components.size()));
  for (const auto& part : partial)
    for (int cp = 0; cp < checkpoints; ++cp)
      for (std::size_t c = 0; c < result.components.size(); ++c) result.stats[cp][c].merge(part[cp][c]);
  return result;
}

void write_mc_csv(std::ostream& os, const McResult& r) {
  os << "t,component_id,mean,stderr,initial_value,z_score\n" << std::setprecision(17);
  for (std::size_t cp = 0; cp < r.times.size(); ++cp)
    for (std::size_t c = 0; c < r.components.size(); ++c) {
      const auto& comp = r.components[c];
      const auto& st = r.stats[cp][c];
      os << r.times[cp] << ',' << comp.index << (comp.imaginary ? ".im" : ".re") << ',' << st.mean << ','
         << st.stderr_of_mean() << ',' << comp.initial << ',' << r.z_score(cp, c) << '\n';
    }
}

nlohmann::json mc_summary(const GeneratorSpec& spec, const McConfig& config, const McResult& r) {
  nlohmann::json comps = nlohmann::json::array();
  const std::size_t last = r.times.size() - 1;
  for (std::size_t c = 0; c < r.components.size(); ++c) {
    const auto& comp = r.components[c];
    comps.push_back({{"component_id", std::to_string(comp.index) + (comp.imaginary ? ".im" : ".re")},
                     {"label", comp.label},
                     {"grade", comp.grade},
                     {"initial", comp.initial},
                     {"mean", r.stats[last][c].mean},
                     {"stderr", r.stats[last][c].stderr_of_mean()},
                     {"z_score", r.z_score(last, c)}});
  }
  const double zmax = r.max_final_z();
  const auto& worst = r.components.empty() ? McComponent{} : r.components[r.argmax_final_z()];
  double zmax_all = 0;
  for (std::size_t cp = 0; cp < r.times.size(); ++cp)
    for (std::size_t c = 0; c < r.components.size(); ++c) zmax_all = std::max(zmax_all, r.z_score(cp, c));
  const bool martingale = zmax < config.z_threshold;
  return {{"schema_version", kSchemaVersion},
          {"check", "simulate"},
          {"parameters",
           {{"target", target_name(spec.target)},
            {"k", spec.k.str()},
            {"kappa", spec.kappa.str()},
            {"tau", spec.tau.str()},
            {"grade", spec.grade},
            {"T", config.total_time},
            {"dt", config.dt},
            {"samples", config.samples},
            {"seed", config.seed},
            {"checkpoints", config.checkpoints},
            {"z_threshold", config.z_threshold}}},
          {"status", martingale ? "verified" : "violated"},
          {"max_z_final", zmax},
          {"max_z_all_checkpoints", zmax_all},
          {"drift_detected", zmax > config.detect_threshold},
          {"worst_component", worst.label + (worst.imaginary ? " (imag)" : " (real)")},
          {"components", comps}};
}

InternalState InternalState::start(int order, int zero_index) {
  if (order < 0) throw InvalidArgument("series order must be non-negative");
  if (zero_index != 0 && zero_index != 1) throw InvalidArgument("L(1/2) has basis |1/2>, F|1/2>");
  InternalState s;
  s.order = order;
  for (auto& c : s.lambda) c.assign(order + 1, 0.0);
  for (auto& c : s.theta) c.assign(order + 1, 0.0);
  s.lambda[zero_index][0] = 1.0;
  s.theta[0][0] = 1.0;
  s.theta[3][0] = 1.0;
  return s;
}

void internal_process_step(InternalState& s, const SleSeriesState<double>& f, double tau, double dt,
                           const std::array<double, 3>& dw, InternalScheme scheme) {
  if (f.f.order() != s.order) throw InvalidArgument("series truncation of f_t and of the internal state differ");
  if (!(dt > 0)) throw InvalidArgument("dt must be positive");
  const std::vector<double> r = reciprocal(f.f);
  CSeries g(s.order + 1);
  for (int i = 1; i <= s.order; ++i) g[i] = r[i - 1];
  CMat2 m = noise_matrix(dw);
  for (auto& x : m) x *= std::sqrt(tau);
  const SMat nmat = scalar_times_series(m, g);
  const auto nl = mvec(nmat, s.lambda);
  const SMat tn = mmul(s.theta, nmat);
  if (scheme == InternalScheme::Milstein) {
    const SMat n2 = mmul(nmat, nmat);
    const auto n2l = mvec(n2, s.lambda);
    const SMat tn2 = mmul(s.theta, n2);
    for (int i = 0; i < 2; ++i) s.lambda[i] = sadd(sadd(s.lambda[i], nl[i], -1.0), n2l[i], 0.5);
    for (int i = 0; i < 4; ++i) s.theta[i] = sadd(sadd(s.theta[i], tn[i]), tn2[i], 0.5);
  } else {
    CMat2 cas = casimir_matrix();
    for (auto& x : cas) x *= 0.5 * tau * dt;
    const SMat drift = scalar_times_series(cas, smul(g, g));
    const auto dl = mvec(drift, s.lambda);
    const SMat td = mmul(s.theta, drift);
    for (int i = 0; i < 2; ++i) s.lambda[i] = sadd(sadd(s.lambda[i], nl[i], -1.0), dl[i]);
    for (int i = 0; i < 4; ++i) s.theta[i] = sadd(sadd(s.theta[i], tn[i]), td[i]);
  }
}

CSeries series_determinant(const InternalState& s) {
  return sadd(smul(s.theta[0], s.theta[3]), smul(s.theta[1], s.theta[2]), -1.0);
}

std::array<CSeries, 2> theta_inverse_applied(const InternalState& s, int zero_index) {
  const CSeries inv = sinv(series_determinant(s));
  CSeries a = zero_index == 0 ? s.theta[3] : s.theta[1];
  CSeries b = zero_index == 0 ? s.theta[2] : s.theta[0];
  const Complex sa = zero_index == 0 ? 1.0 : -1.0;
  const Complex sb = zero_index == 0 ? -1.0 : 1.0;
  for (auto& x : a) x *= sa;
  for (auto& x : b) x *= sb;
  return {smul(a, inv), smul(b, inv)};
}

InternalResult run_internal_process(const InternalConfig& config) {
  if (config.path_halvings < 0) throw InvalidArgument("path_halvings must be non-negative");
  if (config.kappa < 0 || config.tau < 0) throw InvalidArgument("kappa and tau must be non-negative");
  const long steps = checked_steps(config.total_time, config.dt);
  const long sub = 1L << config.path_halvings;
  const double sfine = std::sqrt(config.dt / static_cast<double>(sub));
  auto engine = sample_engine(config.seed, 0);
  std::normal_distribution<double> normal;

  InternalResult out;
  out.state = InternalState::start(config.order);
  auto f = SleSeriesState<double>::start(std::sqrt(config.kappa), config.order);
  for (long n = 0; n < steps; ++n) {
    double db = 0;
    std::array<double, 3> dw{};
    for (long j = 0; j < sub; ++j) {
      db += sfine * normal(engine);
      for (auto& x : dw) x += sfine * normal(engine);
    }
    internal_process_step(out.state, f, config.tau, config.dt, dw, config.scheme);
    sle_step(f, config.dt, db);
    const CSeries det = series_determinant(out.state);
    for (std::size_t i = 0; i < det.size(); ++i)
      out.max_det_deviation = std::max(out.max_det_deviation, std::abs(det[i] - (i == 0 ? 1.0 : 0.0)));
  }
  out.steps = static_cast<std::size_t>(steps);
  const auto via_theta = theta_inverse_applied(out.state);
  for (int i = 0; i < 2; ++i)
    for (int c = 0; c <= config.order; ++c)
      out.final_difference = std::max(out.final_difference, std::abs(out.state.lambda[i][c] - via_theta[i][c]));
  return out;
}

}  // namespace slecoset
