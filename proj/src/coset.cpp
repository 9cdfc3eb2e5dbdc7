#include "slecoset/coset.hpp"

#include "slecoset/errors.hpp"
#include "slecoset/virasoro.hpp"

#include <algorithm>

namespace slecoset {

namespace {

template <class F>
TensorVector map_left(const TensorVector& v, F&& f) {
  TensorVector out;
  for (const auto& [key, coef] : v)
    for (const auto& [m, c] : f(AffineVector{{key.first, Rational(1)}}))
      add_term(out, TensorKey{m, key.second}, coef * c);
  return out;
}

template <class F>
TensorVector map_right(const TensorVector& v, F&& f) {
  TensorVector out;
  for (const auto& [key, coef] : v)
    for (const auto& [m, c] : f(AffineVector{{key.second, Rational(1)}}))
      add_term(out, TensorKey{key.first, m}, coef * c);
  return out;
}

void check_levels(const Rational& k) {
  if (k == Rational(-2)) throw InvalidArgument("k = -2 is the critical level");
  if (k == Rational(-3)) throw InvalidArgument("k = -3 makes the diagonal level k+1 critical");
}

std::string first_nonzero(const TensorVector& v) {
  if (v.empty()) return "";
  return to_string(v.begin()->first) + " : " + v.begin()->second.str();
}

}  // namespace

TensorVector tensor(const AffineVector& a, const AffineVector& b) {
  TensorVector out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) add_term(out, TensorKey{ma, mb}, ca * cb);
  return out;
}

std::string to_string(const TensorKey& key) { return to_string(key.first) + " (x) " + to_string(key.second); }

int grade_of(const TensorKey& key) { return key.first.grade() + key.second.grade(); }

int top_grade(const TensorVector& v) {
  int g = -1;
  for (const auto& [key, c] : v) g = std::max(g, grade_of(key));
  return g;
}

TensorQuotient::TensorQuotient(const GradedQuotient<AffineMonomial>& left,
                               const GradedQuotient<AffineMonomial>& right, int max_grade)
    : left_(left), right_(right), max_grade_(max_grade) {
  for (int g = 0; g <= max_grade; ++g)
    for (std::size_t i = 0; i < left.dim(); ++i) {
      if (left.grade(i) > g) continue;
      for (std::size_t j = 0; j < right.dim(); ++j)
        if (left.grade(i) + right.grade(j) == g) {
          index_.emplace(std::make_pair(i, j), pairs_.size());
          pairs_.emplace_back(i, j);
        }
    }
}

int TensorQuotient::grade(std::size_t i) const {
  return left_.grade(pairs_[i].first) + right_.grade(pairs_[i].second);
}

int TensorQuotient::weight(std::size_t i) const {
  return left_.weight(pairs_[i].first) + right_.weight(pairs_[i].second);
}

TensorKey TensorQuotient::representative(std::size_t i) const {
  return {left_.representative(pairs_[i].first), right_.representative(pairs_[i].second)};
}

std::string TensorQuotient::label(std::size_t i) const { return to_string(representative(i)); }

std::vector<Rational> TensorQuotient::project(const TensorVector& v) const {
  std::vector<Rational> x(dim());
  for (const auto& [key, coef] : v) {
    if (grade_of(key) > max_grade_) continue;
    const auto& cl = left_.column(key.first);
    const auto& cr = right_.column(key.second);
    for (const auto& [i, a] : cl)
      for (const auto& [j, b] : cr) {
        auto it = index_.find({i, j});
        if (it != index_.end()) x[it->second] += coef * a * b;
      }
  }
  return x;
}

TensorModule::TensorModule(std::shared_ptr<const AffineModule> left, std::shared_ptr<const AffineModule> right,
                           int cutoff)
    : left_(std::move(left)), right_(std::move(right)), cutoff_(cutoff) {
  if (left_->cutoff() < cutoff || right_->cutoff() < cutoff)
    throw InvalidArgument("factor cutoffs below the tensor cutoff");
}

TensorModule TensorModule::build(const Rational& k, int twice_j, int twice_eps, int cutoff) {
  check_levels(k);
  return TensorModule(std::make_shared<const AffineModule>(k, twice_j, cutoff),
                      std::make_shared<const AffineModule>(Rational(1), twice_eps, cutoff), cutoff);
}

TensorVector TensorModule::left_apply(Generator x, int n, const TensorVector& v) const {
  return map_left(v, [&](const AffineVector& a) { return left_->apply_unbounded(x, n, a); });
}

TensorVector TensorModule::right_apply(Generator x, int n, const TensorVector& v) const {
  return map_right(v, [&](const AffineVector& a) { return right_->apply_unbounded(x, n, a); });
}

TensorVector TensorModule::diag_apply(Generator x, int n, const TensorVector& v) const {
  return left_apply(x, n, v) + right_apply(x, n, v);
}

TensorVector TensorModule::left_sugawara(int n, const TensorVector& v) const {
  return map_left(v, [&](const AffineVector& a) { return left_->sugawara_unbounded(n, a); });
}

TensorVector TensorModule::right_sugawara(int n, const TensorVector& v) const {
  return map_right(v, [&](const AffineVector& a) { return right_->sugawara_unbounded(n, a); });
}

TensorVector TensorModule::total_sugawara(int n, const TensorVector& v) const {
  return left_sugawara(n, v) + right_sugawara(n, v);
}

TensorVector TensorModule::diag_sugawara(int n, const TensorVector& v) const {
  const Rational level = diagonal_level();
  if (level == Rational(-2)) throw InvalidArgument("diagonal level k+1 = -2 is critical");
  const Rational prefactor = Rational(1) / (Rational(2) * (level + Rational(2)));
  return sugawara_apply(prefactor, n, v, top_grade(v),
                        [this](Generator g, int mode, const TensorVector& w) { return diag_apply(g, mode, w); });
}

TensorVector TensorModule::coset_virasoro(int n, const TensorVector& v) const {
  return total_sugawara(n, v) - diag_sugawara(n, v);
}

TensorVector TensorModule::diag_casimir(const TensorVector& v) const {
  TensorVector out;
  for (const auto& term : casimir_terms())
    add_scaled(out, diag_apply(term.left, -1, diag_apply(term.right, -1, v)), term.coeff);
  return out;
}

std::vector<TensorKey> TensorModule::basis(int grade) const {
  if (grade < 0 || grade > cutoff_) throw TruncationError("grade outside truncation window");
  std::vector<TensorKey> out;
  for (int a = 0; a <= grade; ++a)
    for (const auto& l : left_->basis(a))
      for (const auto& r : right_->basis(grade - a)) out.emplace_back(l, r);
  return out;
}

Rational TensorModule::pairing(const TensorKey& u, const TensorVector& v) const {
  Rational total;
  for (const auto& [key, coef] : v) {
    Rational a = left_->pairing(u.first, AffineVector{{key.first, Rational(1)}});
    if (a.is_zero()) continue;
    total += coef * a * right_->pairing(u.second, AffineVector{{key.second, Rational(1)}});
  }
  return total;
}

const TensorQuotient& TensorModule::quotient(int max_grade) const {
  if (max_grade > cutoff_) throw TruncationError("quotient grade above the tensor cutoff");
  const auto& lq = left_->quotient(max_grade);
  const auto& rq = right_->quotient(max_grade);
  std::lock_guard lock(quotient_mutex_);
  auto& slot = quotients_[max_grade];
  if (!slot) slot = std::make_unique<TensorQuotient>(lq, rq, max_grade);
  return *slot;
}

bool TensorModule::vanishes_in_quotient(const TensorVector& v) const {
  const int g = top_grade(v);
  if (g < 0) return true;
  if (g > cutoff_)
    throw TruncationError("vector of grade " + std::to_string(g) + " above cutoff " + std::to_string(cutoff_));
  for (const auto& x : quotient(g).project(v))
    if (!x.is_zero()) return false;
  return true;
}

Rational coset_central_charge(const Rational& k) {
  check_levels(k);
  return Rational(1) - Rational(6) / ((k + Rational(2)) * (k + Rational(3)));
}

TensorVector s_vector(const TensorModule& t) {
  if (t.left().twice_spin() != 1 || t.right().twice_spin() != 1)
    throw InvalidArgument("|s> needs spin 1/2 in both factors");
  TensorVector s = tensor(t.left().highest_weight(0), t.right().highest_weight(1));
  add_scaled(s, tensor(t.left().highest_weight(1), t.right().highest_weight(0)), Rational(-1));
  return s;
}

VerificationReport coset_check(const Rational& k, int max_grade) {
  check_levels(k);
  VerificationReport r;
  r.check = "coset";
  r.parameters = {{"k", k.str()}, {"grade", max_grade}};
  r.verified = true;
  auto fail = [&](nlohmann::json witness) {
    if (r.verified) r.witness = std::move(witness);
    r.verified = false;
  };

  const Rational c = coset_central_charge(k);
  const Rational c_sum = sugawara_central_charge(k) + sugawara_central_charge(Rational(1)) -
                         sugawara_central_charge(k + Rational(1));
  r.details["c_com"] = c.str();
  if (c != c_sum) fail({{"identity", "c^Com = c^Sug_k + c^Sug_1 - c^Sug_{k+1}"}, {"value", c_sum.str()}});
  if (auto adm = admissible_level(k)) {
    Rational cmin = minimal_central_charge(adm->p, adm->p + adm->q);
    r.details["c_min"] = cmin.str();
    r.details["p"] = adm->p;
    r.details["q"] = adm->q;
    if (cmin != c) fail({{"identity", "c^Com = c^min_{p,p+q}"}, {"c_min", cmin.str()}});
  }

  // omega^Com + Omega/(k+3) on the vacuum tensor.
  {
    TensorModule vac = TensorModule::build(k, 0, 0, 2);
    TensorVector v0 = tensor(vac.left().highest_weight(), vac.right().highest_weight());
    TensorVector omega = vac.coset_virasoro(-2, v0);
    TensorVector big_omega;
    for (const auto& term : casimir_terms())
      add_scaled(big_omega, vac.right_apply(term.right, -1, vac.left_apply(term.left, -1, v0)), term.coeff);
    add_scaled(big_omega, vac.left_sugawara(-2, v0), Rational(-1));
    add_scaled(big_omega, vac.right_sugawara(-2, v0), -k);
    TensorVector residual = omega + scaled(big_omega, Rational(1) / (k + Rational(3)));
    r.details["omega_com_terms"] = omega.size();
    if (!residual.empty()) fail({{"identity", "omega^Com = -Omega/(k+3)"}, {"component", first_nonzero(residual)}});
  }

  TensorModule t = TensorModule::build(k, 1, 1, max_grade);
  std::size_t commutators = 0, brackets = 0;
  for (int g = 0; g <= max_grade; ++g)
    for (const auto& key : t.basis(g)) {
      TensorVector v{{key, Rational(1)}};
      for (int n = -2; n <= 2; ++n) {
        TensorVector ln = t.coset_virasoro(n, v);
        for (int m = -1; m <= 1; ++m)
          for (Generator x : kGenerators) {
            TensorVector comm = t.coset_virasoro(n, t.diag_apply(x, m, v)) - t.diag_apply(x, m, ln);
            ++commutators;
            if (!comm.empty())
              fail({{"identity", "[L^Com_n, X(m)^diag] = 0"}, {"n", n}, {"m", m},
                    {"generator", std::string(1, generator_name(x))}, {"vector", to_string(key)},
                    {"component", first_nonzero(comm)}});
          }
      }
      if (g > 1) continue;
      for (int a = -2; a <= 2; ++a)
        for (int b = a + 1; b <= 2; ++b) {
          TensorVector lhs = t.coset_virasoro(a, t.coset_virasoro(b, v)) - t.coset_virasoro(b, t.coset_virasoro(a, v));
          TensorVector rhs = scaled(t.coset_virasoro(a + b, v), Rational(a - b));
          if (a + b == 0) add_scaled(rhs, v, c * Rational(a * a * a - a, 12));
          ++brackets;
          if (lhs != rhs)
            fail({{"identity", "coset Virasoro bracket"}, {"m", a}, {"n", b}, {"vector", to_string(key)},
                  {"component", first_nonzero(lhs - rhs)}});
        }
    }
  r.details["commutators_checked"] = commutators;
  r.details["brackets_checked"] = brackets;
  return r;
}

VerificationReport branching_check(const Rational& k, int twice_j, int twice_eps, int max_grade) {
  auto adm = admissible_level(k);
  if (!adm) throw InvalidArgument("branching needs an admissible level k = -2 + p/q with p >= 2");
  const int p = adm->p, q = adm->q;
  if (twice_j < 0 || twice_j > p - 2)
    throw InvalidArgument("spin j must satisfy 0 <= j <= (p-2)/2 = " + Rational(p - 2, 2).str());
  if (twice_eps != 0 && twice_eps != 1) throw InvalidArgument("eps must be 0 or 1/2");
  if (max_grade < 0) throw InvalidArgument("grade must be non-negative");

  VerificationReport r;
  r.check = "branching";
  r.parameters = {{"k", k.str()},
                  {"j", Rational(twice_j, 2).str()},
                  {"eps", Rational(twice_eps, 2).str()},
                  {"grade", max_grade}};

  AffineModule left(k, twice_j, max_grade), right(Rational(1), twice_eps, max_grade);
  std::map<std::pair<int, int>, std::size_t> lhs, rhs;
  for (int a = 0; a <= max_grade; ++a)
    for (int wl : left.weights(a)) {
      const std::size_t dl = left.irreducible_dim(a, wl);
      if (dl == 0) continue;
      for (int b = 0; a + b <= max_grade; ++b)
        for (int wr : right.weights(b)) lhs[{a + b, wl + wr}] += dl * right.irreducible_dim(b, wr);
    }

  const int big_p = p, big_q = p + q, rr = twice_j + 1;
  const Rational c = minimal_central_charge(big_p, big_q);
  const Rational h_top = sugawara_weight(k, twice_j) + sugawara_weight(Rational(1), twice_eps);
  nlohmann::json summands = nlohmann::json::array();
  r.verified = true;
  for (int s = 1; s <= big_q - 1; ++s) {
    if ((rr - s - twice_eps) % 2 != 0) continue;
    const Rational h_vir = minimal_weight(big_p, big_q, rr, s);
    const Rational h_aff = sugawara_weight(k + Rational(1), s - 1);
    const Rational delta = h_top - h_vir - h_aff;
    summands.push_back({{"s", s}, {"h_vir", h_vir.str()}, {"h_aff", h_aff.str()}, {"shift", (-delta).str()}});
    if (!delta.is_integer() || delta.sign() > 0) {
      if (r.verified)
        r.witness = {{"summand_s", s}, {"reason", "misaligned conformal weight"}, {"delta", delta.str()}};
      r.verified = false;
      continue;
    }
    const int shift = static_cast<int>((-delta).numerator().get_si());
    if (shift > max_grade) continue;
    const auto vir = irreducible_graded_dims(c, h_vir, max_grade - shift);
    AffineModule aff(k + Rational(1), s - 1, max_grade - shift);
    for (int g = shift; g <= max_grade; ++g)
      for (int a = 0; a <= g - shift; ++a) {
        const int b = g - shift - a;
        if (vir[a] == 0) continue;
        for (int w : aff.weights(b)) {
          std::size_t d = aff.irreducible_dim(b, w);
          if (d) rhs[{g, w}] += vir[a] * d;
        }
      }
  }

  std::map<std::pair<int, int>, std::pair<std::size_t, std::size_t>> cells;
  for (const auto& [key, d] : lhs) cells[key].first = d;
  for (const auto& [key, d] : rhs) cells[key].second = d;
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [key, dims] : cells) {
    if (dims.first == 0 && dims.second == 0) continue;
    const bool match = dims.first == dims.second;
    out.push_back({{"grade", key.first},
                   {"L0", (h_top + Rational(key.first)).str()},
                   {"weight", key.second},
                   {"lhs_dim", dims.first},
                   {"rhs_dim", dims.second},
                   {"match", match}});
    if (!match && r.verified) {
      r.verified = false;
      r.witness = {{"grade", key.first}, {"weight", key.second}, {"lhs_dim", dims.first}, {"rhs_dim", dims.second}};
    }
  }
  r.details["c_min"] = c.str();
  r.details["p"] = big_p;
  r.details["q"] = big_q;
  r.details["r"] = rr;
  r.details["summands"] = summands;
  r.details["cells"] = out;
  return r;
}

}  // namespace slecoset
