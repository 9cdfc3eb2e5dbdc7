#pragma once

#include "slecoset/linalg.hpp"
#include "slecoset/quotient.hpp"
#include "slecoset/rational.hpp"
#include "slecoset/report.hpp"
#include "slecoset/sl2.hpp"

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace slecoset {

/// Creation operator X(n), n < 0, ordered by (mode, generator tag).
struct AffineMode {
  Generator gen;
  int mode;

  friend auto operator<=>(const AffineMode& a, const AffineMode& b) {
    return std::tuple(a.mode, static_cast<int>(a.gen)) <=> std::tuple(b.mode, static_cast<int>(b.gen));
  }
  friend bool operator==(const AffineMode&, const AffineMode&) = default;
};

/// PBW monomial X1(n1) ... Xr(nr) F^m|j>, creation operators in canonical
/// (non-decreasing) order.
struct AffineMonomial {
  std::vector<AffineMode> ops;
  int zero_index = 0;

  int grade() const;
  friend auto operator<=>(const AffineMonomial&, const AffineMonomial&) = default;
  friend bool operator==(const AffineMonomial&, const AffineMonomial&) = default;
};

std::string to_string(const AffineMonomial& m);

using AffineVector = SparseVector<AffineMonomial>;

/// Sum over normally ordered pairs of the Sugawara-type quadratic
///   prefactor * sum_m :sum_a X_a(m) X_a(n-m): v
/// with the closed Casimir form (1/2)HH + EF + FE. `apply_x(gen, mode, vec)`
/// is the current action; `top_grade` is the highest grade present in v.
template <class Vec, class ApplyX>
Vec sugawara_apply(const Rational& prefactor, int n, const Vec& v, int top_grade, ApplyX&& apply_x) {
  Vec out;
  if (v.empty()) return out;
  const int bmin = n >= 0 ? (n + 1) / 2 : -((-n) / 2);
  for (int b = bmin; b <= top_grade; ++b) {
    const int a = n - b;
    const Rational mult = a == b ? Rational(1) : Rational(2);
    for (const auto& term : casimir_terms()) {
      Vec right = apply_x(term.right, b, v);
      if (right.empty()) continue;
      add_scaled(out, apply_x(term.left, a, right), prefactor * term.coeff * mult);
    }
  }
  return out;
}

/// c^Sug_k = 3k/(k+2).
Rational sugawara_central_charge(const Rational& k);
/// h^Sug_j = j(j+1)/(k+2).
Rational sugawara_weight(const Rational& k, int twice_spin);

/// Highest-weight module of affine sl2 at level k generated from L(j),
/// truncated at grade `cutoff`.
///
/// The underlying space is the universal module U(g[t^-1]t^-1) (x) L(j);
/// the irreducible quotient is obtained per (grade, weight) block as the
/// quotient by the radical of the contravariant form.
class AffineModule {
public:
  AffineModule(Rational level, int twice_spin, int cutoff);

  const Rational& level() const { return level_; }
  int twice_spin() const { return zero_modes_.twice_spin(); }
  int cutoff() const { return cutoff_; }
  const FiniteModule& zero_modes() const { return zero_modes_; }

  int weight(const AffineMonomial& m) const;

  /// Weights present at a grade, in decreasing order.
  std::vector<int> weights(int grade) const;
  /// Universal-module basis of a (grade, weight) block.
  const std::vector<AffineMonomial>& basis(int grade, int weight) const;
  /// All universal basis monomials of a grade, weight blocks concatenated.
  std::vector<AffineMonomial> basis(int grade) const;

  /// |j> (zero_index 0) or F^m|j>.
  AffineVector highest_weight(int zero_index = 0) const;

  /// X(n) v with truncation checks (|n| <= cutoff, result grade <= cutoff).
  AffineVector apply(Generator x, int n, const AffineVector& v) const;
  AffineVector apply(const Sl2Element& x, int n, const AffineVector& v) const;
  AffineVector apply_unbounded(Generator x, int n, const AffineVector& v) const;

  /// Sugawara L_n; throws InvalidArgument at the critical level k = -2.
  AffineVector sugawara(int n, const AffineVector& v) const;
  AffineVector sugawara_unbounded(int n, const AffineVector& v) const;

  /// Contravariant form <u|v> (anti-involution E(n)->F(-n), H(n)->H(-n), <j|j> = 1).
  Rational pairing(const AffineMonomial& u, const AffineVector& v) const;
  Matrix gram(int grade, int weight) const;

  std::size_t universal_dim(int grade, int weight) const;
  std::size_t irreducible_dim(int grade, int weight) const;
  std::size_t irreducible_dim(int grade) const;

  bool vanishes_in_quotient(const AffineVector& v) const;

  /// Irreducible quotient truncated at max_grade (<= cutoff); cached.
  const GradedQuotient<AffineMonomial>& quotient(int max_grade) const;

private:
  const AffineVector& apply_monomial(Generator x, int n, const AffineMonomial& m) const;

  Rational level_;
  FiniteModule zero_modes_;
  int cutoff_;
  std::vector<std::map<int, std::vector<AffineMonomial>, std::greater<>>> bases_;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::tuple<int, int, AffineMonomial>, AffineVector> cache_;
  mutable std::map<int, std::unique_ptr<GradedQuotient<AffineMonomial>>> quotients_;
};

int top_grade(const AffineVector& v);

/// Build the irreducible module L_{g,k}(j) truncated at N. Rejects the
/// critical level, which every Sugawara-dependent construction needs.
std::shared_ptr<const AffineModule> build_irreducible(const Rational& k, int twice_spin, int cutoff);

/// Admissible level k = -2 + p/q (p >= 2, gcd(p,q) = 1); nullopt otherwise.
struct AdmissibleLevel {
  int p;
  int q;
};
std::optional<AdmissibleLevel> admissible_level(const Rational& k);

/// Sugawara checks at level k on the universal modules of spin 0 and 1/2 up
/// to max_grade: [L_a, L_b] = (a-b)L_{a+b} + c/12 (a^3-a) delta with
/// c = 3k/(k+2) for |a|,|b| <= 2, [L_a, X(n)] = -n X(a+n) for |a|,|n| <= 1,
/// L_0|1/2> = (3/4)/(k+2)|1/2>, and c read off from L_2 L_{-2}|0> = (c/2)|0>.
VerificationReport sugawara_check(const Rational& k, int max_grade);

}  // namespace slecoset
