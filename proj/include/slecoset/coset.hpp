#pragma once

#include "slecoset/affine.hpp"
#include "slecoset/report.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace slecoset {

using TensorKey = std::pair<AffineMonomial, AffineMonomial>;
using TensorVector = SparseVector<TensorKey>;

TensorVector tensor(const AffineVector& a, const AffineVector& b);
std::string to_string(const TensorKey& key);
int grade_of(const TensorKey& key);

/// Truncation of L(j)_k (x) L(eps)_1 to total grade <= max_grade, with basis
/// the products of the factor quotient bases.
class TensorQuotient {
public:
  TensorQuotient(const GradedQuotient<AffineMonomial>& left, const GradedQuotient<AffineMonomial>& right,
                 int max_grade);

  std::size_t dim() const { return pairs_.size(); }
  int max_grade() const { return max_grade_; }
  int grade(std::size_t i) const;
  int weight(std::size_t i) const;
  TensorKey representative(std::size_t i) const;
  std::string label(std::size_t i) const;

  /// Coordinates of v; components of total grade above max_grade are dropped.
  std::vector<Rational> project(const TensorVector& v) const;

  template <class Op>
  Matrix operator_matrix(Op&& op) const {
    Matrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      std::vector<Rational> x = project(op(TensorVector{{representative(j), Rational(1)}}));
      for (std::size_t i = 0; i < dim(); ++i) m(i, j) = x[i];
    }
    return m;
  }

private:
  const GradedQuotient<AffineMonomial>& left_;
  const GradedQuotient<AffineMonomial>& right_;
  int max_grade_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index_;
};

/// L(j)_k (x) L(eps)_1 with the diagonal level-(k+1) action
/// X(n)^diag = X(n) (x) 1 + 1 (x) X(n).
///
/// Operators act on the tensor of universal modules; zero tests and
/// coordinates go through the factor quotients.
class TensorModule {
public:
  TensorModule(std::shared_ptr<const AffineModule> left, std::shared_ptr<const AffineModule> right, int cutoff);
  /// Level k (x) level 1; rejects k in {-2, -3}.
  static TensorModule build(const Rational& k, int twice_j, int twice_eps, int cutoff);

  const AffineModule& left() const { return *left_; }
  const AffineModule& right() const { return *right_; }
  int cutoff() const { return cutoff_; }
  Rational diagonal_level() const { return left_->level() + right_->level(); }

  TensorVector left_apply(Generator x, int n, const TensorVector& v) const;
  TensorVector right_apply(Generator x, int n, const TensorVector& v) const;
  TensorVector diag_apply(Generator x, int n, const TensorVector& v) const;

  TensorVector left_sugawara(int n, const TensorVector& v) const;
  TensorVector right_sugawara(int n, const TensorVector& v) const;
  /// L^(k)_n (x) 1 + 1 (x) L^(1)_n.
  TensorVector total_sugawara(int n, const TensorVector& v) const;
  /// Sugawara operator of the diagonal level-(k+1) action.
  TensorVector diag_sugawara(int n, const TensorVector& v) const;
  /// L^Com_n = L^(k)_n (x) 1 + 1 (x) L^(1)_n - L^diag_n.
  TensorVector coset_virasoro(int n, const TensorVector& v) const;
  /// sum_a X_a(-1)^diag X_a(-1)^diag v in the closed form (1/2)HH + EF + FE.
  TensorVector diag_casimir(const TensorVector& v) const;

  /// Product basis of the universal tensor at a total grade.
  std::vector<TensorKey> basis(int grade) const;

  /// <u|v> = <u1|v1><u2|v2> extended linearly in v.
  Rational pairing(const TensorKey& u, const TensorVector& v) const;

  const TensorQuotient& quotient(int max_grade) const;
  /// Zero in the tensor of irreducible quotients. Throws TruncationError
  /// when v has components above the cutoff.
  bool vanishes_in_quotient(const TensorVector& v) const;

private:
  std::shared_ptr<const AffineModule> left_, right_;
  int cutoff_;
  mutable std::mutex quotient_mutex_;
  mutable std::map<int, std::unique_ptr<TensorQuotient>> quotients_;
};

int top_grade(const TensorVector& v);

/// c^Com_k = 3k/(k+2) + 1 - 3(k+1)/(k+3) = 1 - 6/((k+2)(k+3)).
Rational coset_central_charge(const Rational& k);

/// |s> = |1/2>_k (x) F|1/2>_1 - F|1/2>_k (x) |1/2>_1; both spins must be 1/2.
TensorVector s_vector(const TensorModule& t);

/// c^Com against c^min_{p,p+q}, omega^Com = -Omega/(k+3) componentwise,
/// [L^Com_n, X(m)^diag] = 0 and the coset Virasoro bracket on grades <= max_grade.
VerificationReport coset_check(const Rational& k, int max_grade);

/// Refined character identity of the coset branching rule at finite grade.
VerificationReport branching_check(const Rational& k, int twice_j, int twice_eps, int max_grade);

}  // namespace slecoset
