#pragma once

#include "slecoset/linalg.hpp"
#include "slecoset/rational.hpp"
#include "slecoset/report.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slecoset {

/// Non-increasing positive parts (l1 >= l2 >= ...), standing for the PBW
/// monomial L_{-l1} ... L_{-lk} |c,h>.
using Partition = std::vector<int>;
using VirVector = SparseVector<Partition>;

int grade_of(const Partition& p);
std::string to_string(const Partition& p);

/// Partitions of n, lexicographically decreasing: (n), (n-1,1), ...
std::vector<Partition> partitions(int n);
std::size_t partition_count(int n);

/// Highest-weight vector |c,h> as a sparse vector.
VirVector vir_vacuum();

/// Verma module M(c,h) truncated at grade `cutoff`.
///
/// Normal ordering is done on the untruncated module (positive modes are
/// commuted right until they hit |c,h>), so intermediate states may exceed
/// the cutoff; only the inputs and final result of a public call are
/// checked against it.
class VermaModule {
public:
  VermaModule(Rational c, Rational h, int cutoff);

  const Rational& central_charge() const { return c_; }
  const Rational& weight() const { return h_; }
  int cutoff() const { return cutoff_; }

  const std::vector<Partition>& basis(int grade) const;

  /// L_n v. Throws TruncationError when |n| > cutoff or the result would
  /// have grade above the cutoff.
  VirVector apply(int n, const VirVector& v) const;

  /// L_n v with no truncation checks; for building composite operators.
  VirVector apply_unbounded(int n, const VirVector& v) const;

  /// <u|v> for a basis monomial u, via <L_{-n} u'|v> = <u'|L_n v>.
  Rational pairing(const Partition& u, const VirVector& v) const;

  /// Shapovalov block on the grade-n basis (order of basis()).
  Matrix gram(int grade) const;

  /// Matrix of L_n from grade g to grade g - n in the basis() order.
  Matrix action_matrix(int n, int grade) const;

  /// dim L(c,h)_grade = rank of the Gram block.
  std::size_t irreducible_dim(int grade) const;

  /// True iff v lies in the radical of the form, i.e. is zero in L(c,h).
  bool vanishes_in_quotient(const VirVector& v) const;

private:
  const VirVector& apply_monomial(int n, const Partition& p) const;

  Rational c_, h_;
  int cutoff_;
  std::vector<std::vector<Partition>> bases_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<int, Partition>, VirVector> cache_;
};

/// c^min_{p,q} = 1 - 6 (p-q)^2 / (pq).
Rational minimal_central_charge(int p, int q);
/// h_{p,q;r,s} = ((rq - sp)^2 - (p-q)^2) / (4pq).
Rational minimal_weight(int p, int q, int r, int s);

struct MinimalConstants {
  Rational c;
  Rational h;
  /// False when (r,s) lies outside 1<=r<=p-1, 1<=s<=q-1 (allowed for coset use).
  bool in_kac_table = true;
};

/// Throws InvalidArgument unless gcd(p,q) = 1 and p,q >= 1.
MinimalConstants minimal_constants(int p, int q, int r, int s);

struct SleConstants {
  Rational c;
  Rational h;
};

/// c_kappa = 1 - 3(kappa-4)^2/(2 kappa), h_kappa = (6-kappa)/(2 kappa).
SleConstants sle_constants(const Rational& kappa);

/// chi = (-2 L_{-2} + (kappa/2) L_{-1}^2) |c,h>.
VirVector level_two_vector(const Rational& kappa);

/// Checks L1 chi = L2 chi = 0 in M(c^min_{p,q}, h_{p,q;2,1}) with kappa = 4p/q
/// (or the supplied kappa). The report is verified iff both vanish.
VerificationReport singular_vector_check(int p, int q,
                                         const std::optional<Rational>& kappa = std::nullopt);

std::vector<std::size_t> irreducible_graded_dims(const Rational& c, const Rational& h, int max_grade);

}  // namespace slecoset
