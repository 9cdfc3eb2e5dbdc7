#include "slecoset/virasoro.hpp"

#include "slecoset/errors.hpp"

#include <numeric>
#include <sstream>

namespace slecoset {

int grade_of(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

std::string to_string(const Partition& p) {
  if (p.empty()) return "|c,h>";
  std::ostringstream os;
  for (int part : p) os << "L-" << part << ' ';
  os << "|c,h>";
  return os.str();
}

namespace {

void partitions_rec(int remaining, int max_part, Partition& current, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions_rec(remaining - part, part, current, out);
    current.pop_back();
  }
}

int max_grade(const VirVector& v) {
  int g = -1;
  for (const auto& [p, c] : v) g = std::max(g, grade_of(p));
  return g;
}

}  // namespace

std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  Partition current;
  partitions_rec(n, n, current, out);
  return out;
}

std::size_t partition_count(int n) { return partitions(n).size(); }

VirVector vir_vacuum() { return VirVector{{Partition{}, Rational(1)}}; }

VermaModule::VermaModule(Rational c, Rational h, int cutoff)
    : c_(std::move(c)), h_(std::move(h)), cutoff_(cutoff) {
  if (cutoff < 0) throw InvalidArgument("cutoff must be non-negative");
  for (int g = 0; g <= cutoff; ++g) bases_.push_back(partitions(g));
}

const std::vector<Partition>& VermaModule::basis(int grade) const {
  if (grade < 0 || grade > cutoff_)
    throw TruncationError("grade " + std::to_string(grade) + " outside truncation window [0," +
                          std::to_string(cutoff_) + "]");
  return bases_[grade];
}

const VirVector& VermaModule::apply_monomial(int n, const Partition& p) const {
  auto key = std::make_pair(n, p);
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }

  VirVector out;
  if (p.empty()) {
    if (n == 0) out.emplace(p, h_);
    else if (n < 0) out.emplace(Partition{-n}, Rational(1));
  } else if (n < 0 && -n >= p.front()) {
    Partition q;
    q.reserve(p.size() + 1);
    q.push_back(-n);
    q.insert(q.end(), p.begin(), p.end());
    out.emplace(std::move(q), Rational(1));
  } else {
    // L_n L_{-l} rest = L_{-l} L_n rest + (n+l) L_{n-l} rest + delta_{n,l} c (n^3-n)/12 rest
    const int l = p.front();
    Partition rest(p.begin() + 1, p.end());
    const VirVector inner = apply_monomial(n, rest);
    for (const auto& [q, coef] : inner) add_scaled(out, apply_monomial(-l, q), coef);
    if (n + l != 0) add_scaled(out, apply_monomial(n - l, rest), Rational(n + l));
    if (n == l) add_term(out, rest, c_ * Rational(n * n * n - n, 12));
  }

  std::lock_guard lock(cache_mutex_);
  return cache_.try_emplace(std::move(key), std::move(out)).first->second;
}

VirVector VermaModule::apply_unbounded(int n, const VirVector& v) const {
  VirVector out;
  for (const auto& [p, coef] : v) add_scaled(out, apply_monomial(n, p), coef);
  return out;
}

VirVector VermaModule::apply(int n, const VirVector& v) const {
  if (n > cutoff_ || -n > cutoff_)
    throw TruncationError("mode L_" + std::to_string(n) + " exceeds cutoff " + std::to_string(cutoff_));
  int g = max_grade(v);
  if (g > cutoff_) throw TruncationError("input vector above cutoff");
  if (g >= 0 && g - n > cutoff_)
    throw TruncationError("L_" + std::to_string(n) + " maps grade " + std::to_string(g) +
                          " above cutoff " + std::to_string(cutoff_));
  return apply_unbounded(n, v);
}

Rational VermaModule::pairing(const Partition& u, const VirVector& v) const {
  VirVector w = v;
  for (int part : u) {
    w = apply_unbounded(part, w);
    if (w.empty()) return Rational(0);
  }
  auto it = w.find(Partition{});
  return it == w.end() ? Rational(0) : it->second;
}

Matrix VermaModule::gram(int grade) const {
  const auto& b = basis(grade);
  Matrix g(b.size(), b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    VirVector v{{b[j], Rational(1)}};
    for (std::size_t i = 0; i < b.size(); ++i) g(i, j) = pairing(b[i], v);
  }
  return g;
}

Matrix VermaModule::action_matrix(int n, int grade) const {
  const auto& src = basis(grade);
  const auto& dst = basis(grade - n);
  std::map<Partition, std::size_t> index;
  for (std::size_t i = 0; i < dst.size(); ++i) index.emplace(dst[i], i);
  Matrix m(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [p, coef] : apply_monomial(n, src[j])) m(index.at(p), j) = coef;
  return m;
}

std::size_t VermaModule::irreducible_dim(int grade) const { return rank(gram(grade)); }

bool VermaModule::vanishes_in_quotient(const VirVector& v) const {
  std::map<int, VirVector> by_grade;
  for (const auto& [p, c] : v) by_grade[grade_of(p)].emplace(p, c);
  for (const auto& [g, part] : by_grade)
    for (const auto& u : partitions(g))
      if (!pairing(u, part).is_zero()) return false;
  return true;
}

Rational minimal_central_charge(int p, int q) {
  return Rational(1) - Rational(6 * (p - q) * (p - q), p * q);
}

Rational minimal_weight(int p, int q, int r, int s) {
  long a = static_cast<long>(r) * q - static_cast<long>(s) * p;
  long b = p - q;
  return Rational(a * a - b * b, 4L * p * q);
}

MinimalConstants minimal_constants(int p, int q, int r, int s) {
  if (p < 1 || q < 1) throw InvalidArgument("p and q must be positive");
  if (std::gcd(p, q) != 1)
    throw InvalidArgument("p=" + std::to_string(p) + " and q=" + std::to_string(q) + " are not coprime");
  MinimalConstants out{minimal_central_charge(p, q), minimal_weight(p, q, r, s), true};
  out.in_kac_table = r >= 1 && r <= p - 1 && s >= 1 && s <= q - 1;
  return out;
}

SleConstants sle_constants(const Rational& kappa) {
  if (kappa.is_zero()) throw InvalidArgument("kappa must be nonzero");
  Rational d = kappa - Rational(4);
  return {Rational(1) - Rational(3) * d * d / (Rational(2) * kappa),
          (Rational(6) - kappa) / (Rational(2) * kappa)};
}

VirVector level_two_vector(const Rational& kappa) {
  VirVector chi;
  add_term(chi, Partition{2}, Rational(-2));
  add_term(chi, Partition{1, 1}, kappa / 2);
  return chi;
}

VerificationReport singular_vector_check(int p, int q, const std::optional<Rational>& kappa) {
  MinimalConstants mc = minimal_constants(p, q, 2, 1);
  Rational k = kappa.value_or(Rational(4L * p, q));
  VermaModule m(mc.c, mc.h, 2);
  VirVector chi = level_two_vector(k);

  VerificationReport r;
  r.check = "singular";
  r.parameters = {{"p", p}, {"q", q}, {"kappa", k.str()}, {"c", mc.c.str()}, {"h", mc.h.str()}};
  VirVector l1 = m.apply(1, chi);
  VirVector l2 = m.apply(2, chi);
  r.details["L1_chi"] = l1.empty() ? "0" : l1.begin()->second.str();
  r.details["L2_chi"] = l2.empty() ? "0" : l2.begin()->second.str();
  r.verified = l1.empty() && l2.empty();
  if (!l1.empty())
    r.witness = {{"operator", "L1"}, {"basis", to_string(l1.begin()->first)},
                 {"coefficient", l1.begin()->second.str()}};
  else if (!l2.empty())
    r.witness = {{"operator", "L2"}, {"basis", to_string(l2.begin()->first)},
                 {"coefficient", l2.begin()->second.str()}};
  return r;
}

std::vector<std::size_t> irreducible_graded_dims(const Rational& c, const Rational& h, int max_grade) {
  VermaModule m(c, h, max_grade);
  std::vector<std::size_t> dims;
  for (int g = 0; g <= max_grade; ++g) dims.push_back(m.irreducible_dim(g));
  return dims;
}

}  // namespace slecoset
