#include "slecoset/affine.hpp"

#include "slecoset/errors.hpp"

#include <numeric>
#include <sstream>

namespace slecoset {

namespace {

std::mutex& quotient_mutex() {
  static std::mutex m;
  return m;
}

/// Non-decreasing sequences of creation operators of total grade `remaining`.
void enumerate_ops(int remaining, const std::vector<AffineMode>& keys, std::size_t first,
                   std::vector<AffineMode>& current, std::vector<std::vector<AffineMode>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = first; i < keys.size(); ++i) {
    if (-keys[i].mode > remaining) continue;
    current.push_back(keys[i]);
    enumerate_ops(remaining + keys[i].mode, keys, i, current, out);
    current.pop_back();
  }
}

AffineMode adjoint(const AffineMode& op) {
  switch (op.gen) {
    case Generator::E: return {Generator::F, -op.mode};
    case Generator::F: return {Generator::E, -op.mode};
    case Generator::H: return {Generator::H, -op.mode};
  }
  return op;
}

}  // namespace

int AffineMonomial::grade() const {
  int g = 0;
  for (const auto& op : ops) g -= op.mode;
  return g;
}

std::string to_string(const AffineMonomial& m) {
  std::ostringstream os;
  for (const auto& op : m.ops) os << generator_name(op.gen) << '(' << op.mode << ") ";
  if (m.zero_index == 0) os << "|j>";
  else if (m.zero_index == 1) os << "F|j>";
  else os << "F^" << m.zero_index << "|j>";
  return os.str();
}

int top_grade(const AffineVector& v) {
  int g = -1;
  for (const auto& [m, c] : v) g = std::max(g, m.grade());
  return g;
}

Rational sugawara_central_charge(const Rational& k) {
  if (k == Rational(-2)) throw InvalidArgument("critical level k = -2 has no Sugawara vector");
  return Rational(3) * k / (k + Rational(2));
}

Rational sugawara_weight(const Rational& k, int twice_spin) {
  if (k == Rational(-2)) throw InvalidArgument("critical level k = -2 has no Sugawara vector");
  Rational j(twice_spin, 2);
  return j * (j + Rational(1)) / (k + Rational(2));
}

AffineModule::AffineModule(Rational level, int twice_spin, int cutoff)
    : level_(std::move(level)), zero_modes_(twice_spin), cutoff_(cutoff) {
  if (cutoff < 0) throw InvalidArgument("cutoff must be non-negative");
  for (int g = 0; g <= cutoff; ++g) {
    std::vector<AffineMode> keys;
    for (int mode = -g; mode <= -1; ++mode)
      for (Generator gen : kGenerators) keys.push_back({gen, mode});
    std::vector<AffineMode> current;
    std::vector<std::vector<AffineMode>> seqs;
    enumerate_ops(g, keys, 0, current, seqs);
    std::map<int, std::vector<AffineMonomial>, std::greater<>> blocks;
    for (const auto& seq : seqs)
      for (int m = 0; m < zero_modes_.dim(); ++m) {
        AffineMonomial mono{seq, m};
        blocks[weight(mono)].push_back(std::move(mono));
      }
    bases_.push_back(std::move(blocks));
  }
}

int AffineModule::weight(const AffineMonomial& m) const {
  int w = zero_modes_.weight(m.zero_index);
  for (const auto& op : m.ops) w += weight_of(op.gen);
  return w;
}

std::vector<int> AffineModule::weights(int grade) const {
  if (grade < 0 || grade > cutoff_) throw TruncationError("grade outside truncation window");
  std::vector<int> ws;
  for (const auto& [w, b] : bases_[grade]) ws.push_back(w);
  return ws;
}

const std::vector<AffineMonomial>& AffineModule::basis(int grade, int weight) const {
  static const std::vector<AffineMonomial> empty;
  if (grade < 0 || grade > cutoff_) throw TruncationError("grade outside truncation window");
  auto it = bases_[grade].find(weight);
  return it == bases_[grade].end() ? empty : it->second;
}

std::vector<AffineMonomial> AffineModule::basis(int grade) const {
  std::vector<AffineMonomial> out;
  for (int w : weights(grade)) {
    const auto& b = basis(grade, w);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

AffineVector AffineModule::highest_weight(int zero_index) const {
  if (zero_index < 0 || zero_index >= zero_modes_.dim()) throw InvalidArgument("zero-mode index out of range");
  return AffineVector{{AffineMonomial{{}, zero_index}, Rational(1)}};
}

const AffineVector& AffineModule::apply_monomial(Generator x, int n, const AffineMonomial& m) const {
  auto key = std::make_tuple(static_cast<int>(x), n, m);
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }

  AffineVector out;
  const AffineMode op{x, n};
  if (m.ops.empty()) {
    if (n == 0) {
      if (auto r = zero_modes_.act(x, m.zero_index)) out.emplace(AffineMonomial{{}, r->first}, r->second);
    } else if (n < 0) {
      out.emplace(AffineMonomial{{op}, m.zero_index}, Rational(1));
    }
  } else if (n < 0 && op <= m.ops.front()) {
    AffineMonomial p{{op}, m.zero_index};
    p.ops.insert(p.ops.end(), m.ops.begin(), m.ops.end());
    out.emplace(std::move(p), Rational(1));
  } else {
    // X(n) Y(m1) rest = Y(m1) X(n) rest + [X,Y](n+m1) rest + n (X|Y) delta_{n+m1,0} k rest
    const AffineMode first = m.ops.front();
    AffineMonomial rest{{m.ops.begin() + 1, m.ops.end()}, m.zero_index};
    const AffineVector inner = apply_monomial(x, n, rest);
    for (const auto& [q, coef] : inner) add_scaled(out, apply_monomial(first.gen, first.mode, q), coef);
    const Sl2Element xs = Sl2Element::basis(x), ys = Sl2Element::basis(first.gen);
    const Sl2Element br = bracket(xs, ys);
    for (Generator z : kGenerators)
      if (!br[z].is_zero()) add_scaled(out, apply_monomial(z, n + first.mode, rest), br[z]);
    if (n + first.mode == 0) {
      Rational form = killing_form(xs, ys);
      if (!form.is_zero()) add_term(out, rest, Rational(n) * form * level_);
    }
  }

  std::lock_guard lock(cache_mutex_);
  return cache_.try_emplace(std::move(key), std::move(out)).first->second;
}

AffineVector AffineModule::apply_unbounded(Generator x, int n, const AffineVector& v) const {
  AffineVector out;
  for (const auto& [m, coef] : v) add_scaled(out, apply_monomial(x, n, m), coef);
  return out;
}

AffineVector AffineModule::apply(Generator x, int n, const AffineVector& v) const {
  if (n > cutoff_ || -n > cutoff_)
    throw TruncationError("mode " + std::to_string(n) + " exceeds cutoff " + std::to_string(cutoff_));
  int g = top_grade(v);
  if (g > cutoff_) throw TruncationError("input vector above cutoff");
  if (g >= 0 && g - n > cutoff_)
    throw TruncationError(std::string(1, generator_name(x)) + "(" + std::to_string(n) + ") maps grade " +
                          std::to_string(g) + " above cutoff " + std::to_string(cutoff_));
  return apply_unbounded(x, n, v);
}

AffineVector AffineModule::apply(const Sl2Element& x, int n, const AffineVector& v) const {
  AffineVector out;
  for (Generator g : kGenerators)
    if (!x[g].is_zero()) add_scaled(out, apply(g, n, v), x[g]);
  return out;
}

AffineVector AffineModule::sugawara_unbounded(int n, const AffineVector& v) const {
  if (level_ == Rational(-2)) throw InvalidArgument("critical level k = -2 has no Sugawara vector");
  const Rational prefactor = Rational(1) / (Rational(2) * (level_ + Rational(2)));
  return sugawara_apply(prefactor, n, v, top_grade(v),
                        [this](Generator g, int mode, const AffineVector& w) { return apply_unbounded(g, mode, w); });
}

AffineVector AffineModule::sugawara(int n, const AffineVector& v) const {
  if (n > cutoff_ || -n > cutoff_)
    throw TruncationError("Sugawara mode " + std::to_string(n) + " exceeds cutoff");
  int g = top_grade(v);
  if (g > cutoff_ || (g >= 0 && g - n > cutoff_))
    throw TruncationError("Sugawara L_" + std::to_string(n) + " leaves the truncation window");
  return sugawara_unbounded(n, v);
}

Rational AffineModule::pairing(const AffineMonomial& u, const AffineVector& v) const {
  AffineVector w = v;
  for (const auto& op : u.ops) {
    AffineMode a = adjoint(op);
    w = apply_unbounded(a.gen, a.mode, w);
    if (w.empty()) return Rational(0);
  }
  auto it = w.find(AffineMonomial{{}, u.zero_index});
  if (it == w.end()) return Rational(0);
  return it->second * zero_modes_.norm(u.zero_index);
}

Matrix AffineModule::gram(int grade, int weight) const {
  const auto& b = basis(grade, weight);
  Matrix g(b.size(), b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    AffineVector v{{b[j], Rational(1)}};
    for (std::size_t i = 0; i < b.size(); ++i) g(i, j) = pairing(b[i], v);
  }
  return g;
}

std::size_t AffineModule::universal_dim(int grade, int weight) const { return basis(grade, weight).size(); }

std::size_t AffineModule::irreducible_dim(int grade, int weight) const { return rank(gram(grade, weight)); }

std::size_t AffineModule::irreducible_dim(int grade) const {
  std::size_t d = 0;
  for (int w : weights(grade)) d += irreducible_dim(grade, w);
  return d;
}

bool AffineModule::vanishes_in_quotient(const AffineVector& v) const {
  std::map<std::pair<int, int>, AffineVector> blocks;
  for (const auto& [m, c] : v) blocks[{m.grade(), weight(m)}].emplace(m, c);
  for (const auto& [gw, part] : blocks) {
    if (gw.first > cutoff_) throw TruncationError("vector above cutoff in quotient test");
    for (const auto& u : basis(gw.first, gw.second))
      if (!pairing(u, part).is_zero()) return false;
  }
  return true;
}

const GradedQuotient<AffineMonomial>& AffineModule::quotient(int max_grade) const {
  if (max_grade > cutoff_) throw TruncationError("quotient grade above cutoff");
  std::lock_guard lock(quotient_mutex());
  auto& slot = quotients_[max_grade];
  if (!slot) {
    std::vector<GradedQuotient<AffineMonomial>::Block> blocks;
    for (int g = 0; g <= max_grade; ++g)
      for (int w : weights(g)) blocks.push_back({g, w, basis(g, w), gram(g, w)});
    slot = std::make_unique<GradedQuotient<AffineMonomial>>(
        std::move(blocks), max_grade, [](const AffineMonomial& m) { return m.grade(); });
  }
  return *slot;
}

std::shared_ptr<const AffineModule> build_irreducible(const Rational& k, int twice_spin, int cutoff) {
  if (k == Rational(-2)) throw InvalidArgument("critical level k = -2 rejected");
  return std::make_shared<const AffineModule>(k, twice_spin, cutoff);
}

std::optional<AdmissibleLevel> admissible_level(const Rational& k) {
  Rational pq = k + Rational(2);
  if (pq.sign() <= 0) return std::nullopt;
  if (!pq.numerator().fits_sint_p() || !pq.denominator().fits_sint_p()) return std::nullopt;
  int p = static_cast<int>(pq.numerator().get_si());
  int q = static_cast<int>(pq.denominator().get_si());
  if (p < 2) return std::nullopt;
  return AdmissibleLevel{p, q};
}

VerificationReport sugawara_check(const Rational& k, int max_grade) {
  if (k == Rational(-2)) throw InvalidArgument("critical level k = -2 rejected");
  if (max_grade < 0) throw InvalidArgument("grade must be non-negative");
  const Rational c = sugawara_central_charge(k);
  VerificationReport r;
  r.check = "sugawara";
  r.parameters = {{"k", k.str()}, {"grade", max_grade}};
  r.verified = true;
  auto fail = [&](nlohmann::json w) {
    if (r.verified) r.witness = std::move(w);
    r.verified = false;
  };

  std::size_t brackets = 0;
  for (int tj : {0, 1}) {
    AffineModule m(k, tj, max_grade);
    for (int g = 0; g <= max_grade; ++g)
      for (const auto& b : m.basis(g)) {
        const AffineVector v{{b, Rational(1)}};
        for (int x = -2; x <= 2; ++x)
          for (int y = x + 1; y <= 2; ++y) {
            AffineVector res = m.sugawara_unbounded(x, m.sugawara_unbounded(y, v)) -
                               m.sugawara_unbounded(y, m.sugawara_unbounded(x, v));
            add_scaled(res, m.sugawara_unbounded(x + y, v), Rational(y - x));
            if (x + y == 0) add_scaled(res, v, -c * Rational(x * x * x - x, 12));
            ++brackets;
            if (!res.empty())
              fail({{"relation", "[L_" + std::to_string(x) + ", L_" + std::to_string(y) + "]"},
                    {"vector", to_string(b)},
                    {"component", to_string(res.begin()->first)},
                    {"coefficient", res.begin()->second.str()}});
          }
        if (g > 1) continue;
        for (int a = -1; a <= 1; ++a)
          for (int n = -1; n <= 1; ++n)
            for (Generator gen : kGenerators) {
              AffineVector res = m.sugawara_unbounded(a, m.apply_unbounded(gen, n, v)) -
                                 m.apply_unbounded(gen, n, m.sugawara_unbounded(a, v));
              add_scaled(res, m.apply_unbounded(gen, a + n, v), Rational(n));
              if (!res.empty())
                fail({{"relation", "[L_" + std::to_string(a) + ", " + generator_name(gen) + "(" +
                                       std::to_string(n) + ")]"},
                      {"vector", to_string(b)}});
            }
      }
    if (tj == 0) {
      const AffineVector vac = m.highest_weight();
      const AffineVector l2 = m.sugawara_unbounded(2, m.sugawara_unbounded(-2, vac));
      const Rational read = l2.empty() ? Rational(0) : l2.begin()->second * Rational(2);
      r.details["central_charge"] = c.str();
      r.details["central_charge_from_L2L-2"] = read.str();
      if (read != c || l2.size() > 1) fail({{"relation", "L_2 L_-2 |0> = (c/2)|0>"}, {"read", read.str()}});
    } else {
      const Rational h = sugawara_weight(k, 1);
      r.details["h_1/2"] = h.str();
      if (h != Rational(3, 4) / (k + Rational(2))) fail({{"relation", "h_1/2 = (3/4)/(k+2)"}});
      if (m.sugawara(0, m.highest_weight()) != scaled(m.highest_weight(), h))
        fail({{"relation", "L_0 |1/2> = h |1/2>"}});
    }
  }
  r.details["brackets_checked"] = brackets;
  return r;
}

}  // namespace slecoset
