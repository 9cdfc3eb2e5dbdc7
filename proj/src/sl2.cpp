#include "slecoset/sl2.hpp"

#include "slecoset/errors.hpp"

namespace slecoset {

char generator_name(Generator g) {
  switch (g) {
    case Generator::E: return 'E';
    case Generator::H: return 'H';
    case Generator::F: return 'F';
  }
  return '?';
}

Sl2Element Sl2Element::basis(Generator g) {
  Sl2Element x;
  x[g] = 1;
  return x;
}

Sl2Element& Sl2Element::operator+=(const Sl2Element& o) {
  for (int i = 0; i < 3; ++i) coeff[i] += o.coeff[i];
  return *this;
}

Sl2Element& Sl2Element::operator-=(const Sl2Element& o) {
  for (int i = 0; i < 3; ++i) coeff[i] -= o.coeff[i];
  return *this;
}

Sl2Element& Sl2Element::operator*=(const Rational& s) {
  for (auto& c : coeff) c *= s;
  return *this;
}

bool Sl2Element::is_zero() const {
  return coeff[0].is_zero() && coeff[1].is_zero() && coeff[2].is_zero();
}

std::array<std::array<Rational, 2>, 2> Sl2Element::to_matrix() const {
  const Rational& e = (*this)[Generator::E];
  const Rational& h = (*this)[Generator::H];
  const Rational& f = (*this)[Generator::F];
  return {{{h, e}, {f, -h}}};
}

Sl2Element bracket(const Sl2Element& x, const Sl2Element& y) {
  // [H,E] = 2E, [H,F] = -2F, [E,F] = H
  const Rational &xe = x[Generator::E], &xh = x[Generator::H], &xf = x[Generator::F];
  const Rational &ye = y[Generator::E], &yh = y[Generator::H], &yf = y[Generator::F];
  Sl2Element z;
  z[Generator::E] = Rational(2) * (xh * ye - xe * yh);
  z[Generator::F] = Rational(-2) * (xh * yf - xf * yh);
  z[Generator::H] = xe * yf - xf * ye;
  return z;
}

Rational killing_form(const Sl2Element& x, const Sl2Element& y) {
  return x[Generator::E] * y[Generator::F] + x[Generator::F] * y[Generator::E] +
         Rational(2) * x[Generator::H] * y[Generator::H];
}

const std::vector<CasimirTerm>& casimir_terms() {
  static const std::vector<CasimirTerm> terms = {
      {Generator::H, Generator::H, Rational(1, 2)},
      {Generator::E, Generator::F, Rational(1)},
      {Generator::F, Generator::E, Rational(1)},
  };
  return terms;
}

std::array<OrthonormalElement, 3> orthonormal_basis() {
  Sl2Element e = Sl2Element::basis(Generator::E);
  Sl2Element h = Sl2Element::basis(Generator::H);
  Sl2Element f = Sl2Element::basis(Generator::F);
  return {{
      {h, Rational(1, 2), false},
      {e + f, Rational(1, 2), false},
      {e - f, Rational(1, 2), true},
  }};
}

Rational orthonormal_pairing(const OrthonormalElement& a, const OrthonormalElement& b) {
  Rational inner = killing_form(a.direction, b.direction);
  if (inner.is_zero()) return inner;
  // sqrt(sa)*sqrt(sb) is rational whenever sa*sb is a rational square; the
  // basis above only pairs an element with itself non-trivially.
  if (a.scale != b.scale) throw InvalidArgument("orthonormal pairing needs equal scales");
  Rational value = a.scale * inner;
  if (a.imaginary && b.imaginary) value = -value;
  else if (a.imaginary != b.imaginary) throw InvalidArgument("pairing is not real");
  return value;
}

Matrix orthonormal_casimir_tensor() {
  Matrix t(3, 3);
  for (const auto& x : orthonormal_basis()) {
    Rational s = x.imaginary ? -x.scale : x.scale;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) += s * x.direction.coeff[i] * x.direction.coeff[j];
  }
  return t;
}

FiniteModule::FiniteModule(int twice_spin) : twice_spin_(twice_spin) {
  if (twice_spin < 0) throw InvalidArgument("spin must be a non-negative half-integer");
}

FiniteModule FiniteModule::from_spin(const Rational& j) {
  Rational twice = j * 2;
  if (!twice.is_integer() || twice.sign() < 0)
    throw InvalidArgument("spin must be a non-negative half-integer, got " + j.str());
  return FiniteModule(static_cast<int>(twice.numerator().get_si()));
}

std::optional<std::pair<int, Rational>> FiniteModule::act(Generator g, int m) const {
  switch (g) {
    case Generator::E:
      if (m == 0) return std::nullopt;
      return std::pair{m - 1, Rational(m * (twice_spin_ - m + 1))};
    case Generator::H:
      if (weight(m) == 0) return std::nullopt;
      return std::pair{m, Rational(weight(m))};
    case Generator::F:
      if (m == twice_spin_) return std::nullopt;
      return std::pair{m + 1, Rational(1)};
  }
  return std::nullopt;
}

Rational FiniteModule::norm(int m) const {
  Rational n(1);
  for (int i = 1; i <= m; ++i) n *= Rational(i * (twice_spin_ - i + 1));
  return n;
}

Matrix FiniteModule::matrix(const Sl2Element& x) const {
  Matrix out(dim(), dim());
  for (Generator g : kGenerators) {
    if (x[g].is_zero()) continue;
    for (int m = 0; m < dim(); ++m)
      if (auto r = act(g, m)) out(r->first, m) += x[g] * r->second;
  }
  return out;
}

std::vector<Rational> FiniteModule::apply(const Sl2Element& x, const std::vector<Rational>& v) const {
  if (static_cast<int>(v.size()) != dim())
    throw InvalidArgument("vector does not lie in L(j): wrong dimension");
  return matrix(x) * v;
}

}  // namespace slecoset
