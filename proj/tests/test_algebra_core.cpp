#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slecoset/errors.hpp"
#include "slecoset/linalg.hpp"
#include "slecoset/rational.hpp"
#include "slecoset/sl2.hpp"

using namespace slecoset;

namespace {

using M2 = std::array<std::array<Rational, 2>, 2>;

M2 mul(const M2& a, const M2& b) {
  M2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Sl2Element E() { return Sl2Element::basis(Generator::E); }
Sl2Element H() { return Sl2Element::basis(Generator::H); }
Sl2Element F() { return Sl2Element::basis(Generator::F); }

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(Rational::parse("6/4").str() == "3/2");
  CHECK(Rational::parse("-0.125") == Rational(-1, 8));
  CHECK(Rational::parse("7").str() == "7");
  CHECK_THROWS_AS(Rational::parse("1/0"), InvalidArgument);
  CHECK_THROWS_AS(Rational::parse("abc"), InvalidArgument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), InvalidArgument);
  CHECK(Rational(2, -4).denominator() == 2);
}

TEST_CASE("bracket relations") {
  CHECK(bracket(E(), F()) == H());
  CHECK(bracket(H(), E()) == Rational(2) * E());
  CHECK(bracket(H(), F()) == Rational(-2) * F());
  CHECK(bracket(E(), E()).is_zero());
}

TEST_CASE("bracket matches 2x2 commutator and Jacobi holds") {
  for (Generator a : kGenerators)
    for (Generator b : kGenerators) {
      auto x = Sl2Element::basis(a), y = Sl2Element::basis(b);
      M2 xy = mul(x.to_matrix(), y.to_matrix()), yx = mul(y.to_matrix(), x.to_matrix());
      M2 br = bracket(x, y).to_matrix();
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(br[i][j] == xy[i][j] - yx[i][j]);
      for (Generator c : kGenerators) {
        auto z = Sl2Element::basis(c);
        auto jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
        CHECK(jac.is_zero());
        CHECK(killing_form(bracket(x, y), z) == killing_form(x, bracket(y, z)));
      }
    }
}

TEST_CASE("invariant form values") {
  CHECK(killing_form(E(), F()) == Rational(1));
  CHECK(killing_form(H(), H()) == Rational(2));
  CHECK(killing_form(E(), E()).is_zero());
  CHECK(killing_form(E(), H()).is_zero());
  for (Generator a : kGenerators)
    for (Generator b : kGenerators) {
      auto x = Sl2Element::basis(a), y = Sl2Element::basis(b);
      M2 xy = mul(x.to_matrix(), y.to_matrix());
      CHECK(killing_form(x, y) == xy[0][0] + xy[1][1]);
    }
}

TEST_CASE("orthonormal basis") {
  auto xs = orthonormal_basis();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(orthonormal_pairing(xs[a], xs[b]) == Rational(a == b ? 1 : 0));
  Matrix cas = orthonormal_casimir_tensor();
  Matrix expected(3, 3);
  expected(1, 1) = Rational(1, 2);
  expected(0, 2) = Rational(1);
  expected(2, 0) = Rational(1);
  CHECK(cas == expected);
  for (const auto& t : casimir_terms()) CHECK(expected(static_cast<int>(t.left), static_cast<int>(t.right)) == t.coeff);
}

TEST_CASE("finite module L(1/2)") {
  FiniteModule l(1);
  CHECK_FALSE(l.act(Generator::E, 0).has_value());
  auto ef = l.act(Generator::E, 1);
  REQUIRE(ef.has_value());
  CHECK(ef->first == 0);
  CHECK(ef->second == Rational(1));
  auto hf = l.act(Generator::H, 1);
  REQUIRE(hf.has_value());
  CHECK(hf->second == Rational(-1));
  CHECK_FALSE(l.act(Generator::F, 1).has_value());
  CHECK_THROWS_AS(FiniteModule(-1), InvalidArgument);
  CHECK_THROWS_AS(FiniteModule::from_spin(Rational(1, 3)), InvalidArgument);
}

TEST_CASE("finite module matrices satisfy the brackets for j <= 5/2") {
  for (int tj = 0; tj <= 5; ++tj) {
    FiniteModule l(tj);
    for (Generator a : kGenerators)
      for (Generator b : kGenerators) {
        auto x = Sl2Element::basis(a), y = Sl2Element::basis(b);
        Matrix mx = l.matrix(x), my = l.matrix(y);
        CHECK(mx * my - my * mx == l.matrix(bracket(x, y)));
      }
    // Casimir (1/2)H^2 + EF + FE acts as 2j(j+1)
    Matrix h = l.matrix(H()), e = l.matrix(E()), f = l.matrix(F());
    Matrix cas = Rational(1, 2) * (h * h) + e * f + f * e;
    Rational j(tj, 2);
    CHECK(cas == Rational(2) * j * (j + Rational(1)) * Matrix::identity(l.dim()));
  }
}

TEST_CASE("fraction-free elimination") {
  Matrix m(3, 3);
  int vals[3][3] = {{2, 1, 1}, {4, 3, 3}, {8, 7, 9}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Rational(vals[i][j], 3);
  CHECK(determinant(m) == Rational(4, 27));
  CHECK(m * inverse(m) == Matrix::identity(3));
  Matrix s(2, 2);
  s(0, 0) = Rational(1, 2);
  s(0, 1) = Rational(1);
  s(1, 0) = Rational(1, 4);
  s(1, 1) = Rational(1, 2);
  CHECK(rank(s) == 1);
  CHECK(determinant(s).is_zero());
}
