#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slecoset/coset.hpp"
#include "slecoset/errors.hpp"
#include "slecoset/virasoro.hpp"

using namespace slecoset;

namespace {
constexpr Generator E = Generator::E, H = Generator::H, F = Generator::F;
}

TEST_CASE("coset central charge") {
  CHECK(coset_central_charge(Rational(1)) == Rational(1, 2));
  CHECK(coset_central_charge(Rational(2)) == Rational(7, 10));
  CHECK(coset_central_charge(Rational(-1, 2)) == Rational(-3, 5));
  CHECK(coset_central_charge(Rational(-1, 2)) == minimal_central_charge(3, 5));
  CHECK_THROWS_AS(coset_central_charge(Rational(-2)), InvalidArgument);
  CHECK_THROWS_AS(coset_central_charge(Rational(-3)), InvalidArgument);
}

TEST_CASE("diagonal action has level k+1") {
  Rational k(2, 3);
  TensorModule t = TensorModule::build(k, 1, 1, 4);
  for (int g = 0; g <= 1; ++g)
    for (const auto& key : t.basis(g))
      for (Generator x : kGenerators)
        for (Generator y : kGenerators)
          for (int m = -1; m <= 1; ++m)
            for (int n = -1; n <= 1; ++n) {
              TensorVector v{{key, Rational(1)}};
              TensorVector lhs = t.diag_apply(x, m, t.diag_apply(y, n, v)) - t.diag_apply(y, n, t.diag_apply(x, m, v));
              Sl2Element br = bracket(Sl2Element::basis(x), Sl2Element::basis(y));
              TensorVector rhs;
              for (Generator z : kGenerators) add_scaled(rhs, t.diag_apply(z, m + n, v), br[z]);
              if (m + n == 0)
                add_scaled(rhs, v, Rational(m) * killing_form(Sl2Element::basis(x), Sl2Element::basis(y)) * (k + Rational(1)));
              CHECK(lhs == rhs);
            }
}

TEST_CASE("coset virasoro examples") {
  TensorModule t = TensorModule::build(Rational(1), 0, 0, 4);
  TensorVector vac = tensor(t.left().highest_weight(), t.right().highest_weight());
  CHECK(t.coset_virasoro(0, vac).empty());
  TensorVector lhs = t.coset_virasoro(2, t.coset_virasoro(-2, vac));
  CHECK(lhs == scaled(vac, Rational(1, 4)));
  for (Generator x : kGenerators)
    for (const auto& key : t.basis(0)) {
      TensorVector v{{key, Rational(1)}};
      CHECK((t.coset_virasoro(1, t.diag_apply(x, -1, v)) - t.diag_apply(x, -1, t.coset_virasoro(1, v))).empty());
    }
}

TEST_CASE("s vector") {
  for (auto [k, h] : std::vector<std::pair<Rational, Rational>>{{Rational(1), Rational(1, 2)},
                                                                {Rational(2), Rational(7, 16)},
                                                                {Rational(-1, 2), minimal_weight(3, 5, 2, 1)}}) {
    TensorModule t = TensorModule::build(k, 1, 1, 2);
    TensorVector s = s_vector(t);
    for (Generator x : kGenerators) {
      CHECK(t.diag_apply(x, 0, s).empty());
      CHECK(t.diag_apply(x, 1, s).empty());
    }
    CHECK(t.coset_virasoro(0, s) == scaled(s, h));
    auto adm = admissible_level(k);
    CHECK(h == minimal_weight(adm->p, adm->p + adm->q, 2, 1));
  }
  TensorModule wrong = TensorModule::build(Rational(1), 0, 1, 1);
  CHECK_THROWS_AS(s_vector(wrong), InvalidArgument);
}

TEST_CASE("coset check") {
  for (Rational k : {Rational(1), Rational(-1, 2)}) {
    auto r = coset_check(k, 2);
    CHECK(r.verified);
  }
}

TEST_CASE("tensor quotient zero test") {
  TensorModule t = TensorModule::build(Rational(1), 1, 1, 2);
  // E(-1)|1/2> is null at level 1, in either slot.
  TensorVector nul = tensor(t.left().apply(E, -1, t.left().highest_weight()), t.right().highest_weight(1));
  CHECK(t.vanishes_in_quotient(nul));
  CHECK_FALSE(t.vanishes_in_quotient(s_vector(t)));
  const auto& q = t.quotient(2);
  CHECK(q.dim() == 4 + 8 + 28);
  CHECK_THROWS_AS(t.vanishes_in_quotient(t.diag_casimir(t.diag_casimir(s_vector(t)))), TruncationError);
}

TEST_CASE("branching") {
  auto a = branching_check(Rational(1), 1, 1, 3);
  CHECK(a.verified);
  const auto& cells = a.details["cells"];
  // grade 0: total dim 4 split over weights 2, 0, -2
  std::size_t g0 = 0;
  for (const auto& c : cells)
    if (c["grade"] == 0) g0 += c["lhs_dim"].get<std::size_t>();
  CHECK(g0 == 4);
  std::vector<int> ss;
  for (const auto& s : a.details["summands"]) ss.push_back(s["s"]);
  CHECK(ss == std::vector<int>{1, 3});

  auto b = branching_check(Rational(1), 1, 0, 3);
  CHECK(b.verified);
  REQUIRE(b.details["summands"].size() == 1);
  CHECK(b.details["summands"][0]["s"] == 2);
  CHECK(b.details["summands"][0]["h_vir"] == "1/16");

  CHECK(branching_check(Rational(2), 1, 1, 3).verified);
  CHECK(branching_check(Rational(-1, 2), 1, 1, 2).verified);
  CHECK_THROWS_AS(branching_check(Rational(1), 2, 1, 2), InvalidArgument);
}
