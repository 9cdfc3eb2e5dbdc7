#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slecoset/loewner.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace slecoset;

namespace {

using RS = AutSeries<Rational>;

RS series(std::vector<Rational> c) { return RS{std::move(c)}; }

RS random_series(std::mt19937_64& rng, int order) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  RS s = RS::identity(order);
  for (auto& c : s.coeff) c = Rational(num(rng), den(rng));
  return s;
}

// Oracle: evaluate rho(mu(z)) numerically at large z and read off coefficients is
// awkward; instead compare with a direct expansion via the binomial series.
RS compose_oracle(const RS& mu, const RS& rho) {
  // mu^{-j} computed by repeated multiplication of 1/mu obtained from f * g = 1.
  const int n = mu.order();
  std::vector<Rational> inv(n + 2);  // coefficients of z^{-1-i}
  inv[0] = Rational(1);
  for (int i = 1; i <= n + 1; ++i) {
    Rational s;
    for (int d = 1; d <= i; ++d)
      if (d - 1 <= n) s += mu.coeff[d - 1] * inv[i - d];
    inv[i] = -s;
  }
  RS out = mu;
  std::vector<Rational> pw(n + 1);  // coefficients of z^{-i}
  pw[0] = Rational(1);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) out.coeff[i] += rho.coeff[j] * pw[i];
    std::vector<Rational> next(n + 1);
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b + 1 <= n; ++b) next[a + b + 1] += pw[a] * inv[b];
    pw = next;
  }
  return out;
}

}  // namespace

TEST_CASE("compose examples") {
  Rational a(3, 2), b(-1, 3), c(5, 7);
  CHECK(compose(series({b}), series({a})) == series({a + b}));
  RS rho = series({Rational(1), Rational(2), Rational(3)});
  CHECK(compose(RS::identity(2), rho) == rho);
  CHECK(compose(series({a, 0}), series({0, c})) == series({a, c}));
  // c/(z+a) = c z^-1 - ac z^-2 + a^2 c z^-3
  CHECK(compose(series({a, 0, 0}), series({0, c, 0})) == series({a, c, -a * c}));
}

TEST_CASE("compose is associative with identity, matches oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    RS x = random_series(rng, 5), y = random_series(rng, 5), z = random_series(rng, 5);
    CHECK(compose(compose(x, y), z) == compose(x, compose(y, z)));
    CHECK(compose(x, y) == compose_oracle(x, y));
    CHECK(compose(x, RS::identity(5)) == x);
    CHECK(compose(x, invert(x)) == RS::identity(5));
    CHECK(compose(invert(x), x) == RS::identity(5));
  }
  CHECK_THROWS_AS(compose(RS::identity(2), RS::identity(3)), InvalidArgument);
}

TEST_CASE("invert examples") {
  Rational a(2, 3), c(-3, 4);
  CHECK(invert(series({a})) == series({-a}));
  CHECK(invert(RS::identity(4)) == RS::identity(4));
  // Lagrange reversion of w = z + c/z: z = w - c/w - c^2/w^3 + ...
  CHECK(invert(series({0, c, 0, 0})) == series({0, -c, 0, -c * c}));
}

TEST_CASE("reciprocal") {
  auto r = reciprocal(RS::identity(3));
  CHECK(r == std::vector<Rational>{1, 0, 0, 0, 0});
  Rational a(1, 3), c(2);
  CHECK(reciprocal(series({a, 0, 0})) == std::vector<Rational>{1, -a, a * a, -a * a * a});
  CHECK(reciprocal(series({0, c, 0})) == std::vector<Rational>{1, 0, -c, 0});
  std::mt19937_64 rng(3);
  RS f = random_series(rng, 4);
  auto g = reciprocal(f);
  // f * (1/f) = 1 + O(z^{-N-2})
  for (int d = 1; d <= f.order() + 1; ++d) {
    Rational s = g[d];
    for (int i = 0; i < d; ++i) s += f.coeff[i] * g[d - 1 - i];
    CHECK(s.is_zero());
  }
}

TEST_CASE("der coefficients") {
  Rational a(5, 3), c(-2, 7);
  auto v = der_coefficients(series({a, 0, 0}));
  CHECK(v == std::vector<Rational>{a, 0, 0});
  auto w = der_coefficients(series({0, c, 0, 0}));
  CHECK(w == std::vector<Rational>{0, c, 0, c * c / Rational(2)});
  CHECK(der_coefficients(RS::identity(3)) == std::vector<Rational>(4));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    RS rho = random_series(rng, 6);
    CHECK(reexponentiate(der_coefficients(rho), 6) == rho);
  }
}

TEST_CASE("Q operator") {
  VermaModule m(Rational(1, 2), Rational(1, 2), 6);
  CHECK(q_operator(m, RS::identity(5), 6) == Matrix::identity(verma_basis(m, 6).size()));
  Rational a(3, 5);
  Matrix q = q_operator(m, series({a, 0, 0}), 3);
  // Q(z+a)|h> = sum_n (-a)^n L_{-1}^n/n! |h>
  auto basis = verma_basis(m, 3);
  auto idx = [&](const Partition& p) { return std::find(basis.begin(), basis.end(), p) - basis.begin(); };
  CHECK(q(idx({}), 0) == Rational(1));
  CHECK(q(idx({1}), 0) == -a);
  CHECK(q(idx({1, 1}), 0) == a * a / Rational(2));
  CHECK(q(idx({1, 1, 1}), 0) == -a * a * a / Rational(6));
  CHECK(q(idx({2}), 0).is_zero());
  CHECK_THROWS_AS(q_operator(m, RS::identity(2), 5), InvalidArgument);
}

TEST_CASE("Q is multiplicative") {
  std::mt19937_64 rng(5);
  VermaModule verma(Rational(-22, 5), Rational(-1, 5), 5);
  auto quot = virasoro_quotient(verma, 5);
  for (int trial = 0; trial < 5; ++trial) {
    RS rho = random_series(rng, 4), mu = random_series(rng, 4);
    CHECK(q_operator(verma, compose(rho, mu), 5) == q_operator(verma, rho, 5) * q_operator(verma, mu, 5));
    CHECK(q_operator(verma, quot, compose(rho, mu)) == q_operator(verma, quot, rho) * q_operator(verma, quot, mu));
  }
  CHECK(quot.dim() < verma_basis(verma, 5).size());
}

TEST_CASE("SLE step") {
  auto s = SleSeriesState<double>::start(std::sqrt(3.0), 4);
  sle_step(s, 0.01, 0.2);
  CHECK(s.f.coeff[0] == doctest::Approx(std::sqrt(3.0) * 0.2));
  CHECK(s.f.coeff[1] == doctest::Approx(0.02));
  CHECK_THROWS_AS(sle_step(s, 0.0, 0.1), InvalidArgument);

  // exact mode: a_{-1} = 2t along an arbitrary rational path
  auto e = SleSeriesState<Rational>::start(Rational(2), 6);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> num(-9, 9);
  for (int n = 0; n < 40; ++n) {
    sle_step(e, Rational(1, 64), Rational(num(rng), 8));
    CHECK(e.f.coeff[1] == Rational(2) * e.t);
  }
  CHECK(e.f.coeff[0] == Rational(2) * e.brownian);
}

TEST_CASE("SLE trajectory and coefficient statistics") {
  auto rows = sle_trajectory(4.0, 5, 0.1, 1e-3, 9, 10);
  CHECK(rows.size() == 11);
  for (const auto& r : rows) CHECK(r.coeff[1] == doctest::Approx(2 * r.t).epsilon(1e-12));
  std::ostringstream os;
  write_trajectory_csv(os, rows);
  CHECK(os.str().rfind("t,B_t,a0,a_-1,a_-2,a_-3,a_-4,a_-5\n", 0) == 0);
  auto stats = sle_coefficient_stats(3.0, 4, 0.2, 1e-2, 2000, 17);
  CHECK(std::abs(stats[2].mean) < 4 * stats[2].stderr_of_mean());
  CHECK(stats[1].mean == doctest::Approx(0.4));
}
