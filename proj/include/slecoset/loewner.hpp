#pragma once

#include "slecoset/errors.hpp"
#include "slecoset/linalg.hpp"
#include "slecoset/quotient.hpp"
#include "slecoset/rational.hpp"
#include "slecoset/stats.hpp"
#include "slecoset/virasoro.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace slecoset {

/// Element z + a0 + a_{-1} z^-1 + ... + a_{-N} z^-N of Aut+O, truncated at
/// order N. coeff[i] is the coefficient of z^-i.
template <class T>
struct AutSeries {
  std::vector<T> coeff;

  static AutSeries identity(int order) { return AutSeries{std::vector<T>(order + 1, T(0))}; }
  int order() const { return static_cast<int>(coeff.size()) - 1; }
  friend bool operator==(const AutSeries&, const AutSeries&) = default;
};

namespace series_detail {

/// Product of power series in w = z^-1, truncated after w^n.
template <class T>
std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b, int n) {
  std::vector<T> c(n + 1, T(0));
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= n; ++i) {
    if (a[i] == T(0)) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= n; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

/// 1 / (1 + sum_i f_i w^{i+1}) up to w^n.
template <class T>
std::vector<T> inverse_of_tail(const std::vector<T>& f, int n) {
  std::vector<T> r(n + 1, T(0));
  r[0] = T(1);
  for (int i = 1; i <= n; ++i) {
    T s(0);
    for (int d = 1; d <= i && d - 1 < static_cast<int>(f.size()); ++d) s += f[d - 1] * r[i - d];
    r[i] = -s;
  }
  return r;
}

}  // namespace series_detail

/// 1/f as coefficients of z^-1, z^-2, ..., z^-(N+2); f * (1/f) = 1 + O(z^{-N-2}).
template <class T>
std::vector<T> reciprocal(const AutSeries<T>& f) {
  return series_detail::inverse_of_tail(f.coeff, f.order() + 1);
}

/// (mu * rho)(z) = rho(mu(z)).
template <class T>
AutSeries<T> compose(const AutSeries<T>& mu, const AutSeries<T>& rho) {
  if (mu.order() != rho.order()) throw InvalidArgument("compose: truncation orders differ");
  const int n = mu.order();
  // 1/mu = w R(w); accumulate rho_j (w R)^j.
  std::vector<T> wr(n + 1, T(0));
  std::vector<T> r = series_detail::inverse_of_tail(mu.coeff, n);
  for (int i = 1; i <= n; ++i) wr[i] = r[i - 1];
  AutSeries<T> out = mu;
  std::vector<T> power(n + 1, T(0));
  power[0] = T(1);
  for (int j = 0; j <= n; ++j) {
    if (!(rho.coeff[j] == T(0)))
      for (int i = 0; i <= n; ++i) out.coeff[i] += rho.coeff[j] * power[i];
    power = series_detail::mul(power, wr, n);
  }
  return out;
}

/// Group inverse: compose(rho, invert(rho)) = z.
template <class T>
AutSeries<T> invert(const AutSeries<T>& rho) {
  AutSeries<T> sigma = AutSeries<T>::identity(rho.order());
  for (int i = 0; i <= rho.order(); ++i) sigma.coeff[i] = sigma.coeff[i] - compose(rho, sigma).coeff[i];
  return sigma;
}

/// exp(sum_m v_{-m} z^{1-m} d/dz) z truncated at z^-order; v[m-1] = v_{-m}.
template <class T>
AutSeries<T> reexponentiate(const std::vector<T>& v, int order) {
  // c[d] is the coefficient of z^{1-d}, d = 0..order+1.
  const int len = order + 2;
  std::vector<T> term(len, T(0)), total(len, T(0));
  term[0] = T(1);
  total[0] = T(1);
  for (int n = 1; n < len; ++n) {
    std::vector<T> next(len, T(0));
    for (int d = 0; d < len; ++d) {
      if (term[d] == T(0)) continue;
      const T p(1 - d);
      for (std::size_t m = 1; m <= v.size() && d + static_cast<int>(m) < len; ++m)
        next[d + m] += term[d] * p * v[m - 1];
    }
    for (auto& x : next) x = x / T(n);
    term = std::move(next);
    for (int d = 0; d < len; ++d) total[d] += term[d];
  }
  AutSeries<T> out;
  out.coeff.assign(total.begin() + 1, total.end());
  return out;
}

/// The numbers v_{-1}, ..., v_{-(N+1)} with exp(sum v_j z^{j+1} d/dz) z = rho(z).
/// Solved order by order: the z^{1-m} coefficient is v_{-m} plus a polynomial
/// in the earlier ones.
template <class T>
std::vector<T> der_coefficients(const AutSeries<T>& rho) {
  const int n = rho.order();
  std::vector<T> v(n + 1, T(0));
  for (int m = 1; m <= n + 1; ++m) {
    AutSeries<T> e = reexponentiate(v, n);
    v[m - 1] = rho.coeff[m - 1] - e.coeff[m - 1];
  }
  return v;
}

/// exp(X) for a nilpotent matrix.
Matrix nilpotent_exp(const Matrix& x);

/// Full grade <= max_grade basis of a Verma module, grades concatenated.
std::vector<Partition> verma_basis(const VermaModule& m, int max_grade);

/// Q(rho) = exp(-sum_j v_j L_j) on M(c,h) truncated at max_grade (components
/// above it dropped). Needs max_grade <= order(rho) + 1.
Matrix q_operator(const VermaModule& m, const AutSeries<Rational>& rho, int max_grade);

/// Irreducible quotient L(c,h) of the module truncated at max_grade.
GradedQuotient<Partition> virasoro_quotient(const VermaModule& m, int max_grade);

/// Q(rho) on the truncated irreducible quotient.
Matrix q_operator(const VermaModule& m, const GradedQuotient<Partition>& q, const AutSeries<Rational>& rho);

/// f_t(z) = g_t(z) - sqrt(kappa) B_t as a truncated series.
template <class T>
struct SleSeriesState {
  T t{0};
  T brownian{0};
  T sqrt_kappa{0};
  AutSeries<T> f;

  static SleSeriesState start(T sqrt_kappa, int order) {
    return SleSeriesState{T(0), T(0), sqrt_kappa, AutSeries<T>::identity(order)};
  }
};

/// Euler-Maruyama step of df = 2/f dt + sqrt(kappa) dB. The drift 2/f has no
/// z^0 term, so a0 only sees the noise and da_{-1} = 2 dt.
template <class T>
void sle_step(SleSeriesState<T>& s, const T& dt, const T& db) {
  if (!(T(0) < dt)) throw InvalidArgument("dt must be positive");
  const std::vector<T> r = reciprocal(s.f);
  for (int i = 1; i <= s.f.order(); ++i) s.f.coeff[i] += T(2) * r[i - 1] * dt;
  s.f.coeff[0] += s.sqrt_kappa * db;
  s.t += dt;
  s.brownian += db;
}

struct SleTrajectoryRow {
  double t;
  double brownian;
  std::vector<double> coeff;
};

/// One sampled path on [0, total_time]; rows every `stride` steps (and at the end).
std::vector<SleTrajectoryRow> sle_trajectory(double kappa, int order, double total_time, double dt,
                                             std::uint64_t seed, int stride = 1);
void write_trajectory_csv(std::ostream& os, const std::vector<SleTrajectoryRow>& rows);

/// Monte-Carlo statistics of every coefficient a0..a_{-N} at the final time.
std::vector<RunningStats> sle_coefficient_stats(double kappa, int order, double total_time, double dt,
                                                std::size_t samples, std::uint64_t seed);

}  // namespace slecoset
