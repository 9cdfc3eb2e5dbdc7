#include "slecoset/loewner.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>

namespace slecoset {

namespace {

long step_count(double total_time, double dt) {
  if (!(dt > 0)) throw InvalidArgument("dt must be positive");
  if (!(total_time >= 0)) throw InvalidArgument("T must be non-negative");
  return std::lround(total_time / dt);
}

std::vector<Rational> der_for_grade(const AutSeries<Rational>& rho, int max_grade) {
  if (max_grade > rho.order() + 1)
    throw InvalidArgument("series order " + std::to_string(rho.order()) + " too small for grade " +
                          std::to_string(max_grade));
  return der_coefficients(rho);
}

}  // namespace

Matrix nilpotent_exp(const Matrix& x) {
  Matrix total = Matrix::identity(x.rows());
  Matrix term = Matrix::identity(x.rows());
  for (int n = 1; n <= static_cast<int>(x.rows()) + 1; ++n) {
    term = term * x;
    if (term.is_zero()) return total;
    term *= Rational(1, n);
    total += term;
  }
  throw NumericalError("matrix is not nilpotent");
}

std::vector<Partition> verma_basis(const VermaModule& m, int max_grade) {
  std::vector<Partition> out;
  for (int g = 0; g <= max_grade; ++g) {
    const auto& b = m.basis(g);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

Matrix q_operator(const VermaModule& m, const AutSeries<Rational>& rho, int max_grade) {
  const std::vector<Rational> v = der_for_grade(rho, max_grade);
  const auto basis = verma_basis(m, max_grade);
  std::map<Partition, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  Matrix x(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const int g = grade_of(basis[j]);
    for (int k = 1; g + k <= max_grade; ++k) {
      if (v[k - 1].is_zero()) continue;
      for (const auto& [p, c] : m.apply_unbounded(-k, VirVector{{basis[j], Rational(1)}}))
        x(index.at(p), j) -= v[k - 1] * c;
    }
  }
  return nilpotent_exp(x);
}

GradedQuotient<Partition> virasoro_quotient(const VermaModule& m, int max_grade) {
  std::vector<GradedQuotient<Partition>::Block> blocks;
  for (int g = 0; g <= max_grade; ++g) blocks.push_back({g, 0, m.basis(g), m.gram(g)});
  return GradedQuotient<Partition>(std::move(blocks), max_grade, [](const Partition& p) { return grade_of(p); });
}

Matrix q_operator(const VermaModule& m, const GradedQuotient<Partition>& q, const AutSeries<Rational>& rho) {
  const std::vector<Rational> v = der_for_grade(rho, q.max_grade());
  Matrix x = q.operator_matrix([&](const VirVector& w) {
    VirVector out;
    for (int k = 1; k <= q.max_grade(); ++k) add_scaled(out, m.apply_unbounded(-k, w), -v[k - 1]);
    return out;
  });
  return nilpotent_exp(x);
}

std::vector<SleTrajectoryRow> sle_trajectory(double kappa, int order, double total_time, double dt,
                                             std::uint64_t seed, int stride) {
  if (kappa < 0) throw InvalidArgument("kappa must be non-negative");
  if (stride < 1) throw InvalidArgument("stride must be positive");
  const long steps = step_count(total_time, dt);
  auto engine = sample_engine(seed, 0);
  std::normal_distribution<double> normal;
  const double sdt = std::sqrt(dt);
  auto s = SleSeriesState<double>::start(std::sqrt(kappa), order);
  std::vector<SleTrajectoryRow> rows;
  rows.push_back({0.0, 0.0, s.f.coeff});
  for (long n = 1; n <= steps; ++n) {
    sle_step(s, dt, sdt * normal(engine));
    if (n % stride == 0 || n == steps) rows.push_back({s.t, s.brownian, s.f.coeff});
  }
  return rows;
}

void write_trajectory_csv(std::ostream& os, const std::vector<SleTrajectoryRow>& rows) {
  os << "t,B_t";
  const std::size_t width = rows.empty() ? 0 : rows.front().coeff.size();
  for (std::size_t i = 0; i < width; ++i) os << (i == 0 ? ",a0" : ",a_-" + std::to_string(i));
  os << '\n' << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.t << ',' << r.brownian;
    for (double c : r.coeff) os << ',' << c;
    os << '\n';
  }
}

std::vector<RunningStats> sle_coefficient_stats(double kappa, int order, double total_time, double dt,
                                                std::size_t samples, std::uint64_t seed) {
  if (kappa < 0) throw InvalidArgument("kappa must be non-negative");
  const long steps = step_count(total_time, dt);
  const double sdt = std::sqrt(dt);
  std::vector<RunningStats> stats(order + 1);
  for (std::size_t i = 0; i < samples; ++i) {
    auto engine = sample_engine(seed, i);
    std::normal_distribution<double> normal;
    auto s = SleSeriesState<double>::start(std::sqrt(kappa), order);
    for (long n = 0; n < steps; ++n) sle_step(s, dt, sdt * normal(engine));
    for (int c = 0; c <= order; ++c) stats[c].add(s.f.coeff[c]);
  }
  return stats;
}

}  // namespace slecoset
