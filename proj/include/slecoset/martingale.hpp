#pragma once

#include "slecoset/coset.hpp"
#include "slecoset/loewner.hpp"
#include "slecoset/report.hpp"
#include "slecoset/stats.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace slecoset {

enum class Target { Virasoro, AffineVacuum, Tensor };

std::string target_name(Target t);
Target parse_target(const std::string& name);

/// Ito generator A = -2 L_{-2} + (kappa/2) L_{-1}^2 + (tau/2) sum_a X_a(-1)^2 and
/// the noise generators, as exact matrices on a truncated irreducible module.
///
/// Coordinates: Virasoro target L(c_kappa, h_kappa); affine target
/// L_{k+1}(0); tensor target L_k(1/2) (x) L_1(1/2) with total Sugawara
/// L^(k) (x) 1 + 1 (x) L^(1) and diagonal currents.
struct GeneratorSpec {
  Target target = Target::Virasoro;
  Rational k, kappa, tau;
  int grade = 0;
  std::vector<std::string> labels;
  std::vector<int> grades;
  std::vector<Rational> initial;

  Matrix l_minus2;
  Matrix l_minus1;
  /// E(-1), H(-1), F(-1); empty for the Virasoro target.
  std::vector<Matrix> currents;
  /// sum_a X_a(-1)^2 = (1/2)H(-1)^2 + E(-1)F(-1) + F(-1)E(-1).
  Matrix casimir;
  /// -2 L_{-2} + (kappa/2) L_{-1}^2 + (tau/2) casimir.
  Matrix drift;

  std::size_t dim() const { return labels.size(); }
  bool has_currents() const { return !currents.empty(); }
};

/// Throws InvalidArgument for grade < 2 or a non-admissible k on the tensor
/// target; k is ignored for the Virasoro target.
GeneratorSpec assemble_generator(Target target, const Rational& k, const Rational& kappa, const Rational& tau,
                                 int grade);

/// kappa = 4(k+2)/(k+3), tau = 2/(k+3).
Rational critical_kappa(const Rational& k);
Rational critical_tau(const Rational& k);

/// (-2 L_{-2} + (kappa/2) L_{-1}^2 + (tau/2) sum X_a(-1)^2)|0>_{k+1} = 0 in the
/// universal vacuum module.
VerificationReport vacuum_drift_check(const Rational& k, const Rational& kappa, const Rational& tau);

/// A|s> in the tensor of irreducible quotients, split into the coset
/// Virasoro part (-2 L^Com_{-2} + (kappa/2) (L^Com_{-1})^2)|s> and the
/// diagonal Casimir remainder.
VerificationReport theorem2_drift_check(const Rational& k, const Rational& kappa, const Rational& tau, int grade = 2);

/// Images of |s> and A|s> under 1 (x) <1/2| and 1 (x) <1/2|E.
VerificationReport corollary_projection_check(const Rational& k, const Rational& kappa, const Rational& tau);

/// Complex coefficients of E(-1), H(-1), F(-1) in sqrt(tau) sum_a X_a dW^a.
/// X3 = (i/sqrt2)(E - F) makes them complex; E[c c^T] = tau dt (Casimir form).
std::array<std::complex<double>, 3> noise_coefficients(double sqrt_tau, double dw1, double dw2, double dw3);

struct McConfig {
  double total_time = 0.5;
  double dt = 1e-3;
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  int checkpoints = 10;
  int grade_cap = -1;  // -1: the generator grade
  unsigned threads = 0;  // 0: hardware concurrency capped by SLE_COSET_THREADS
  double z_threshold = 4.0;
  double detect_threshold = 5.0;
};

struct McComponent {
  std::size_t index;
  bool imaginary;
  std::string label;
  int grade;
  double initial;
};

struct McResult {
  std::vector<double> times;
  std::vector<McComponent> components;
  /// stats[checkpoint][component]
  std::vector<std::vector<RunningStats>> stats;

  double z_score(std::size_t checkpoint, std::size_t component) const;
  /// Largest z-score at the final checkpoint.
  double max_final_z() const;
  std::size_t argmax_final_z() const;
};

/// Samples V_t|initial> with V_0 = 1 and dV = V (A dt + sqrt(kappa) L_{-1} dB +
/// sqrt(tau) sum_a X_a(-1) dW^a), Euler-Maruyama. The increments are iid, so
/// per-time marginals of V_t v coincide with those of the reversed product,
/// which is iterated forward on the vector.
McResult mc_simulate(const GeneratorSpec& spec, const McConfig& config);

void write_mc_csv(std::ostream& os, const McResult& r);
nlohmann::json mc_summary(const GeneratorSpec& spec, const McConfig& config, const McResult& r);

unsigned worker_count(unsigned requested, std::size_t work_items);

// Internal degrees of freedom in the fundamental representation.

enum class InternalScheme { Euler, Milstein };

using CSeries = std::vector<std::complex<double>>;  // coefficients of z^0, z^-1, ...

struct InternalState {
  int order = 0;
  /// |lambda(z)>_t, integrated directly.
  std::array<CSeries, 2> lambda;
  /// Theta_t in the evaluation representation, row-major 2x2.
  std::array<CSeries, 4> theta;

  static InternalState start(int order, int zero_index = 0);
};

/// One step of the direct lambda SDE and of the Theta SDE, both driven by dW.
/// Milstein (no Levy area): lambda <- (1 - N + N^2/2) lambda and
/// Theta <- Theta (1 + N + N^2/2), N = sqrt(tau) f^-1 sum_a X_a dW^a.
void internal_process_step(InternalState& s, const SleSeriesState<double>& f, double tau, double dt,
                           const std::array<double, 3>& dw, InternalScheme scheme);

CSeries series_determinant(const InternalState& s);
/// Theta^{-1}(z)|lambda_0> via adj(Theta)/det(Theta).
std::array<CSeries, 2> theta_inverse_applied(const InternalState& s, int zero_index = 0);

struct InternalConfig {
  double kappa = 3.0;
  double tau = 0.5;
  double total_time = 0.2;
  double dt = 1e-4;
  int order = 4;
  std::uint64_t seed = 42;
  InternalScheme scheme = InternalScheme::Milstein;
  /// Brownian path drawn on the grid dt / 2^path_halvings; each step sums
  /// 2^path_halvings increments, so runs with (dt, h) and (dt/2, h-1) share a path.
  int path_halvings = 0;
};

struct InternalResult {
  std::size_t steps = 0;
  double max_det_deviation = 0.0;
  double final_difference = 0.0;  // max |lambda - Theta^-1 lambda_0| over coefficients
  InternalState state;
};

InternalResult run_internal_process(const InternalConfig& config);

}  // namespace slecoset
