#pragma once

#include "slecoset/linalg.hpp"
#include "slecoset/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slecoset {

/// Standard basis of sl2: E = [[0,1],[0,0]], H = diag(1,-1), F = [[0,0],[1,0]].
enum class Generator : std::uint8_t { E = 0, H = 1, F = 2 };

inline constexpr std::array<Generator, 3> kGenerators = {Generator::E, Generator::H, Generator::F};

/// ad(H)-eigenvalue of a basis generator: +2, 0, -2.
constexpr int weight_of(Generator g) {
  return g == Generator::E ? 2 : (g == Generator::H ? 0 : -2);
}

char generator_name(Generator g);

/// Element of sl2 written on the standard basis E, H, F.
struct Sl2Element {
  std::array<Rational, 3> coeff{};  // indexed by Generator

  static Sl2Element basis(Generator g);

  const Rational& operator[](Generator g) const { return coeff[static_cast<int>(g)]; }
  Rational& operator[](Generator g) { return coeff[static_cast<int>(g)]; }

  Sl2Element& operator+=(const Sl2Element& o);
  Sl2Element& operator-=(const Sl2Element& o);
  Sl2Element& operator*=(const Rational& s);
  friend Sl2Element operator+(Sl2Element a, const Sl2Element& b) { return a += b; }
  friend Sl2Element operator-(Sl2Element a, const Sl2Element& b) { return a -= b; }
  friend Sl2Element operator*(const Rational& s, Sl2Element a) { return a *= s; }
  friend bool operator==(const Sl2Element&, const Sl2Element&) = default;

  bool is_zero() const;
  /// 2x2 defining-representation matrix.
  std::array<std::array<Rational, 2>, 2> to_matrix() const;
};

Sl2Element bracket(const Sl2Element& x, const Sl2Element& y);

/// Invariant form (X|Y) = Tr(XY): (E|F) = 1, (H|H) = 2, all other basis pairs 0.
Rational killing_form(const Sl2Element& x, const Sl2Element& y);

/// One term c * left (x) right of the Casimir tensor sum_a X_a (x) X_a.
struct CasimirTerm {
  Generator left;
  Generator right;
  Rational coeff;
};

/// sum_a X_a (x) X_a for an orthonormal basis, in closed real form
/// (1/2) H(x)H + E(x)F + F(x)E. Also the coefficients of sum_a X_a^2 in U(sl2).
const std::vector<CasimirTerm>& casimir_terms();

/// Orthonormal basis element X = i^imaginary * sqrt(scale) * direction.
///
/// X1 = H/sqrt2, X2 = (E+F)/sqrt2, X3 = (i/sqrt2)(E-F). The irrational and
/// imaginary prefactors are carried symbolically so that every quantity
/// built from pairs (X_a|X_b), sum_a X_a (x) X_a stays exactly rational.
struct OrthonormalElement {
  Sl2Element direction;
  Rational scale;  // X = sqrt(scale) * direction (times i if imaginary)
  bool imaginary = false;
};

std::array<OrthonormalElement, 3> orthonormal_basis();

/// (X_a|X_b) computed from the symbolic representation above. Exact.
Rational orthonormal_pairing(const OrthonormalElement& a, const OrthonormalElement& b);

/// sum_a X_a (x) X_a as a 3x3 matrix of coefficients on {E,H,F} (x) {E,H,F}.
Matrix orthonormal_casimir_tensor();

/// Finite irreducible sl2-module L(j) with basis F^m|j>, m = 0..2j.
class FiniteModule {
public:
  /// twice_spin = 2j; throws InvalidArgument if negative.
  explicit FiniteModule(int twice_spin);

  /// Parses a half-integer spin string ("0", "1/2", "3/2", ...).
  static FiniteModule from_spin(const Rational& j);

  int twice_spin() const { return twice_spin_; }
  int dim() const { return twice_spin_ + 1; }

  /// g . F^m|j> = coeff * F^{m'}|j>, or nullopt when the result vanishes.
  std::optional<std::pair<int, Rational>> act(Generator g, int m) const;

  /// Weight 2j - 2m of F^m|j>.
  int weight(int m) const { return twice_spin_ - 2 * m; }

  /// <F^m j|F^m j> = <j|E^m F^m|j> = prod_{i=1..m} i (2j - i + 1).
  Rational norm(int m) const;

  Matrix matrix(const Sl2Element& x) const;
  std::vector<Rational> apply(const Sl2Element& x, const std::vector<Rational>& v) const;

private:
  int twice_spin_;
};

}  // namespace slecoset
