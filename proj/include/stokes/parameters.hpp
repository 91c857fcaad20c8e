#pragma once

#include <array>
#include <cmath>
#include <string>

#include "stokes/complex_util.hpp"
#include "stokes/errors.hpp"

namespace stokes {

// L = L3 L2 L1, L_j = d/dx - (alpha_j/x + beta_j/x^2). The beta_j must be
// pairwise distinct with pairwise distinct difference directions, and the
// moduli regime must be one the closed forms cover.
struct Parameters {
  std::array<Complex, 3> alpha;
  std::array<Complex, 3> beta;

  Complex a(int j) const { return alpha[static_cast<std::size_t>(j - 1)]; }
  Complex b(int j) const { return beta[static_cast<std::size_t>(j - 1)]; }
};

enum class PairCase { Generic, IntLeMinus2 };
enum class TripleCase { Generic, IntLeMinus4 };
enum class Regime { ModulusLess, ModulusEqual };

struct CaseTag {
  PairCase pair12 = PairCase::Generic;   // alpha2 - alpha1
  PairCase pair23 = PairCase::Generic;   // alpha3 - alpha2
  TripleCase triple13 = TripleCase::Generic;  // alpha3 - alpha1
  bool excluded = false;
  Regime regime = Regime::ModulusLess;
};

inline constexpr double kModulusEqTol = 1e-9;  // relative, |b3-b1| vs |b3-b2|

inline void validate_parameters(const Parameters& p, double int_tol = kIntTol) {
  const Complex b12 = p.b(1) - p.b(2);
  const Complex b13 = p.b(1) - p.b(3);
  const Complex b23 = p.b(2) - p.b(3);
  const double scale = std::max({std::abs(b12), std::abs(b13), std::abs(b23)});
  if (std::abs(b12) <= 1e-14 * scale || std::abs(b13) <= 1e-14 * scale ||
      std::abs(b23) <= 1e-14 * scale)
    throw InvalidParameters("beta_j must be pairwise distinct");
  const double t1 = std::arg(b12), t2 = std::arg(b13), t3 = std::arg(b23);
  const double kArgTol = 1e-9;
  if (dir_distance(t1, t2) <= kArgTol || dir_distance(t1, t3) <= kArgTol ||
      dir_distance(t2, t3) <= kArgTol)
    throw InvalidParameters("arg(b1-b2), arg(b1-b3), arg(b2-b3) must be pairwise distinct");

  const double m31 = std::abs(p.b(3) - p.b(1));
  const double m32 = std::abs(p.b(3) - p.b(2));
  if (m31 < m32 * (1.0 - kModulusEqTol)) return;  // ModulusLess regime
  if (std::abs(m31 - m32) <= kModulusEqTol * m32) {
    const Complex s = (p.b(3) - p.b(1)) / (p.b(3) - p.b(2));
    if (std::abs(s - 1.0) <= 1e-12 || std::abs(s + 1.0) <= 1e-12)
      throw RegimeUnsupported("|b3-b1| = |b3-b2| with b3-b1 = +-(b3-b2)");
    if (!((p.a(2) - p.a(1)).real() > -1.0 + int_tol))
      throw RegimeUnsupported("equal-modulus regime needs Re(alpha2-alpha1) > -1");
    return;  // ModulusEqual regime
  }
  throw RegimeUnsupported("|b3-b1| > |b3-b2| is outside the supported regimes");
}

inline Regime regime_of(const Parameters& p) {
  const double m31 = std::abs(p.b(3) - p.b(1));
  const double m32 = std::abs(p.b(3) - p.b(2));
  return (std::abs(m31 - m32) <= kModulusEqTol * m32) ? Regime::ModulusEqual
                                                      : Regime::ModulusLess;
}

// Case classification driving every downstream branch. The excluded
// combination has no non-logarithmic closed form.
inline CaseTag classify(const Parameters& p, double int_tol = kIntTol) {
  validate_parameters(p, int_tol);
  CaseTag t;
  const Complex d21 = p.a(2) - p.a(1);
  const Complex d32 = p.a(3) - p.a(2);
  const Complex d31 = p.a(3) - p.a(1);
  if (is_integer_leq(d21, -2, int_tol)) t.pair12 = PairCase::IntLeMinus2;
  if (is_integer_leq(d32, -2, int_tol)) t.pair23 = PairCase::IntLeMinus2;
  if (is_integer_leq(d31, -4, int_tol)) t.triple13 = TripleCase::IntLeMinus4;
  t.excluded = t.triple13 == TripleCase::Generic && is_integer_geq(d32, -1, int_tol) &&
               !is_integer_leq(d21, -2, int_tol);
  t.regime = regime_of(p);
  return t;
}

// The three candidate singular directions, reduced to [0, 2pi).
// index 0: arg(b1-b2), 1: arg(b1-b3), 2: arg(b2-b3).
inline std::array<double, 3> singular_directions(const Parameters& p) {
  return {arg_mod_2pi(std::arg(p.b(1) - p.b(2))), arg_mod_2pi(std::arg(p.b(1) - p.b(3))),
          arg_mod_2pi(std::arg(p.b(2) - p.b(3)))};
}

// diag of e^{2 pi i Lambda}
inline std::array<Complex, 3> formal_monodromy(const Parameters& p) {
  return {std::exp(kTwoPi * kI * p.a(1)), std::exp(kTwoPi * kI * p.a(2)),
          std::exp(kTwoPi * kI * p.a(3))};
}

// Characteristic exponents of the regular point x = infinity.
inline std::array<Complex, 3> exponents_at_infinity(const Parameters& p) {
  return {-p.a(1), -p.a(2) - 1.0, -p.a(3) - 2.0};
}

}  // namespace stokes
