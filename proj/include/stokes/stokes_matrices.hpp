#pragma once

#include <algorithm>
#include <array>

#include "stokes/complex_util.hpp"
#include "stokes/errors.hpp"
#include "stokes/formal_model.hpp"
#include "stokes/gamma.hpp"
#include "stokes/matrix3.hpp"
#include "stokes/parameters.hpp"

namespace stokes {

// Closed-form Stokes data. The multipliers are written with principal-branch
// powers throughout; in this form a single expression per case is valid on
// both arg half-planes (the measured-jump suite exercises parameter sets on
// each side, including arg(beta-difference) in (-pi, -pi/2]).
struct StokesData {
  double theta1, theta2, theta3;  // arg(b1-b2), arg(b1-b3), arg(b2-b3) in [0, 2pi)
  Complex mu1, mu2, mu3;
  Matrix3 St1, St2, St3;  // St_theta1 (1,2), St_theta2 (1,3), St_theta3 (2,3)
  std::array<Complex, 3> formal_monodromy;
};

namespace detail {

// Power of a beta-difference with its argument taken as the [0, 2pi)
// singular-direction value. The Stokes matrices are normalized against the
// branch (x^Lambda e^{-Q/x}) at arg x = theta in [0, 2pi), and the Hankel
// computation ties the x^e basis and the (beta_i-beta_j)^e factor to the
// same angle sheet.
inline Complex pow_dir(Complex w, Complex expo) {
  return std::exp(expo * Complex(std::log(std::abs(w)), arg_mod_2pi(std::arg(w))));
}

}  // namespace detail

// mu for the (1,2) and (2,3) pairs:
//   mu = 2 pi i / ((b_i-b_j)^{a_i-a_j-1} Gamma(2-a_i+a_j)),
// exactly 0 when a_j-a_i is an integer <= -2 (Gamma pole).
inline Complex mu_pair(int i, int j, const Parameters& p, double int_tol = kIntTol) {
  if (!((i == 1 && j == 2) || (i == 2 && j == 3)))
    throw InvalidParameters("mu_pair: (i,j) must be (1,2) or (2,3)");
  const Complex da = p.a(i) - p.a(j);
  const Complex db = p.b(i) - p.b(j);
  return kTwoPi * kI * recip_gamma(2.0 - da, int_tol) / detail::pow_dir(db, da - 1.0);
}

// The (1,3) multiplier across arg(b1-b3).
inline Complex mu_13(const Parameters& p, const CaseTag& tag, double int_tol = kIntTol) {
  if (tag.excluded) throw ExcludedCase("mu_13: excluded parameter case");
  if (tag.regime == Regime::ModulusEqual) {
    // equal-modulus regime covers only the generic item and the
    // alpha3-alpha1 in Z<=-4 items of the closed-form theorem
    const bool ok = (tag.triple13 == TripleCase::Generic && tag.pair23 == PairCase::Generic &&
                     !is_integer(p.a(3) - p.a(2), int_tol)) ||
                    tag.triple13 == TripleCase::IntLeMinus4;
    if (!ok)
      throw RegimeUnsupported("mu_13: equal-modulus regime outside the covered sub-cases");
  }

  if (tag.triple13 == TripleCase::Generic) {
    // the jump comes entirely from the F(alpha;beta;0) S0 part of H13
    const Complex F0 = F_n(p, 0, int_tol);
    return kTwoPi * kI * F0 * recip_gamma(p.a(3) - p.a(1) + 4.0, int_tol) /
           ((p.b(3) - p.b(2)) * detail::pow_dir(p.b(1) - p.b(3), p.a(1) - p.a(3) - 3.0));
  }

  // alpha3 - alpha1 = -A in Z<=-4
  const bool int12 = tag.pair12 == PairCase::IntLeMinus2;
  const bool int23 = tag.pair23 == PairCase::IntLeMinus2;
  if (int12 && int23) return {0.0, 0.0};  // H13 is a polynomial, no jump
  const bool covered =
      is_integer_geq(p.a(2) - p.a(1), -1, int_tol) || !is_integer(p.a(3) - p.a(2), int_tol);
  if (!covered)
    throw CaseNotCovered("mu_13: alpha3-alpha1 in Z<=-4 with alpha2-alpha1 in Z<=-2 and "
                         "alpha3-alpha2 integer is not covered by the closed forms");
  const long A = to_integer(p.a(1) - p.a(3));
  const Complex bA3 =
      rising_factorial(2.0 + p.a(3) - p.a(2), A - 3) * ipow(-1.0 / (p.b(3) - p.b(2)), A - 3);
  const Complex F0t = cpow((p.b(1) - p.b(2)) / (p.b(3) - p.b(2)), p.a(2) - p.a(1) + 1.0);
  return kTwoPi * kI * bA3 * F0t / (p.b(3) - p.b(2));
}

inline StokesData stokes_matrices(const Parameters& p, double int_tol = kIntTol) {
  const CaseTag tag = classify(p, int_tol);
  if (tag.excluded) throw ExcludedCase("stokes_matrices: excluded parameter case");
  StokesData d{};
  const auto dirs = singular_directions(p);
  d.theta1 = dirs[0];
  d.theta2 = dirs[1];
  d.theta3 = dirs[2];
  d.mu1 = mu_pair(1, 2, p, int_tol);
  d.mu3 = mu_pair(2, 3, p, int_tol);
  d.mu2 = mu_13(p, tag, int_tol);
  d.St1 = Matrix3::identity();
  d.St1(0, 1) = d.mu1;
  d.St2 = Matrix3::identity();
  d.St2(0, 2) = d.mu2;
  d.St3 = Matrix3::identity();
  d.St3(1, 2) = d.mu3;
  d.formal_monodromy = formal_monodromy(p);
  return d;
}

// M^ St_{theta(1)} St_{theta(2)} St_{theta(3)} with the factors ordered by
// increasing singular direction in [0, 2pi).
inline Matrix3 monodromy_product(const StokesData& d) {
  std::array<std::pair<double, const Matrix3*>, 3> fac = {
      std::pair<double, const Matrix3*>{d.theta1, &d.St1},
      std::pair<double, const Matrix3*>{d.theta2, &d.St2},
      std::pair<double, const Matrix3*>{d.theta3, &d.St3}};
  std::sort(fac.begin(), fac.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  Matrix3 m = Matrix3::diag(d.formal_monodromy[0], d.formal_monodromy[1], d.formal_monodromy[2]);
  for (const auto& [th, st] : fac) m = m * (*st);
  return m;
}

}  // namespace stokes
