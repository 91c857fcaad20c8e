#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "stokes/complex_util.hpp"
#include "stokes/errors.hpp"
#include "stokes/gamma.hpp"
#include "stokes/hyp2f1.hpp"

namespace stokes {

// Direction on the Riemann surface of log (not reduced mod 2pi).
struct Ray {
  double theta;
};

// (1 + xi/base)^expo, principal branch. Its cut runs radially from -base,
// so it is automatically the correct continuation along every ray from 0.
struct BinomialFactor {
  Complex base;
  Complex expo;
};

// 2F1(a,b;c; u(xi)) with u = (xi + s0)/s1. Branch point where u = 1,
// i.e. xi = s1 - s0; the principal cut u in [1,inf) maps to a non-radial
// half-line, so rays may cross it and need the monodromy correction.
struct HypFactor {
  HypParams p;
  Complex s0, s1;

  Complex u1_point() const { return s1 - s0; }  // xi with u(xi) = 1
};

// Borel-plane function: prefactor * prod binomials * optional hyp factor.
struct BorelIntegrand {
  Complex prefactor{1.0, 0.0};
  std::vector<BinomialFactor> binomials;
  std::optional<HypFactor> hyp;

  // branch points in the xi-plane
  std::vector<Complex> branch_points() const {
    std::vector<Complex> r;
    for (const auto& b : binomials)
      if (!is_integer_geq(b.expo, 0)) r.push_back(-b.base);
    if (hyp) r.push_back(hyp->u1_point());
    return r;
  }

  // value of the germ at xi = 0 (principal determinations)
  Complex at_zero(double int_tol = kIntTol) const {
    Complex v = prefactor;
    if (hyp) v *= hyp2f1(hyp->p, hyp->s0 / hyp->s1, int_tol);
    return v;
  }

  // Crude modulus bound along a ray: |f(t e^{i theta})| <= growth_C * (1+t/r)^P.
  double growth_exponent() const {
    double P = 0.0;
    for (const auto& b : binomials) P += std::max(b.expo.real(), 0.0) + std::abs(b.expo.imag());
    if (hyp) P += 4.0;  // 2F1 grows at most polynomially of low degree off its cut
    return P;
  }
};

// Evaluator of the analytic continuation of a BorelIntegrand germ along one
// ray, handling the crossing of the hyp factor's conventional cut. The
// correction past the crossing adds the u=1 monodromy term
//   A2 (e^{sigma 2 pi i e1} - 1) (1-u)^{e1} 2F1(c-a, c-b; e1+1; 1-u),
// e1 = c-a-b, sigma the crossing orientation.
class RayEvaluator {
 public:
  RayEvaluator(const BorelIntegrand& f, double theta, double int_tol = kIntTol)
      : f_(f), dir_(std::exp(kI * theta)), int_tol_(int_tol) {
    if (!f.hyp) return;
    const HypFactor& h = *f.hyp;
    const Complex a = h.p.a, b = h.p.b, c = h.p.c;
    // terminating hyp factors are entire: no cut, no correction
    if (is_nonpos_integer(a, int_tol) || is_nonpos_integer(b, int_tol)) return;
    const Complex u0 = h.s0 / h.s1;
    const Complex du = dir_ / h.s1;
    if (std::abs(du.imag()) < 1e-300) return;  // ray parallel to the cut line
    const double ts = -u0.imag() / du.imag();
    if (ts <= 0.0) return;
    const double ur = u0.real() + ts * du.real();
    if (ur <= 1.0) return;  // crosses the real axis left of the branch point
    t_cross_ = ts;
    const double sigma = du.imag() > 0.0 ? 1.0 : -1.0;
    const Complex e1 = c - a - b;
    if (is_integer(e1, int_tol))
      throw LogarithmicCase("RayEvaluator: integer exponent at the hyp branch point");
    const Complex A2 = gamma(c, int_tol) * gamma(a + b - c, int_tol) *
                       recip_gamma(a, int_tol) * recip_gamma(b, int_tol);
    corr_coef_ = A2 * (std::exp(sigma * kTwoPi * kI * e1) - 1.0);
    e1_ = e1;
  }

  Complex operator()(double t) const {
    const Complex xi = t * dir_;
    Complex v = f_.prefactor;
    for (const auto& b : f_.binomials) v *= cpow(1.0 + xi / b.base, b.expo);
    if (f_.hyp) {
      const HypFactor& h = *f_.hyp;
      const Complex u = (xi + h.s0) / h.s1;
      Complex hv = hyp2f1(h.p, u, int_tol_);
      if (t_cross_ && t > *t_cross_)
        hv += corr_coef_ * cpow(1.0 - u, e1_) *
              hyp2f1(h.p.c - h.p.a, h.p.c - h.p.b, e1_ + 1.0, 1.0 - u, int_tol_);
      v *= hv;
    }
    return v;
  }

  std::optional<double> cut_crossing() const { return t_cross_; }

 private:
  BorelIntegrand f_;
  Complex dir_;
  double int_tol_;
  std::optional<double> t_cross_;
  Complex corr_coef_{0.0, 0.0};
  Complex e1_{0.0, 0.0};
};

}  // namespace stokes
