#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "stokes/borel.hpp"
#include "stokes/complex_util.hpp"
#include "stokes/errors.hpp"
#include "stokes/formal_model.hpp"
#include "stokes/matrix3.hpp"
#include "stokes/parameters.hpp"
#include "stokes/quadrature.hpp"

namespace stokes {

struct EngineOptions {
  double tol_quad = 1e-10;
  double delta_min = 1e-3;   // ray-to-branch-direction margin (rad)
  double delta_cone = 1e-2;  // convergence cone margin (rad)
  double int_tol = kIntTol;
  std::size_t max_panels = 6000;
};

struct OneSumValue {
  Complex value{0.0, 0.0};
  double theta = 0.0;
  double est_error = 0.0;
};

// (L_theta f)(x) = int_0^{inf e^{i theta}} f(zeta) e^{-zeta/x} d(zeta/x).
inline OneSumValue laplace_ray(const BorelIntegrand& f, Ray ray, LogPoint x,
                               const EngineOptions& opt = {}) {
  const double theta = ray.theta;
  if (std::abs(theta - x.arg()) > kPi / 2.0 - opt.delta_cone)
    throw ConvergenceConeViolation("laplace_ray: Re(e^{i theta}/x) margin violated");
  for (const Complex& bp : f.branch_points()) {
    if (dir_distance(theta, std::arg(bp)) < opt.delta_min)
      throw RayTooCloseToSingular("laplace_ray: ray within delta_min of a branch direction");
  }

  const Complex w = std::exp(Complex(0.0, theta) - x.logx);  // e^{i theta}/x
  const double B = w.real();
  // decay horizon: e^{-B T} (1+T/r_min)^P <= 0.05 * tol
  double r_min = 1e300;
  std::vector<double> seeds;
  for (const Complex& bp : f.branch_points()) {
    const double r = std::abs(bp);
    r_min = std::min(r_min, r);
    seeds.insert(seeds.end(), {0.7 * r, 0.95 * r, r, 1.05 * r, 1.4 * r});
  }
  if (r_min > 1e299) r_min = 1.0;
  const double P = f.growth_exponent();
  const double C0 = std::max(1.0, std::abs(f.prefactor));
  double T = (std::log(20.0 * C0 / opt.tol_quad) + 5.0) / B;
  for (int it = 0; it < 4; ++it)
    T = (std::log(20.0 * C0 / opt.tol_quad) + 5.0 + P * std::log1p(T / r_min)) / B;
  seeds.push_back(T / 16.0);

  RayEvaluator eval(f, theta, opt.int_tol);
  if (auto tc = eval.cut_crossing(); tc && *tc < T)
    seeds.insert(seeds.end(), {0.95 * *tc, *tc, 1.05 * *tc});
  seeds.erase(std::remove_if(seeds.begin(), seeds.end(),
                             [T](double s) { return s <= 0.0 || s >= T; }),
              seeds.end());

  const auto integrand = [&](double t) { return eval(t) * std::exp(-t * w); };
  const QuadResult q =
      integrate_adaptive(integrand, 0.0, T, seeds, opt.tol_quad, opt.tol_quad, opt.max_panels);
  // the d(zeta/x) measure: multiply by e^{i theta}/x
  OneSumValue r;
  r.value = q.value * w;
  r.theta = theta;
  r.est_error = (q.est_error + 0.05 * opt.tol_quad) * std::abs(w);
  return r;
}

namespace detail {

inline BorelIntegrand binom_kernel(Complex base, Complex expo) {
  BorelIntegrand f;
  f.binomials.push_back({base, expo});
  return f;
}

// Borel function of the Lemma psi1 s-series (the w-part):
//   (b3-b1)/(b1-b2) (1+xi/(b3-b2))^{a2-a3-2} 2F1(1, 2+a2-a1; a2-a3-1; u),
//   u = (xi + (b3-b2))/(b1-b2).
inline BorelIntegrand psi_g_kernel(const Parameters& p) {
  BorelIntegrand f;
  f.prefactor = (p.b(3) - p.b(1)) / (p.b(1) - p.b(2));
  f.binomials.push_back({p.b(3) - p.b(2), p.a(2) - p.a(3) - 2.0});
  f.hyp = HypFactor{HypParams{1.0, 2.0 + p.a(2) - p.a(1), p.a(2) - p.a(3) - 1.0},
                    p.b(3) - p.b(2), p.b(1) - p.b(2)};
  return f;
}

}  // namespace detail

// 1-sum of phi_hat_{ij} along the ray; exact finite evaluation in the
// polynomial case.
inline OneSumValue phi_sum(int i, int j, Ray ray, LogPoint x, const Parameters& p,
                           const EngineOptions& opt = {}) {
  if (is_integer_leq(p.a(j) - p.a(i), -2, opt.int_tol)) {
    const FormalSeries s = phi_hat(i, j, p, kDefaultTruncation, opt.int_tol);
    return {s.eval(x.value()), ray.theta, 0.0};
  }
  return laplace_ray(detail::binom_kernel(p.b(j) - p.b(i), p.a(i) - p.a(j) - 2.0), ray, x, opt);
}

// 1-sum of S0 (the upsilon series), kernel (1+nu/(b3-b1))^{a1-a3-4}.
inline OneSumValue upsilon_sum(Ray ray, LogPoint x, const Parameters& p,
                               const EngineOptions& opt = {}) {
  return laplace_ray(detail::binom_kernel(p.b(3) - p.b(1), p.a(1) - p.a(3) - 4.0), ray, x, opt);
}

// 1-sum of the a_n-series (Lemma psi1 / psi2 families). ray3 carries the
// (b3-b2)-type kernels, ray2 the (b3-b1)-type kernel.
//
// triple13 generic: psi_theta = L_{ray3}[g] - K L_{ray2}[(1+nu/(b3-b1))^{a1-a3-4}]
// with the connection constant K calibrated from the germ, K = g(0) - a_0.
// triple13 integer: the two-integral form of the phi-hat-tilde family.
inline OneSumValue psi_sum(const Parameters& p, Ray ray2, Ray ray3, LogPoint x,
                           const EngineOptions& opt = {}) {
  const CaseTag tag = classify(p, opt.int_tol);
  if (tag.excluded) throw ExcludedCase("psi_sum: excluded parameter case");

  if (tag.triple13 == TripleCase::Generic) {
    if (tag.pair23 == PairCase::IntLeMinus2) {
      // convergent case: the a-series is the exact polynomial
      const long sig = to_integer(p.a(2) - p.a(3)) - 2;
      const auto a = detail::a_coeffs_generic(p, sig, opt.int_tol);
      Complex v = 0.0, xn{1.0, 0.0};
      const Complex xv = x.value();
      for (const Complex& an : a) {
        v += an * xn;
        xn *= xv;
      }
      return {v, ray3.theta, 0.0};
    }
    const BorelIntegrand g = detail::psi_g_kernel(p);
    const Complex a0 = F_n(p, 0, opt.int_tol) - 1.0;
    const Complex K = g.at_zero(opt.int_tol) - a0;
    const OneSumValue vg = laplace_ray(g, ray3, x, opt);
    const OneSumValue vu = upsilon_sum(ray2, x, p, opt);
    return {vg.value - K * vu.value, ray3.theta,
            vg.est_error + std::abs(K) * vu.est_error};
  }

  // alpha3 - alpha1 = -A, A >= 4: the phi-tilde family (Lemma psi2 shape)
  if (is_integer_geq(p.a(2) - p.a(1), -1, opt.int_tol)) {
    // the a-series terminates; its 1-sum is the exact polynomial
    const long sig = std::max<long>(to_integer(p.a(2) - p.a(1)), 0);
    const auto a = detail::a_coeffs_tilde(p, sig, opt.int_tol);
    Complex poly = 0.0, xn{1.0, 0.0};
    const Complex xv = x.value();
    for (const Complex& an : a) {
      poly += an * xn;
      xn *= xv;
    }
    return {poly, ray2.theta, 0.0};
  }
  // two-integral form
  const Complex F0t = F_tilde_n(p, 0, opt.int_tol);
  BorelIntegrand j2 = detail::binom_kernel(p.b(3) - p.b(2), 1.0 + p.a(2) - p.a(1));
  j2.binomials.push_back({p.b(3) - p.b(1), -1.0});
  const OneSumValue v1 = laplace_ray(detail::binom_kernel(p.b(3) - p.b(1), -1.0), ray2, x, opt);
  const OneSumValue v2 = laplace_ray(j2, ray3, x, opt);
  return {F0t * v1.value - v2.value, ray3.theta,
          std::abs(F0t) * v1.est_error + v2.est_error};
}

// The H13 entry numerator: psi(x) with H13 = x^4 psi /((b3-b2)(b3-b1)).
inline Complex phi13_sum(const Parameters& p, Ray ray2, Ray ray3, LogPoint x,
                         const EngineOptions& opt = {}) {
  const CaseTag tag = classify(p, opt.int_tol);
  if (tag.excluded) throw ExcludedCase("phi13_sum: excluded parameter case");
  const Complex xv = x.value();

  if (tag.triple13 == TripleCase::Generic) {
    const Complex F0 = F_n(p, 0, opt.int_tol);
    const OneSumValue ups = upsilon_sum(ray2, x, p, opt);
    return F0 * ups.value - psi_sum(p, ray2, ray3, x, opt).value;
  }

  const long A = to_integer(p.a(1) - p.a(3));
  const auto poly = detail::double_sum_poly(p, A);
  Complex v = 0.0, xn{1.0, 0.0};
  for (const Complex& c : poly) {
    v += c * xn;
    xn *= xv;
  }
  if (tag.pair12 == PairCase::IntLeMinus2 && tag.pair23 == PairCase::IntLeMinus2)
    return v;  // exact finite double sum, no integrals

  const Complex bA3 =
      rising_factorial(2.0 + p.a(3) - p.a(2), A - 3) * ipow(-1.0 / (p.b(3) - p.b(2)), A - 3);
  const Complex xA3 = x.pow(Complex(static_cast<double>(A - 3)));
  if (is_integer_geq(p.a(2) - p.a(1), -1, opt.int_tol)) {
    // F~(0) S0~ - polynomial tail
    const Complex F0t = F_tilde_n(p, 0, opt.int_tol);
    const OneSumValue j1 = laplace_ray(detail::binom_kernel(p.b(3) - p.b(1), -1.0), ray2, x, opt);
    const long sig = std::max<long>(to_integer(p.a(2) - p.a(1)), 0);
    const auto a = detail::a_coeffs_tilde(p, sig, opt.int_tol);
    Complex polyt = 0.0, xk{1.0, 0.0};
    for (const Complex& an : a) {
      polyt += an * xk;
      xk *= xv;
    }
    return v + xA3 * bA3 * (F0t * j1.value - polyt);
  }
  // remaining cases collapse to the single two-binomial integral
  BorelIntegrand j2 = detail::binom_kernel(p.b(3) - p.b(2), 1.0 + p.a(2) - p.a(1));
  j2.binomials.push_back({p.b(3) - p.b(1), -1.0});
  const OneSumValue v2 = laplace_ray(j2, ray3, x, opt);
  return v + xA3 * bA3 * v2.value;
}

// Assembled lateral fundamental matrix Phi_theta(x) = H_theta(x) x^Lambda e^{-Q/x}.
// rays[0] feeds the (1,2) entry, rays[1]/rays[2] the (1,3) entry pieces and
// rays[2] the (2,3) entry. Phi_{theta+2pi}(x e^{2pi i}) = Phi_theta(x) M^ holds
// by the surface-arg conventions.
inline Matrix3 actual_fundamental(const Parameters& p, const std::array<Ray, 3>& rays, LogPoint x,
                                  const EngineOptions& opt = {}) {
  const Complex x2 = x.pow(2.0);
  const Complex h12 = x2 * phi_sum(1, 2, rays[0], x, p, opt).value / (p.b(2) - p.b(1));
  const Complex h23 = x2 * phi_sum(2, 3, rays[2], x, p, opt).value / (p.b(3) - p.b(2));
  const Complex h13 = x.pow(4.0) * phi13_sum(p, rays[1], rays[2], x, opt) /
                      ((p.b(3) - p.b(2)) * (p.b(3) - p.b(1)));
  Matrix3 H = Matrix3::identity();
  H(0, 1) = h12;
  H(1, 2) = h23;
  H(0, 2) = h13;
  const Complex xinv = x.inv();
  const Matrix3 D = Matrix3::diag(x.pow(p.a(1)) * std::exp(-p.b(1) * xinv),
                                  x.pow(p.a(2)) * std::exp(-p.b(2) * xinv),
                                  x.pow(p.a(3)) * std::exp(-p.b(3) * xinv));
  return H * D;
}

}  // namespace stokes
