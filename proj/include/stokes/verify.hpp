#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "stokes/complex_util.hpp"
#include "stokes/errors.hpp"
#include "stokes/laplace.hpp"
#include "stokes/parameters.hpp"
#include "stokes/stokes_matrices.hpp"

namespace stokes {

// ---------------------------------------------------------------------------
// jump measurement

struct JumpMeasurement {
  double theta_sing = 0.0;
  double epsilon = 0.0;
  std::vector<Complex> samples;  // the x values used
  Complex measured_mu{0.0, 0.0};
  double residual = 0.0;
};

// measured_mu = mean over xs of (f_{theta-eps}(x) - f_{theta+eps}(x)) / (x^c e^{-b/x})
template <class Family>
JumpMeasurement measure_jump(Family&& family, double theta_sing, Complex basis_c, Complex basis_b,
                             double eps, const std::vector<LogPoint>& xs) {
  JumpMeasurement m;
  m.theta_sing = theta_sing;
  m.epsilon = eps;
  std::vector<Complex> mus;
  for (const LogPoint& x : xs) {
    const Complex basis = x.pow(basis_c) * std::exp(-basis_b * x.inv());
    if (std::abs(basis) < 1e-280) throw IllConditioned("measure_jump: basis underflow");
    const Complex lo = family(theta_sing - eps, x);
    const Complex hi = family(theta_sing + eps, x);
    mus.push_back((lo - hi) / basis);
    m.samples.push_back(x.value());
  }
  Complex mean = 0.0;
  for (const Complex& v : mus) mean += v;
  mean /= static_cast<double>(mus.size());
  m.measured_mu = mean;
  double dev = 0.0;
  for (const Complex& v : mus) dev = std::max(dev, std::abs(v - mean));
  m.residual = std::abs(mean) > 1e-8 ? dev / std::abs(mean) : dev;
  return m;
}

// Sample moduli keeping Re((basis_b)/x) in a band where the exponentially
// small jump stays far above quadrature noise.
inline std::vector<LogPoint> jump_sample_points(double theta, double basis_abs, int n = 5) {
  std::vector<LogPoint> xs;
  for (int k = 0; k < n; ++k) {
    const double expo = 4.5 + 3.0 * static_cast<double>(k) / std::max(1, n - 1);
    xs.push_back(LogPoint::from_polar(basis_abs / expo, theta));
  }
  return xs;
}

// ---------------------------------------------------------------------------
// closed form vs measured Stokes matrices

struct DirectionCheck {
  double theta = 0.0;
  Complex mu_closed{0.0, 0.0};
  Complex mu_measured{0.0, 0.0};
  double rel_err = 0.0;      // relative when |mu_closed| > 0, absolute otherwise
  double off_entry_max = 0.0;  // max |measured| over entries that must vanish
  bool pass = false;
};

struct StokesCheckReport {
  std::array<DirectionCheck, 3> dir;  // theta1, theta2, theta3
  bool pass = false;
};

namespace detail {

struct HEntries {
  Complex h12, h23, h13;
};

inline HEntries lateral_H(const Parameters& p, double theta, LogPoint x,
                          const EngineOptions& opt) {
  HEntries h;
  const Complex x2 = x.pow(2.0);
  h.h12 = x2 * phi_sum(1, 2, Ray{theta}, x, p, opt).value / (p.b(2) - p.b(1));
  h.h23 = x2 * phi_sum(2, 3, Ray{theta}, x, p, opt).value / (p.b(3) - p.b(2));
  h.h13 = x.pow(4.0) * phi13_sum(p, Ray{theta}, Ray{theta}, x, opt) /
          ((p.b(3) - p.b(2)) * (p.b(3) - p.b(1)));
  return h;
}

}  // namespace detail

// Measures St_theta = (Phi^+)^{-1} Phi^- entrywise at several x per singular
// direction and compares against the closed forms. Entries whose own singular
// set excludes the crossed direction are evaluated once and shared between
// the two laterals (they continue analytically across it), which keeps the
// exponential amplification off the quadrature noise.
inline StokesCheckReport check_stokes(const Parameters& p, double tol,
                                      const EngineOptions& opt = {}, double eps = 0.05,
                                      int n_samples = 5) {
  const CaseTag tag = classify(p, opt.int_tol);
  const StokesData closed = stokes_matrices(p, opt.int_tol);
  const auto dirs = singular_directions(p);
  StokesCheckReport rep;

  for (int k = 0; k < 3; ++k) {
    const double th = dirs[static_cast<std::size_t>(k)];
    const Complex basis_b = k == 0 ? p.b(2) - p.b(1) : (k == 1 ? p.b(3) - p.b(1) : p.b(3) - p.b(2));
    const auto xs = jump_sample_points(th, std::abs(basis_b), n_samples);
    DirectionCheck& dc = rep.dir[static_cast<std::size_t>(k)];
    dc.theta = th;
    dc.mu_closed = k == 0 ? closed.mu1 : (k == 1 ? closed.mu2 : closed.mu3);

    Complex mu_acc = 0.0;
    double off_max = 0.0;
    for (const LogPoint& x : xs) {
      const double lo = th - eps, hi = th + eps;
      detail::HEntries minus, plus;
      const Complex xv = x.value();
      const Complex xinv = x.inv();
      if (k == 0) {
        const detail::HEntries shared = detail::lateral_H(p, hi, x, opt);
        minus = plus = shared;
        minus.h12 = x.pow(2.0) * phi_sum(1, 2, Ray{lo}, x, p, opt).value / (p.b(2) - p.b(1));
      } else if (k == 1) {
        const detail::HEntries shared = detail::lateral_H(p, hi, x, opt);
        minus = plus = shared;
        minus.h13 = x.pow(4.0) * phi13_sum(p, Ray{lo}, Ray{lo}, x, opt) /
                    ((p.b(3) - p.b(2)) * (p.b(3) - p.b(1)));
      } else {
        plus = detail::lateral_H(p, hi, x, opt);
        minus = plus;
        minus.h23 = x.pow(2.0) * phi_sum(2, 3, Ray{lo}, x, p, opt).value / (p.b(3) - p.b(2));
        minus.h13 = x.pow(4.0) * phi13_sum(p, Ray{lo}, Ray{lo}, x, opt) /
                    ((p.b(3) - p.b(2)) * (p.b(3) - p.b(1)));
      }
      // St = I + D^{-1} (H+)^{-1} (H- - H+) D, unit-upper-triangular algebra
      const Complex d12 = minus.h12 - plus.h12;
      const Complex d23 = minus.h23 - plus.h23;
      const Complex d13 = minus.h13 - plus.h13;
      const Complex amp12 = x.pow(p.a(2) - p.a(1)) * std::exp(-(p.b(2) - p.b(1)) * xinv);
      const Complex amp23 = x.pow(p.a(3) - p.a(2)) * std::exp(-(p.b(3) - p.b(2)) * xinv);
      const Complex amp13 = x.pow(p.a(3) - p.a(1)) * std::exp(-(p.b(3) - p.b(1)) * xinv);
      const Complex st12 = d12 * amp12;
      const Complex st23 = d23 * amp23;
      const Complex st13 = (d13 - plus.h12 * d23) * amp13;
      (void)xv;
      if (k == 0) {
        mu_acc += st12;
        off_max = std::max({off_max, std::abs(st23), std::abs(st13)});
      } else if (k == 1) {
        mu_acc += st13;
        off_max = std::max({off_max, std::abs(st12), std::abs(st23)});
      } else {
        mu_acc += st23;
        off_max = std::max({off_max, std::abs(st12), std::abs(st13)});
      }
    }
    dc.mu_measured = mu_acc / static_cast<double>(xs.size());
    dc.off_entry_max = off_max;
    const double diff = std::abs(dc.mu_measured - dc.mu_closed);
    dc.rel_err = std::abs(dc.mu_closed) > 1e-9 ? diff / std::abs(dc.mu_closed) : diff;
    dc.pass = dc.rel_err <= (std::abs(dc.mu_closed) > 1e-9 ? tol : 1e-9);
    (void)tag;
  }
  rep.pass = rep.dir[0].pass && rep.dir[1].pass && rep.dir[2].pass;
  return rep;
}

// ---------------------------------------------------------------------------
// section-6 product summation

namespace detail {

// mirror of psi_g_kernel with the (1,2) pair carrying the binomial:
//   (b3-b1)/(b2-b3) (1+xi/(b2-b1))^{a1-a2-2} 2F1(1, 2+a3-a2; a1-a2-1; u),
//   u = (xi + (b2-b1))/(b2-b3).
inline BorelIntegrand omega_g3_kernel(const Parameters& p) {
  BorelIntegrand f;
  f.prefactor = (p.b(3) - p.b(1)) / (p.b(2) - p.b(3));
  f.binomials.push_back({p.b(2) - p.b(1), p.a(1) - p.a(2) - 2.0});
  f.hyp = HypFactor{HypParams{1.0, 2.0 + p.a(3) - p.a(2), p.a(1) - p.a(2) - 1.0},
                    p.b(2) - p.b(1), p.b(2) - p.b(3)};
  return f;
}

inline void omega_check_moduli(const Parameters& p) {
  const double m31 = std::abs(p.b(3) - p.b(1));
  if (!(m31 < std::abs(p.b(3) - p.b(2)) && m31 < std::abs(p.b(2) - p.b(1))))
    throw HypothesisViolated("omega_sum: needs |b3-b1| < |b3-b2| and |b3-b1| < |b2-b1|");
}

}  // namespace detail

// 1-sum of omega^ = omega1^ * omega2^. rays[0] feeds the (b2-b1)-kernels,
// rays[1] the (b3-b1)-kernel, rays[2] the (b3-b2)-kernels.
inline Complex omega_sum(const Parameters& p, const std::array<Ray, 3>& rays, LogPoint x,
                         const EngineOptions& opt = {}) {
  detail::omega_check_moduli(p);
  const Complex d21 = p.a(2) - p.a(1);
  const Complex d32 = p.a(3) - p.a(2);
  const Complex d31 = p.a(3) - p.a(1);

  if (!is_integer_leq(d31, -4, opt.int_tol)) {
    if (is_integer(d21, opt.int_tol) || is_integer(d32, opt.int_tol))
      throw HypothesisViolated("omega_sum: needs alpha2-alpha1 and alpha3-alpha2 non-integer");
    const Complex F0 = F_n(p, 0, opt.int_tol);
    const Complex W0 = hyp2f1(Complex(1.0), 2.0 + d21, 4.0 + d31,
                              (p.b(3) - p.b(1)) / (p.b(2) - p.b(1)), opt.int_tol);
    const BorelIntegrand g2 = detail::psi_g_kernel(p);
    const BorelIntegrand g3 = detail::omega_g3_kernel(p);
    const Complex K2 = g2.at_zero(opt.int_tol) - (F0 - 1.0);
    const Complex K3 = g3.at_zero(opt.int_tol) - (W0 - 1.0);
    const Complex ups = upsilon_sum(rays[1], x, p, opt).value;
    const Complex psi_th = laplace_ray(g2, rays[2], x, opt).value - K2 * ups;
    const Complex phi_th = laplace_ray(g3, rays[0], x, opt).value - K3 * ups;
    return ((p.b(2) - p.b(1)) * (F0 * ups - psi_th) - (p.b(3) - p.b(2)) * phi_th +
            (p.b(3) - p.b(2)) * W0 * ups) /
           (p.b(3) - p.b(1));
  }

  // alpha3-alpha1 = -A in Z<=-4 (two-binomial variant)
  if (is_integer_leq(d21, -2, opt.int_tol) || is_integer_leq(d32, -2, opt.int_tol))
    throw HypothesisViolated(
        "omega_sum: integer-case variant needs alpha2-alpha1, alpha3-alpha2 not in Z<=-2");
  const long A = to_integer(p.a(1) - p.a(3));
  const Complex db21 = p.b(2) - p.b(1);
  const Complex db32 = p.b(3) - p.b(2);
  const Complex db31 = p.b(3) - p.b(1);
  const Complex xv = x.value();
  // b_l from the omega2 family, c_l from the omega1 family
  std::vector<Complex> bl(static_cast<std::size_t>(A - 2)), cl(static_cast<std::size_t>(A - 2));
  bl[0] = cl[0] = 1.0;
  for (long n = 1; n <= A - 3; ++n) {
    bl[static_cast<std::size_t>(n)] = -bl[static_cast<std::size_t>(n - 1)] *
                                      (2.0 + d32 + Complex(static_cast<double>(n - 1))) / db32;
    cl[static_cast<std::size_t>(n)] = -cl[static_cast<std::size_t>(n - 1)] *
                                      (2.0 + d21 + Complex(static_cast<double>(n - 1))) / db21;
  }
  Complex tot = 0.0;
  for (long l = 0; l <= A - 4; ++l) {
    Complex inner{1.0, 0.0};
    Complex xls = x.pow(Complex(static_cast<double>(l)));
    for (long s = 0; s <= A - 4 - l; ++s) {
      if (s > 0) {
        inner *= -(4.0 + static_cast<double>(l + s - 1) + d31) / db31;
        xls *= xv;
      }
      tot += (db21 * bl[static_cast<std::size_t>(l)] + db32 * cl[static_cast<std::size_t>(l)]) *
             inner * xls;
    }
  }
  BorelIntegrand j1 = detail::binom_kernel(db32, 1.0 + d21);
  j1.binomials.push_back({db31, -1.0});
  BorelIntegrand j2 = detail::binom_kernel(db21, 1.0 + d32);
  j2.binomials.push_back({db31, -1.0});
  const Complex v1 = laplace_ray(j1, rays[2], x, opt).value;
  const Complex v2 = laplace_ray(j2, rays[0], x, opt).value;
  tot += x.pow(Complex(static_cast<double>(A - 3))) *
         (bl[static_cast<std::size_t>(A - 3)] * db21 * v1 +
          cl[static_cast<std::size_t>(A - 3)] * db32 * v2);
  return tot / db31;
}

// Brute-force route: Borel convolution on the straight segment, then Laplace.
// The convolution equals the Borel transform of x*omega^, so the 1-sum is the
// Laplace integral divided by x.
inline Complex convolution_oracle(const Parameters& p, double theta, LogPoint x,
                                  double tol = 1e-7, const EngineOptions& opt_in = {}) {
  EngineOptions opt = opt_in;
  opt.tol_quad = tol * 0.02;
  const Complex db21 = p.b(2) - p.b(1);
  const Complex db32 = p.b(3) - p.b(2);
  const Complex e1 = p.a(1) - p.a(2) - 2.0;
  const Complex e2 = p.a(2) - p.a(3) - 2.0;
  const Complex dir = std::exp(kI * theta);

  const auto conv = [&](double t) -> Complex {
    const Complex xi = t * dir;
    const auto f = [&](double s) {
      return cpow(1.0 + s * xi / db21, e1) * cpow(1.0 + (1.0 - s) * xi / db32, e2);
    };
    // panel seeds where the factors pass nearest their branch points
    std::vector<double> seeds;
    const double s1 = std::abs(db21) / t;
    const double s2 = 1.0 - std::abs(db32) / t;
    for (double s : {s1, s2})
      if (s > 0.0 && s < 1.0) seeds.insert(seeds.end(), {0.9 * s, s, std::min(1.0, 1.1 * s)});
    seeds.push_back(0.5);
    QuadResult q;
    try {
      q = integrate_adaptive(f, 0.0, 1.0, seeds, opt.tol_quad, opt.tol_quad, opt.max_panels);
    } catch (const QuadratureFailure&) {
      throw GridTooCoarse("convolution_oracle: inner grid tolerance not met");
    }
    return q.value * xi;
  };

  // outer Laplace along theta with margins against all three branch directions
  for (const Complex bp : {p.b(1) - p.b(2), p.b(2) - p.b(3), p.b(1) - p.b(3)}) {
    if (dir_distance(theta, std::arg(bp)) < opt.delta_min)
      throw RayTooCloseToSingular("convolution_oracle: theta too close to a singular direction");
  }
  const Complex w = std::exp(Complex(0.0, theta) - x.logx);
  if (w.real() <= 0.0) throw ConvergenceConeViolation("convolution_oracle: cone violated");
  const double B = w.real();
  double T = (std::log(40.0 / opt.tol_quad) + 6.0) / B;
  for (int it = 0; it < 3; ++it)
    T = (std::log(40.0 / opt.tol_quad) + 6.0 + 6.0 * std::log1p(T)) / B;
  std::vector<double> seeds;
  for (const Complex bp : {p.b(1) - p.b(2), p.b(2) - p.b(3), p.b(1) - p.b(3)}) {
    const double r = std::abs(bp);
    if (r < T) seeds.insert(seeds.end(), {0.8 * r, r, 1.25 * r});
  }
  const auto integrand = [&](double t) { return conv(t) * std::exp(-t * w); };
  QuadResult q;
  try {
    q = integrate_adaptive(integrand, 0.0, T, seeds, opt.tol_quad, opt.tol_quad, opt.max_panels);
  } catch (const QuadratureFailure&) {
    throw GridTooCoarse("convolution_oracle: outer grid tolerance not met");
  }
  // d(xi/x) measure, then divide by x (Borel transform of x*omega^)
  return q.value * w / x.value();
}

struct ProductRuleReport {
  Complex product, omega, convolution;
  double rel_omega_vs_product = 0.0;
  double rel_conv_vs_product = 0.0;
  bool pass = false;
};

// S(omega1^ omega2^) = S(omega1^) S(omega2^): compares the product route,
// the closed omega_sum route and the convolution oracle at a common direction.
inline ProductRuleReport check_product_rule(const Parameters& p, double theta, LogPoint x,
                                            double tol, const EngineOptions& opt = {}) {
  ProductRuleReport r;
  const Complex w1 = phi_sum(1, 2, Ray{theta}, x, p, opt).value;
  const Complex w2 = phi_sum(2, 3, Ray{theta}, x, p, opt).value;
  r.product = w1 * w2;
  r.omega = omega_sum(p, {Ray{theta}, Ray{theta}, Ray{theta}}, x, opt);
  r.convolution = convolution_oracle(p, theta, x, std::max(tol * 0.1, 1e-9), opt);
  r.rel_omega_vs_product = std::abs(r.omega - r.product) / std::abs(r.product);
  r.rel_conv_vs_product = std::abs(r.convolution - r.product) / std::abs(r.product);
  r.pass = r.rel_omega_vs_product <= tol && r.rel_conv_vs_product <= tol;
  return r;
}

// ---------------------------------------------------------------------------
// Gevrey asymptotics

struct GevreyCheckRow {
  Complex x;
  long N;
  double lhs, bound;
  bool pass;
};

struct GevreyReport {
  std::vector<GevreyCheckRow> rows;
  bool pass = true;
};

template <class SumFn>
GevreyReport gevrey_check(const FormalSeries& s, SumFn&& sum_fn, double theta,
                          const std::vector<LogPoint>& xs, std::initializer_list<long> Ns = {5, 10, 15}) {
  GevreyReport rep;
  for (const LogPoint& x : xs) {
    const Complex fx = sum_fn(theta, x);
    for (long N : Ns) {
      GevreyCheckRow row;
      row.x = x.value();
      row.N = N;
      row.lhs = std::abs(fx - s.partial(row.x, static_cast<std::size_t>(N)));
      double nfact = 1.0;
      for (long k = 2; k <= N; ++k) nfact *= static_cast<double>(k);
      row.bound = s.gevrey_C * std::pow(s.gevrey_A, static_cast<double>(N)) * nfact *
                  std::pow(x.abs(), static_cast<double>(N));
      row.pass = row.lhs <= row.bound;
      rep.pass = rep.pass && row.pass;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// ODE residual, L = (d - a3)(d - a2)(d - a1), a_j = alpha_j/x + beta_j/x^2

template <class ColumnFn>
double ode_residual(const Parameters& p, ColumnFn&& y, const std::vector<LogPoint>& xs,
                    double h_rel = 1e-3) {
  double worst = 0.0;
  for (const LogPoint& x : xs) {
    const Complex xv = x.value();
    // samples on the half-step grid k * h/2, k = -4..4
    std::array<Complex, 9> u;
    for (int k = -4; k <= 4; ++k) {
      const LogPoint xk{x.logx + std::log(Complex(1.0 + 0.5 * h_rel * static_cast<double>(k)))};
      u[static_cast<std::size_t>(k + 4)] = y(xk);
      if (!std::isfinite(u[static_cast<std::size_t>(k + 4)].real()) ||
          !std::isfinite(u[static_cast<std::size_t>(k + 4)].imag()))
        throw StepUnstable("ode_residual: non-finite sample");
    }
    const Complex half = xv * (0.5 * h_rel);
    const Complex step = xv * h_rel;
    const Complex d1 = (u[2] - 8.0 * u[3] + 8.0 * u[5] - u[6]) / (12.0 * half);
    const Complex d2 =
        (-u[6] + 16.0 * u[5] - 30.0 * u[4] + 16.0 * u[3] - u[2]) / (12.0 * half * half);
    // two central 5-point third-derivative stencils (h and h/2), Richardson
    // combined to cancel the h^2 truncation term
    const Complex d3h = (-u[0] + 2.0 * u[2] - 2.0 * u[6] + u[8]) / (2.0 * step * step * step);
    const Complex d3h2 = (-u[2] + 2.0 * u[3] - 2.0 * u[5] + u[6]) / (2.0 * half * half * half);
    const Complex d3 = (4.0 * d3h2 - d3h) / 3.0;

    const auto a = [&](int j) { return p.a(j) / xv + p.b(j) / (xv * xv); };
    const auto ap = [&](int j) { return -p.a(j) / (xv * xv) - 2.0 * p.b(j) / (xv * xv * xv); };
    const Complex a1 = a(1), a2 = a(2), a3 = a(3);
    const Complex a1p = ap(1), a2p = ap(2);
    const Complex a1pp = 2.0 * p.a(1) / (xv * xv * xv) + 6.0 * p.b(1) / (xv * xv * xv * xv);
    const Complex p2 = -(a1 + a2 + a3);
    const Complex p1 = a1 * a2 + a3 * (a1 + a2) - 2.0 * a1p - a2p;
    const Complex p0 = a1p * a2 + a1 * a2p - a1pp - a3 * (a1 * a2 - a1p);
    const Complex L = d3 + p2 * d2 + p1 * d1 + p0 * u[4];
    const double scale = std::max({std::abs(d3), std::abs(p2 * d2), std::abs(p1 * d1),
                                   std::abs(p0 * u[4])});
    if (scale == 0.0) {
      if (std::abs(L) == 0.0) continue;  // identically zero solution branch
      throw StepUnstable("ode_residual: zero scale");
    }
    worst = std::max(worst, std::abs(L) / scale);
  }
  return worst;
}

}  // namespace stokes
