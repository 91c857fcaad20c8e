#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stokes/verify.hpp"

using namespace stokes;

namespace {

const Parameters kCanonical{{Complex(0.0), Complex(0.25), Complex(-0.5)},
                            {Complex(0.0), Complex(3.0), Complex(1.0, 1.0)}};

double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

EngineOptions tight() {
  EngineOptions o;
  o.tol_quad = 1e-12;
  return o;
}

}  // namespace

TEST_CASE("jump model: (1-eta)^{-1} across theta = 0") {
  BorelIntegrand f;
  f.binomials.push_back({Complex(-1.0), Complex(-1.0)});
  const auto family = [&](double th, LogPoint x) {
    return laplace_ray(f, Ray{th}, x, tight()).value;
  };
  const auto xs = jump_sample_points(0.0, 1.0);
  const JumpMeasurement m = measure_jump(family, 0.0, Complex(-1.0), Complex(1.0), 0.05, xs);
  CHECK(std::abs(m.measured_mu - (-kTwoPi * kI)) / kTwoPi < 1e-9);
  CHECK(m.residual < 1e-8);
}

TEST_CASE("jump model: (1+eta)^{-1} across theta = pi") {
  BorelIntegrand f;
  f.binomials.push_back({Complex(1.0), Complex(-1.0)});
  const auto family = [&](double th, LogPoint x) {
    return laplace_ray(f, Ray{th}, x, tight()).value;
  };
  const auto xs = jump_sample_points(kPi, 1.0);
  const JumpMeasurement m = measure_jump(family, kPi, Complex(-1.0), Complex(-1.0), 0.05, xs);
  CHECK(std::abs(m.measured_mu - kTwoPi * kI) / kTwoPi < 1e-9);
}

TEST_CASE("jump model: entire kernel has no jump") {
  BorelIntegrand f;
  f.binomials.push_back({Complex(-1.0), Complex(3.0)});  // polynomial kernel
  const auto family = [&](double th, LogPoint x) {
    return laplace_ray(f, Ray{th}, x, tight()).value;
  };
  const auto xs = jump_sample_points(0.0, 1.0);
  const JumpMeasurement m = measure_jump(family, 0.0, Complex(-1.0), Complex(1.0), 0.05, xs);
  CHECK(std::abs(m.measured_mu) < 1e-10);
}

TEST_CASE("jump measurement is eps-stable") {
  BorelIntegrand f;
  f.binomials.push_back({Complex(-1.0), Complex(-1.7)});
  const auto family = [&](double th, LogPoint x) {
    return laplace_ray(f, Ray{th}, x, tight()).value;
  };
  const auto xs = jump_sample_points(0.0, 1.0);
  const JumpMeasurement a = measure_jump(family, 0.0, Complex(-1.7), Complex(1.0), 0.05, xs);
  const JumpMeasurement b = measure_jump(family, 0.0, Complex(-1.7), Complex(1.0), 0.025, xs);
  CHECK(std::abs(a.measured_mu - b.measured_mu) < 1e-8 * std::abs(a.measured_mu));
}

TEST_CASE("check_stokes passes for an integer-case parameter set") {
  // alpha = (0, -2, -2): mu1 = 0 exactly, A-m case for mu2
  const Parameters p{{Complex(0.0), Complex(-2.0), Complex(-2.0)}, kCanonical.beta};
  const StokesCheckReport rep = check_stokes(p, 1e-6, tight());
  CHECK(rep.pass);
  // measured jump across theta1 is zero within the absolute gate
  CHECK(std::abs(rep.dir[0].mu_measured) < 1e-9);
}

TEST_CASE("product rule across the three evaluation routes") {
  const double th = 2.0;
  const LogPoint x = LogPoint::from_polar(0.25, th);
  const ProductRuleReport r = check_product_rule(kCanonical, th, x, 1e-5, tight());
  CAPTURE(r.rel_omega_vs_product);
  CAPTURE(r.rel_conv_vs_product);
  CHECK(r.pass);
  // the two independent routes agree much better than the gate
  CHECK(r.rel_omega_vs_product < 1e-8);
}

TEST_CASE("product rule with a trivially convergent factor") {
  // alpha3-alpha2 = -2: omega2^ = 1, the product collapses to phi12's sum;
  // the convolution oracle must reproduce the integration identity
  const Parameters p{{Complex(0.0), Complex(0.25), Complex(-1.75)}, kCanonical.beta};
  const double th = 2.0;
  const LogPoint x = LogPoint::from_polar(0.2, th);
  const Complex w1 = phi_sum(1, 2, Ray{th}, x, p, tight()).value;
  const Complex conv = convolution_oracle(p, th, x, 1e-8, tight());
  CHECK(rel_err(conv, w1) < 1e-6);
}

TEST_CASE("convolution normalization: both exponents zero") {
  // omega1^ = omega2^ = 1: conv(xi) = xi, Laplace d(xi/x) = x, divided by x = 1
  const Parameters p{{Complex(0.0), Complex(-2.0), Complex(-4.0)}, kCanonical.beta};
  const LogPoint x = LogPoint::from_polar(0.2, 2.0);
  CHECK(rel_err(convolution_oracle(p, 2.0, x, 1e-9, tight()), 1.0) < 1e-8);
}

TEST_CASE("omega_sum integer variant equals the product route") {
  const Parameters p{{Complex(0.0), Complex(0.5), Complex(-4.0)}, kCanonical.beta};
  for (double th : {2.0, -0.6}) {
    const LogPoint x = LogPoint::from_polar(0.25, th);
    const Complex om = omega_sum(p, {Ray{th}, Ray{th}, Ray{th}}, x, tight());
    const Complex pr = phi_sum(1, 2, Ray{th}, x, p, tight()).value *
                       phi_sum(2, 3, Ray{th}, x, p, tight()).value;
    CAPTURE(th);
    CHECK(rel_err(om, pr) < 1e-9);
  }
}

TEST_CASE("omega_sum hypothesis gates") {
  // integer alpha differences outside the covered variants
  const Parameters p1{{Complex(0.0), Complex(-2.0), Complex(-2.5)}, kCanonical.beta};
  const LogPoint x = LogPoint::from_polar(0.2, 2.0);
  CHECK_THROWS_AS((void)omega_sum(p1, {Ray{2.0}, Ray{2.0}, Ray{2.0}}, x, tight()),
                  HypothesisViolated);
  // |b3-b1| < |b2-b1| violated
  const Parameters p2{kCanonical.alpha,
                      {Complex(0.0), Complex(0.0, 0.9), Complex(1.0, 1.0)}};
  CHECK_THROWS_AS((void)omega_sum(p2, {Ray{2.0}, Ray{2.0}, Ray{2.0}}, x, tight()),
                  HypothesisViolated);
}

TEST_CASE("W-identity of the product-summation proof") {
  // F(alpha;beta;0) = (b3-b2)/(b1-b2) W(alpha;beta;0)
  const Complex F0 = F_n(kCanonical, 0);
  const Complex W0 =
      hyp2f1(Complex(1.0), 2.0 + kCanonical.a(2) - kCanonical.a(1),
             4.0 + kCanonical.a(3) - kCanonical.a(1),
             (kCanonical.b(3) - kCanonical.b(1)) / (kCanonical.b(2) - kCanonical.b(1)));
  const Complex rhs = (kCanonical.b(3) - kCanonical.b(2)) / (kCanonical.b(1) - kCanonical.b(2)) * W0;
  CHECK(rel_err(F0, rhs) < 1e-10);
}

TEST_CASE("gevrey_check on the canonical phi12") {
  const FormalSeries s = phi_hat(1, 2, kCanonical, 16);
  const auto sum_fn = [&](double th, LogPoint x) {
    return phi_sum(1, 2, Ray{th}, x, kCanonical, tight()).value;
  };
  std::vector<LogPoint> xs{LogPoint::from_polar(0.02, 2.2), LogPoint::from_polar(0.05, 2.2)};
  const GevreyReport rep = gevrey_check(s, sum_fn, 2.2, xs);
  CHECK(rep.pass);
  CHECK(rep.rows.size() == 6);
}

TEST_CASE("gevrey optimal-truncation envelope") {
  // remainder at N* ~ 1/(A|x|) obeys the Stirling envelope with factor-10 slack
  const FormalSeries s = phi_hat(1, 2, kCanonical, 40);
  const double A = s.gevrey_A;
  const double r = 0.05;
  const long Nstar = static_cast<long>(1.0 / (A * r));
  const LogPoint x = LogPoint::from_polar(r, 2.2);
  const Complex f = phi_sum(1, 2, Ray{2.2}, x, kCanonical, tight()).value;
  const double rem = std::abs(f - s.partial(x.value(), static_cast<std::size_t>(Nstar)));
  const double envelope =
      s.gevrey_C * std::exp(0.5 - 1.0 / (A * r)) * std::sqrt(kTwoPi / (A * r));
  CHECK(rem <= 10.0 * envelope);
}

TEST_CASE("ode_residual: exact first column is finite-difference limited") {
  // beta1 != 0 so the column is a nontrivial exact solution
  const Parameters p{{Complex(0.3, 0.1), Complex(-0.5), Complex(0.25)},
                     {Complex(1.0), Complex(2.0), Complex(1.0, 1.5)}};
  const auto col1 = [&](LogPoint x) { return x.pow(p.a(1)) * std::exp(-p.b(1) * x.inv()); };
  std::vector<LogPoint> xs{LogPoint::from_polar(0.1, 2.0), LogPoint::from_polar(0.12, 1.8)};
  CHECK(ode_residual(p, col1, xs) < 1e-8);
}

TEST_CASE("ode_residual: summed columns solve the equation") {
  EngineOptions o;
  o.tol_quad = 1e-13;
  const Parameters& p = kCanonical;
  const auto col2 = [&](LogPoint x) {
    return x.pow(p.a(2)) * std::exp(-p.b(2) * x.inv()) * x.pow(2.0) *
           phi_sum(1, 2, Ray{x.arg()}, x, p, o).value / (p.b(2) - p.b(1));
  };
  const auto col3 = [&](LogPoint x) {
    return x.pow(p.a(3)) * std::exp(-p.b(3) * x.inv()) * x.pow(4.0) *
           phi13_sum(p, Ray{x.arg()}, Ray{x.arg()}, x, o) /
           ((p.b(3) - p.b(2)) * (p.b(3) - p.b(1)));
  };
  std::vector<LogPoint> xs{LogPoint::from_polar(0.1, 2.0), LogPoint::from_polar(0.09, 2.1)};
  CHECK(ode_residual(kCanonical, col2, xs) < 1e-6);
  CHECK(ode_residual(kCanonical, col3, xs) < 1e-6);
}

TEST_CASE("basis underflow raises IllConditioned") {
  const auto family = [&](double, LogPoint) { return Complex(0.0); };
  std::vector<LogPoint> xs{LogPoint::from_polar(0.001, 0.0)};
  CHECK_THROWS_AS(
      (void)measure_jump(family, 0.0, Complex(0.0), Complex(1.0), 0.05, xs),
      IllConditioned);
}
