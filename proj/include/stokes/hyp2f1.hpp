#pragma once

#include <algorithm>
#include <array>
#include <vector>
#include <cmath>

#include "stokes/complex_util.hpp"
#include "stokes/errors.hpp"
#include "stokes/gamma.hpp"

namespace stokes {

struct HypParams {
  Complex a, b, c;
};

// Terminating case F(a, -n; -m; z), n <= m: the polynomial extension
// sum_{s=0}^{n} (a)^(s) (-n)^(s) / ((-m)^(s) s!) z^s.
inline Complex hyp2f1_polynomial(Complex a, long n, long m, Complex z) {
  if (n < 0 || m < 0 || n > m)
    throw InvalidDegenerate("hyp2f1_polynomial: requires 0 <= n <= m");
  Complex sum{1.0, 0.0};
  Complex term{1.0, 0.0};
  for (long s = 0; s < n; ++s) {
    const double sn = static_cast<double>(s);
    term *= (a + sn) * Complex(static_cast<double>(-n + s)) /
            (Complex(static_cast<double>(-m + s)) * (sn + 1.0));
    term *= z;
    sum += term;
  }
  return sum;
}

namespace detail {

inline Complex hyp_series(Complex a, Complex b, Complex c, Complex z, long max_terms = 4000) {
  Complex sum{1.0, 0.0};
  Complex term{1.0, 0.0};
  int small_streak = 0;
  for (long k = 0; k < max_terms; ++k) {
    const double kd = static_cast<double>(k);
    term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * z;
    sum += term;
    if (std::abs(term) <= 1e-18 * (1.0 + std::abs(sum))) {
      if (++small_streak >= 2) return sum;
    } else {
      small_streak = 0;
    }
  }
  throw EvaluationError("hyp2f1: series did not converge");
}

// One linear-transformation candidate: w(z), gamma-coefficient gate, evaluator.
enum class HypMap { Identity, PfaffA, PfaffB, OneMinus, Inv, InvOneMinus };

inline Complex map_arg(HypMap m, Complex z) {
  switch (m) {
    case HypMap::Identity: return z;
    case HypMap::PfaffA:
    case HypMap::PfaffB: return z / (z - 1.0);
    case HypMap::OneMinus: return 1.0 - z;
    case HypMap::Inv: return 1.0 / z;
    case HypMap::InvOneMinus: return 1.0 / (1.0 - z);
  }
  return z;
}

// Analytic continuation by Taylor marching along the segment [u0, z] using
// the hypergeometric ODE u(1-u)F'' + (c-(a+b+1)u)F' - abF = 0. Covers the
// corner regions near e^{+-i pi/3} where every standard transformation has
// mapped argument of modulus ~ 1. Requires the segment to stay off [1, inf).
inline Complex taylor_march(Complex a, Complex b, Complex c, Complex z) {
  const Complex u0 = 0.7 * z / std::abs(z);
  Complex f = hyp_series(a, b, c, u0);
  Complex fp = a * b / c * hyp_series(a + 1.0, b + 1.0, c + 1.0, u0);
  Complex w = u0;
  const Complex target = z;
  for (int step = 0; step < 64; ++step) {
    const Complex rem = target - w;
    const double radius = std::min(std::abs(w), std::abs(1.0 - w));
    const double hmax = 0.4 * radius;
    const Complex h = std::abs(rem) <= hmax ? rem : rem / std::abs(rem) * hmax;
    // Taylor coefficients around w from the ODE recurrence
    const Complex A0 = w * (1.0 - w);
    const Complex A1 = 1.0 - 2.0 * w;
    const Complex B0 = c - (a + b + 1.0) * w;
    std::vector<Complex> cf{f, fp};
    Complex val = f + fp * h;
    Complex der = fp;
    Complex hk = h;  // h^k with k = coefficient index being added to val
    for (long k = 0;; ++k) {
      const double kd = static_cast<double>(k);
      const Complex ck = cf[static_cast<std::size_t>(k)];
      const Complex ck1 = cf[static_cast<std::size_t>(k + 1)];
      const Complex ck2 = ((kd * (kd - 1.0) + (a + b + 1.0) * kd + a * b) * ck -
                           (A1 * (kd + 1.0) * kd + B0 * (kd + 1.0)) * ck1) /
                          (A0 * (kd + 2.0) * (kd + 1.0));
      cf.push_back(ck2);
      hk *= h;
      val += ck2 * hk;
      der += ck2 * (kd + 2.0) * hk / h;
      if (std::abs(ck2 * hk) < 1e-17 * (1.0 + std::abs(val)) && k > 4) break;
      if (k > 600) throw EvaluationError("hyp2f1: Taylor march stalled");
    }
    w += h;
    f = val;
    fp = der;
    if (std::abs(target - w) < 1e-15) return f;
  }
  throw EvaluationError("hyp2f1: Taylor march did not reach the target");
}

inline Complex eval_map(HypMap m, Complex a, Complex b, Complex c, Complex z, double tol) {
  const Complex w = map_arg(m, z);
  switch (m) {
    case HypMap::Identity:
      return hyp_series(a, b, c, w);
    case HypMap::PfaffA:
      return cpow(1.0 - z, -a) * hyp_series(a, c - b, c, w);
    case HypMap::PfaffB:
      return cpow(1.0 - z, -b) * hyp_series(c - a, b, c, w);
    case HypMap::OneMinus: {
      if (is_integer(c - a - b, tol)) throw LogarithmicCase("hyp2f1: c-a-b integer on 1-z route");
      const Complex g_c = gamma(c, tol);
      const Complex t1 = g_c * gamma(c - a - b, tol) * recip_gamma(c - a, tol) *
                         recip_gamma(c - b, tol) * hyp_series(a, b, a + b - c + 1.0, w);
      const Complex t2 = g_c * gamma(a + b - c, tol) * recip_gamma(a, tol) *
                         recip_gamma(b, tol) * cpow(w, c - a - b) *
                         hyp_series(c - a, c - b, c - a - b + 1.0, w);
      return t1 + t2;
    }
    case HypMap::Inv: {
      if (is_integer(a - b, tol)) throw LogarithmicCase("hyp2f1: a-b integer on 1/z route");
      const Complex g_c = gamma(c, tol);
      const Complex t1 = g_c * gamma(b - a, tol) * recip_gamma(b, tol) *
                         recip_gamma(c - a, tol) * cpow(-z, -a) *
                         hyp_series(a, a - c + 1.0, a - b + 1.0, w);
      const Complex t2 = g_c * gamma(a - b, tol) * recip_gamma(a, tol) *
                         recip_gamma(c - b, tol) * cpow(-z, -b) *
                         hyp_series(b, b - c + 1.0, b - a + 1.0, w);
      return t1 + t2;
    }
    case HypMap::InvOneMinus: {
      if (is_integer(a - b, tol)) throw LogarithmicCase("hyp2f1: a-b integer on 1/(1-z) route");
      const Complex g_c = gamma(c, tol);
      const Complex t1 = g_c * gamma(b - a, tol) * recip_gamma(b, tol) *
                         recip_gamma(c - a, tol) * cpow(1.0 - z, -a) *
                         hyp_series(a, c - b, a - b + 1.0, w);
      const Complex t2 = g_c * gamma(a - b, tol) * recip_gamma(a, tol) *
                         recip_gamma(c - b, tol) * cpow(1.0 - z, -b) *
                         hyp_series(b, c - a, b - a + 1.0, w);
      return t1 + t2;
    }
  }
  throw EvaluationError("hyp2f1: unreachable");
}

}  // namespace detail

// Gauss 2F1, principal branch on C \ [1, inf). Dispatches between the direct
// series and the z/(z-1), 1-z, 1/z, 1/(1-z) transformations; degenerate
// (integer) connection coefficients raise LogarithmicCase instead of taking
// limits. Terminating numerator parameters are detected first and summed
// exactly.
inline Complex hyp2f1(const HypParams& p, Complex z, double int_tol = kIntTol) {
  const Complex a = p.a, b = p.b, c = p.c;
  if (std::abs(z) <= int_tol) {
    // exact: only the constant term survives at z = 0
    if (z == Complex(0.0)) return {1.0, 0.0};
  }

  const bool a_term = is_nonpos_integer(a, int_tol);
  const bool b_term = is_nonpos_integer(b, int_tol);
  const bool c_pole = is_nonpos_integer(c, int_tol);
  if (a_term || b_term) {
    const long n = a_term && (!b_term || -to_integer(a) <= -to_integer(b)) ? -to_integer(a)
                                                                           : -to_integer(b);
    const Complex other = (a_term && n == -to_integer(a)) ? b : a;
    if (c_pole) {
      const long m = -to_integer(c);
      return hyp2f1_polynomial(other, n, m, z);  // throws InvalidDegenerate if n > m
    }
    // plain terminating series
    Complex sum{1.0, 0.0}, term{1.0, 0.0};
    for (long s = 0; s < n; ++s) {
      const double sd = static_cast<double>(s);
      term *= (other + sd) * Complex(static_cast<double>(-n + s)) / ((c + sd) * (sd + 1.0)) * z;
      sum += term;
    }
    return sum;
  }
  if (c_pole) throw PoleError("hyp2f1: c non-positive integer without terminating numerator");

  if (z.imag() == 0.0 && z.real() >= 1.0)
    throw BranchCut("hyp2f1: argument on the branch cut [1, inf)");

  using detail::HypMap;
  // direct series inside the safe disc, otherwise the transformation with
  // the smallest mapped argument
  if (std::abs(z) <= 0.7) return detail::hyp_series(a, b, c, z);
  constexpr std::array<HypMap, 6> kMaps = {HypMap::Identity, HypMap::PfaffA, HypMap::PfaffB,
                                           HypMap::OneMinus, HypMap::Inv, HypMap::InvOneMinus};
  std::array<std::pair<double, HypMap>, 6> cand;
  for (std::size_t i = 0; i < kMaps.size(); ++i)
    cand[i] = {std::abs(detail::map_arg(kMaps[i], z)), kMaps[i]};
  std::sort(cand.begin(), cand.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });

  const double kSeriesRadius = 0.75;
  LogarithmicCase last{"hyp2f1: no transformation applicable"};
  bool saw_log = false;
  for (const auto& [aw, m] : cand) {
    if (aw > kSeriesRadius) break;
    try {
      return detail::eval_map(m, a, b, c, z, int_tol);
    } catch (const LogarithmicCase& e) {
      saw_log = true;
      last = e;
    }
  }
  if (saw_log) throw last;
  // corner region near e^{+-i pi/3}: march the ODE solution from a safe point
  return detail::taylor_march(a, b, c, z);
}

inline Complex hyp2f1(Complex a, Complex b, Complex c, Complex z, double int_tol = kIntTol) {
  return hyp2f1(HypParams{a, b, c}, z, int_tol);
}

}  // namespace stokes
