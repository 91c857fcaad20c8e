#pragma once

#include <cmath>

#include "stokes/complex_util.hpp"
#include "stokes/errors.hpp"

namespace stokes {

namespace detail {

// Lanczos, g = 607/128, 15 terms (Godfrey / Boost coefficient set).
inline constexpr double kLanczosG = 4.7421875;
inline constexpr double kLanczosCoef[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

inline Complex lanczos_gamma_pos(Complex z) {
  // valid for Re z >= 0.5
  Complex acc = kLanczosCoef[0];
  for (int k = 1; k < 15; ++k) acc += kLanczosCoef[k] / (z + Complex(k - 1));
  const Complex t = z + (kLanczosG - 0.5);
  return std::sqrt(kTwoPi) * std::exp((z - 0.5) * std::log(t) - t) * acc;
}

}  // namespace detail

// Euler Gamma on C minus the poles.
inline Complex gamma(Complex z, double int_tol = kIntTol) {
  if (is_nonpos_integer(z, int_tol))
    throw PoleError("gamma: pole at non-positive integer");
  if (z.real() >= 0.5) return detail::lanczos_gamma_pos(z);
  // reflection
  return kPi / (std::sin(kPi * z) * detail::lanczos_gamma_pos(1.0 - z));
}

// 1/Gamma, entire; exactly 0 at the poles (within the integer tolerance).
inline Complex recip_gamma(Complex z, double int_tol = kIntTol) {
  if (is_nonpos_integer(z, int_tol)) return {0.0, 0.0};
  return 1.0 / gamma(z, int_tol);
}

// (a)^(n) = a(a+1)...(a+n-1), (a)^(0) = 1.
inline Complex rising_factorial(Complex a, long n) {
  Complex r{1.0, 0.0};
  for (long k = 0; k < n; ++k) r *= a + Complex(static_cast<double>(k));
  return r;
}

// Gamma(a)/Gamma(b), robust when a - b is an integer and both arguments sit
// on poles (reduces to a rising factorial).
inline Complex gamma_ratio(Complex a, Complex b, double int_tol = kIntTol) {
  if (is_integer(a - b, int_tol)) {
    const long m = to_integer(a - b);
    // Gamma(b+m)/Gamma(b) = (b)^(m); also the correct pole/pole limit
    if (m >= 0) return rising_factorial(b, m);
    const Complex r = rising_factorial(a, -m);
    if (r == Complex(0.0)) throw PoleError("gamma_ratio: numerator pole not cancelled");
    return 1.0 / r;
  }
  const bool pa = is_nonpos_integer(a, int_tol);
  const bool pb = is_nonpos_integer(b, int_tol);
  if (pa) throw PoleError("gamma_ratio: isolated pole in numerator");
  if (pb) return {0.0, 0.0};
  return gamma(a, int_tol) / gamma(b, int_tol);
}

}  // namespace stokes
