#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace stokes {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Tolerance gate for the integer case analysis; every case split in the
// library goes through these.
inline constexpr double kIntTol = 1e-9;

inline bool is_integer(Complex z, double tol = kIntTol) {
  return std::abs(z.imag()) <= tol && std::abs(z.real() - std::round(z.real())) <= tol;
}

inline long to_integer(Complex z) { return static_cast<long>(std::llround(z.real())); }

inline bool is_integer_leq(Complex z, long m, double tol = kIntTol) {
  return is_integer(z, tol) && to_integer(z) <= m;
}

inline bool is_integer_geq(Complex z, long m, double tol = kIntTol) {
  return is_integer(z, tol) && to_integer(z) >= m;
}

inline bool is_nonpos_integer(Complex z, double tol = kIntTol) { return is_integer_leq(z, 0, tol); }

// Principal power w^e, exp(e log w) with Log principal.
inline Complex cpow(Complex w, Complex e) {
  if (w == Complex(0.0) && e == Complex(0.0)) return {1.0, 0.0};
  return std::exp(e * std::log(w));
}

// Integer power, exact branch-free (used where the exponent is a verified integer).
inline Complex ipow(Complex w, long n) {
  if (n < 0) return 1.0 / ipow(w, -n);
  Complex r{1.0, 0.0};
  Complex b = w;
  for (long k = n; k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

// Reduce an angle to [0, 2pi).
inline double arg_mod_2pi(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

// Angular distance between two directions, reduced mod 2pi into [0, pi].
inline double dir_distance(double a, double b) {
  double d = arg_mod_2pi(a - b);
  return std::min(d, kTwoPi - d);
}

// Point on the Riemann surface of log: x = exp(logx). Im(logx) is the
// unreduced argument; powers x^a = exp(a logx) track the sheet.
struct LogPoint {
  Complex logx;

  static LogPoint from_polar(double abs, double arg) { return {Complex(std::log(abs), arg)}; }
  static LogPoint principal(Complex x) { return {std::log(x)}; }

  Complex value() const { return std::exp(logx); }
  double abs() const { return std::exp(logx.real()); }
  double arg() const { return logx.imag(); }
  Complex pow(Complex a) const { return std::exp(a * logx); }
  Complex inv() const { return std::exp(-logx); }
};

}  // namespace stokes
