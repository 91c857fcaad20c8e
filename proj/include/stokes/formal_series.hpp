#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stokes/complex_util.hpp"

namespace stokes {

// Truncated formal power series at x = 0 with a certified Gevrey-1 bound
// |c_n| <= C A^n n! for every stored coefficient. sigma, when set, marks an
// exact polynomial of that degree (all later coefficients vanish).
struct FormalSeries {
  std::vector<Complex> coeffs;
  std::optional<long> sigma;
  double gevrey_C = 1.0;
  double gevrey_A = 1.0;

  std::size_t size() const { return coeffs.size(); }

  Complex coeff(std::size_t n) const { return n < coeffs.size() ? coeffs[n] : Complex(0.0); }

  Complex eval(Complex x) const {
    Complex s = 0.0;
    Complex xn{1.0, 0.0};
    for (const Complex& c : coeffs) {
      s += c * xn;
      xn *= x;
    }
    return s;
  }

  // partial sum below N
  Complex partial(Complex x, std::size_t N) const {
    Complex s = 0.0;
    Complex xn{1.0, 0.0};
    for (std::size_t n = 0; n < N && n < coeffs.size(); ++n) {
      s += coeffs[n] * xn;
      xn *= x;
    }
    return s;
  }
};

namespace gevrey {

// Bound combinators; each keeps |c_n| <= C A^n n! valid for the result.
struct Bound {
  double C, A;
};

inline Bound sum(Bound a, Bound b) { return {a.C + b.C, std::max(a.A, b.A)}; }

inline Bound scale(Bound a, double mag) { return {a.C * mag, a.A}; }

// x^k * series: (n-k)! <= n!, so C' = C A^{-k}.
inline Bound shift(Bound a, long k) { return {a.C * std::pow(a.A, -static_cast<double>(k)), a.A}; }

// Lemma constants for the binomial-coefficient family
// c_n = (w)^(n) / |b|^n style growth: A = (|w|+1)/|b| when |w| > 1 else 1/|b|.
inline Bound binomial_family(Complex w, double babs) {
  const double aw = std::abs(w);
  return {1.0, (aw > 1.0 ? aw + 1.0 : 1.0) / babs};
}

}  // namespace gevrey

}  // namespace stokes
