#pragma once

#include <array>
#include <vector>

#include "stokes/complex_util.hpp"
#include "stokes/errors.hpp"
#include "stokes/formal_series.hpp"
#include "stokes/gamma.hpp"
#include "stokes/hyp2f1.hpp"
#include "stokes/parameters.hpp"

namespace stokes {

inline constexpr long kDefaultTruncation = 40;

// phi_hat_{ij}: coefficients b_n = (-1)^n (2+a_j-a_i)^(n) / (b_j-b_i)^n.
// Terminates exactly at degree a_i-a_j-2 when a_j-a_i is an integer <= -2.
inline FormalSeries phi_hat(int i, int j, const Parameters& p, long N = kDefaultTruncation,
                            double int_tol = kIntTol) {
  if (!((i == 1 && j == 2) || (i == 2 && j == 3)))
    throw InvalidParameters("phi_hat: (i,j) must be (1,2) or (2,3)");
  const Complex w = 2.0 + p.a(j) - p.a(i);
  const Complex d = p.b(j) - p.b(i);
  FormalSeries s;
  if (is_integer_leq(p.a(j) - p.a(i), -2, int_tol)) s.sigma = to_integer(p.a(i) - p.a(j)) - 2;
  const long len = s.sigma ? std::min(N, *s.sigma) : N;
  s.coeffs.resize(static_cast<std::size_t>(len) + 1);
  s.coeffs[0] = 1.0;
  for (long n = 1; n <= len; ++n)
    s.coeffs[static_cast<std::size_t>(n)] =
        -s.coeffs[static_cast<std::size_t>(n - 1)] * (w + Complex(static_cast<double>(n - 1))) / d;
  const auto bound = gevrey::binomial_family(w, std::abs(d));
  s.gevrey_C = bound.C;
  s.gevrey_A = bound.A;
  return s;
}

namespace detail {

inline Complex f_ratio_z(const Parameters& p) { return (p.b(3) - p.b(1)) / (p.b(3) - p.b(2)); }

inline void check_F_convergence(const Parameters& p, double int_tol) {
  const double az = std::abs(f_ratio_z(p));
  if (az > 1.0 + kModulusEqTol)
    throw DivergentSeries("F-series diverges: |b3-b1| > |b3-b2|");
  if (az > 1.0 - kModulusEqTol && !((p.a(2) - p.a(1)).real() > -1.0 + int_tol))
    throw DivergentSeries("F-series diverges on |z| = 1 without Re(alpha2-alpha1) > -1");
}

}  // namespace detail

// F(alpha; beta; n) = 2F1(1, 2+n+a3-a2; 4+n+a3-a1; (b3-b1)/(b3-b2)).
inline Complex F_n(const Parameters& p, long n, double int_tol = kIntTol) {
  if (is_integer_leq(p.a(3) - p.a(1), -4, int_tol))
    throw InvalidDegenerate("F_n: requires alpha3-alpha1 not an integer <= -4");
  detail::check_F_convergence(p, int_tol);
  const double nd = static_cast<double>(n);
  return hyp2f1(Complex(1.0), 2.0 + nd + p.a(3) - p.a(2), 4.0 + nd + p.a(3) - p.a(1),
                detail::f_ratio_z(p), int_tol);
}

// F~(alpha; beta; n) = 2F1(1, a1-a2-1+n; 1+n; (b3-b1)/(b3-b2)).
inline Complex F_tilde_n(const Parameters& p, long n, double int_tol = kIntTol) {
  detail::check_F_convergence(p, int_tol);
  const double nd = static_cast<double>(n);
  return hyp2f1(Complex(1.0), p.a(1) - p.a(2) - 1.0 + nd, 1.0 + nd, detail::f_ratio_z(p),
                int_tol);
}

namespace detail {

// a_n = b_n (F(n) - 1) of the triple13-generic branch, n = 0..N.
inline std::vector<Complex> a_coeffs_generic(const Parameters& p, long N, double int_tol) {
  std::vector<Complex> a(static_cast<std::size_t>(N) + 1);
  const Complex w = 2.0 + p.a(3) - p.a(2);
  const Complex d = p.b(3) - p.b(2);
  Complex bn{1.0, 0.0};
  for (long n = 0; n <= N; ++n) {
    if (n > 0) bn *= -(w + Complex(static_cast<double>(n - 1))) / d;
    a[static_cast<std::size_t>(n)] = bn * (F_n(p, n, int_tol) - 1.0);
  }
  return a;
}

// a_n = c_n (F~(n) - 1) of the triple13-integer branch.
inline std::vector<Complex> a_coeffs_tilde(const Parameters& p, long N, double int_tol) {
  std::vector<Complex> a(static_cast<std::size_t>(N) + 1);
  const Complex w = p.a(1) - p.a(2) - 1.0;
  const Complex d = p.b(3) - p.b(2);
  Complex cn{1.0, 0.0};
  for (long n = 0; n <= N; ++n) {
    if (n > 0) cn *= -(w + Complex(static_cast<double>(n - 1))) / d;
    a[static_cast<std::size_t>(n)] = cn * (F_tilde_n(p, n, int_tol) - 1.0);
  }
  return a;
}

// finite double sum of Prop (fs-0) items 2/3:
// sum_l b_l x^l sum_s (-1)^s (4+l+a3-a1)^(s)/(b3-b1)^s x^s, l+s <= A-4.
inline std::vector<Complex> double_sum_poly(const Parameters& p, long A) {
  std::vector<Complex> c(static_cast<std::size_t>(std::max<long>(A - 4 + 1, 0)));
  const Complex w = 2.0 + p.a(3) - p.a(2);
  const Complex d32 = p.b(3) - p.b(2);
  const Complex d31 = p.b(3) - p.b(1);
  Complex bl{1.0, 0.0};
  for (long l = 0; l <= A - 4; ++l) {
    if (l > 0) bl *= -(w + Complex(static_cast<double>(l - 1))) / d32;
    Complex inner{1.0, 0.0};
    for (long s = 0; s <= A - 4 - l; ++s) {
      if (s > 0)
        inner *= -(4.0 + static_cast<double>(l + s - 1) + p.a(3) - p.a(1)) / d31;
      c[static_cast<std::size_t>(l + s)] += bl * inner;
    }
  }
  return c;
}

inline double poly_gevrey_C(const std::vector<Complex>& c, double A) {
  double C = 0.0;
  double anfact = 1.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (n > 0) anfact *= A * static_cast<double>(n);
    C = std::max(C, std::abs(c[n]) / anfact);
  }
  return std::max(C, 1e-300);
}

}  // namespace detail

// The series entering H13 (Prop fs-0), truncated at N.
inline FormalSeries psi_hat(const Parameters& p, long N = kDefaultTruncation,
                            double int_tol = kIntTol) {
  const CaseTag tag = classify(p, int_tol);
  if (tag.excluded) throw ExcludedCase("psi_hat: excluded parameter case");
  FormalSeries s;
  if (tag.triple13 == TripleCase::Generic) {
    // F(0) S0(x) - sum a_n x^n ; the a-sum truncates when alpha3-alpha2 in Z<=-2
    const Complex F0 = F_n(p, 0, int_tol);
    const Complex d31 = p.b(3) - p.b(1);
    const Complex w0 = 4.0 + p.a(3) - p.a(1);
    const long a_len = tag.pair23 == PairCase::IntLeMinus2
                           ? std::min(N, to_integer(p.a(2) - p.a(3)) - 2)
                           : N;
    const auto a = detail::a_coeffs_generic(p, a_len, int_tol);
    s.coeffs.resize(static_cast<std::size_t>(N) + 1);
    Complex s0n{1.0, 0.0};
    for (long n = 0; n <= N; ++n) {
      if (n > 0) s0n *= -(w0 + Complex(static_cast<double>(n - 1))) / d31;
      s.coeffs[static_cast<std::size_t>(n)] = F0 * s0n;
      if (n < static_cast<long>(a.size()))
        s.coeffs[static_cast<std::size_t>(n)] -= a[static_cast<std::size_t>(n)];
    }
    // bounds: |F0| * S0-family + (max|F(n)-1|) * b-family
    double maxFm1 = 0.0;
    {
      Complex bn{1.0, 0.0};
      const Complex w = 2.0 + p.a(3) - p.a(2);
      const Complex d32 = p.b(3) - p.b(2);
      for (std::size_t n = 0; n < a.size(); ++n) {
        if (n > 0) bn *= -(w + Complex(static_cast<double>(n - 1))) / d32;
        if (std::abs(bn) > 0.0) maxFm1 = std::max(maxFm1, std::abs(a[n] / bn));
      }
    }
    const auto bS0 = gevrey::binomial_family(w0, std::abs(d31));
    const auto bA = gevrey::binomial_family(2.0 + p.a(3) - p.a(2), std::abs(p.b(3) - p.b(2)));
    const auto tot = gevrey::sum(gevrey::scale(bS0, std::abs(F0)), gevrey::scale(bA, maxFm1));
    s.gevrey_C = tot.C;
    s.gevrey_A = tot.A;
    return s;
  }

  // alpha3-alpha1 = -A, A >= 4
  const long A = to_integer(p.a(1) - p.a(3));
  auto poly = detail::double_sum_poly(p, A);
  if (tag.pair12 == PairCase::IntLeMinus2 && tag.pair23 == PairCase::IntLeMinus2) {
    s.coeffs = std::move(poly);
    if (static_cast<long>(s.coeffs.size()) - 1 > N) s.coeffs.resize(static_cast<std::size_t>(N) + 1);
    s.sigma = A - 4;
    s.gevrey_A = gevrey::binomial_family(4.0 + p.a(3) - p.a(1), std::abs(p.b(3) - p.b(1))).A;
    s.gevrey_C = detail::poly_gevrey_C(s.coeffs, s.gevrey_A);
    return s;
  }

  // tail x^{A-3} b_{A-3} [F~(0) S0~(x) - sum_{n<=sigma} a_n x^n]
  s.coeffs.assign(static_cast<std::size_t>(N) + 1, Complex(0.0));
  for (std::size_t n = 0; n < poly.size() && n <= static_cast<std::size_t>(N); ++n)
    s.coeffs[n] = poly[n];
  const Complex bA3 =
      rising_factorial(2.0 + p.a(3) - p.a(2), A - 3) *
      ipow(-1.0 / (p.b(3) - p.b(2)), A - 3);
  const Complex F0t = F_tilde_n(p, 0, int_tol);
  const Complex d31 = p.b(3) - p.b(1);
  long sigma_tail = -1;  // -1 encodes infinite here
  if (is_integer_geq(p.a(2) - p.a(1), 0, int_tol)) sigma_tail = to_integer(p.a(2) - p.a(1));
  else if (is_integer(p.a(2) - p.a(1), int_tol) && to_integer(p.a(2) - p.a(1)) == -1)
    sigma_tail = 0;  // the a-sum is identically zero (a_0 = 0 since F~(0) = 1)
  const long tail_len = N - (A - 3);
  if (tail_len >= 0) {
    // S0~ coefficients (-1)^s s!/(b3-b1)^s
    Complex st{1.0, 0.0};
    for (long n = 0; n <= tail_len; ++n) {
      if (n > 0) st *= -static_cast<double>(n) / d31;
      s.coeffs[static_cast<std::size_t>(A - 3 + n)] += bA3 * F0t * st;
    }
    const long a_len = sigma_tail >= 0 ? std::min(tail_len, sigma_tail) : tail_len;
    const auto a = detail::a_coeffs_tilde(p, a_len, int_tol);
    for (long n = 0; n <= a_len; ++n)
      s.coeffs[static_cast<std::size_t>(A - 3 + n)] -= bA3 * a[static_cast<std::size_t>(n)];
  }
  const auto bS0t = gevrey::Bound{1.0, 1.0 / std::abs(d31)};
  const auto bC =
      gevrey::binomial_family(p.a(1) - p.a(2) - 1.0, std::abs(p.b(3) - p.b(2)));
  double maxFm1 = 2.0 + std::abs(F0t);
  auto tail_bound =
      gevrey::sum(gevrey::scale(bS0t, std::abs(F0t)), gevrey::scale(bC, maxFm1));
  tail_bound = gevrey::scale(gevrey::shift(tail_bound, A - 3), std::abs(bA3));
  const auto tot = gevrey::sum(
      gevrey::Bound{detail::poly_gevrey_C(poly, tail_bound.A), tail_bound.A}, tail_bound);
  s.gevrey_C = tot.C;
  s.gevrey_A = tot.A;
  return s;
}

// Hukuhara-Turrittin data: H upper triangular with unit diagonal,
// H12 = x^2 phi12/(b2-b1), H23 = x^2 phi23/(b3-b2),
// H13 = x^4 psi/((b3-b2)(b3-b1)); Lambda = alpha, Q = beta.
struct FormalFundamental {
  FormalSeries H12, H23, H13;  // full series in x (shifts included)
  std::array<Complex, 3> Lambda;
  std::array<Complex, 3> Q;
};

inline FormalFundamental formal_fundamental(const Parameters& p, long N = kDefaultTruncation,
                                            double int_tol = kIntTol) {
  const auto shift_scale = [](const FormalSeries& f, long k, Complex c) {
    FormalSeries r;
    r.coeffs.assign(f.coeffs.size() + static_cast<std::size_t>(k), Complex(0.0));
    for (std::size_t n = 0; n < f.coeffs.size(); ++n)
      r.coeffs[n + static_cast<std::size_t>(k)] = c * f.coeffs[n];
    if (f.sigma) r.sigma = *f.sigma + k;
    const auto b = gevrey::scale(gevrey::shift({f.gevrey_C, f.gevrey_A}, k), std::abs(c));
    r.gevrey_C = b.C;
    r.gevrey_A = b.A;
    return r;
  };
  FormalFundamental F;
  F.H12 = shift_scale(phi_hat(1, 2, p, N, int_tol), 2, 1.0 / (p.b(2) - p.b(1)));
  F.H23 = shift_scale(phi_hat(2, 3, p, N, int_tol), 2, 1.0 / (p.b(3) - p.b(2)));
  F.H13 = shift_scale(psi_hat(p, N, int_tol), 4,
                      1.0 / ((p.b(3) - p.b(2)) * (p.b(3) - p.b(1))));
  F.Lambda = p.alpha;
  F.Q = p.beta;
  return F;
}

}  // namespace stokes
