#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <vector>

#include "stokes/complex_util.hpp"
#include "stokes/errors.hpp"

namespace stokes {

namespace detail {

// Kronrod-15 abscissae on [0,1] half-interval plus the embedded Gauss-7
// weights (QUADPACK dqk15 constants).
inline constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0000000000000000};
inline constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
inline constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

template <class F>
inline void gk15(F&& f, double a, double b, Complex& kron, double& err) {
  const double hl = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  Complex rk = 0.0, rg = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double dx = hl * kXgk[j];
    Complex v;
    if (j == 7) {
      v = f(c);
      rk += kWgk[7] * v;
      rg += kWg[3] * v;
    } else {
      const Complex v1 = f(c - dx);
      const Complex v2 = f(c + dx);
      rk += kWgk[j] * (v1 + v2);
      if (j % 2 == 1) rg += kWg[j / 2] * (v1 + v2);
    }
  }
  kron = rk * hl;
  err = std::abs((rk - rg) * hl);
}

}  // namespace detail

struct QuadResult {
  Complex value{0.0, 0.0};
  double est_error = 0.0;
  std::size_t evaluations = 0;
};

// Adaptive GK15 over [a,b] with user panel seeds (refinement hot-spots such
// as near-branch-point radii land on panel boundaries). Tolerance is
// abs_tol + rel_tol * |running integral|.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, std::vector<double> seeds,
                              double abs_tol, double rel_tol, std::size_t max_panels = 4000) {
  struct Panel {
    double a, b, err;
    Complex val;
    bool operator<(const Panel& o) const { return err < o.err; }
  };
  seeds.push_back(a);
  seeds.push_back(b);
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  std::priority_queue<Panel> heap;
  QuadResult res;
  Complex total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < seeds.size(); ++i) {
    if (seeds[i] < a - 0.0 || seeds[i + 1] > b + 0.0) continue;
    Panel p{seeds[i], seeds[i + 1], 0.0, Complex(0.0)};
    detail::gk15(f, p.a, p.b, p.val, p.err);
    res.evaluations += 15;
    total += p.val;
    total_err += p.err;
    heap.push(p);
  }
  std::size_t panels = heap.size();
  while (panels < max_panels) {
    const double tol = abs_tol + rel_tol * std::abs(total);
    if (total_err <= tol) break;
    Panel worst = heap.top();
    heap.pop();
    total -= worst.val;
    total_err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    for (int h = 0; h < 2; ++h) {
      Panel p{h == 0 ? worst.a : mid, h == 0 ? mid : worst.b, 0.0, Complex(0.0)};
      detail::gk15(f, p.a, p.b, p.val, p.err);
      res.evaluations += 15;
      total += p.val;
      total_err += p.err;
      heap.push(p);
    }
    ++panels;
  }
  res.value = total;
  res.est_error = total_err;
  if (total_err > abs_tol + rel_tol * std::abs(total))
    throw QuadratureFailure("integrate_adaptive: tolerance not met at max refinement");
  return res;
}

}  // namespace stokes
