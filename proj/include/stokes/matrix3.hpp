#pragma once

#include <array>
#include <cstddef>

#include "stokes/complex_util.hpp"
#include "stokes/errors.hpp"

namespace stokes {

// Dense 3x3 complex matrix, row-major. Small enough that hand-rolled ops
// beat pulling in a linear-algebra dependency.
struct Matrix3 {
  std::array<Complex, 9> m{};

  Complex& operator()(int i, int j) { return m[static_cast<std::size_t>(3 * i + j)]; }
  const Complex& operator()(int i, int j) const { return m[static_cast<std::size_t>(3 * i + j)]; }

  static Matrix3 identity() {
    Matrix3 r;
    r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
    return r;
  }

  static Matrix3 diag(Complex d0, Complex d1, Complex d2) {
    Matrix3 r;
    r(0, 0) = d0;
    r(1, 1) = d1;
    r(2, 2) = d2;
    return r;
  }

  friend Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
    Matrix3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Complex s = 0.0;
        for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
        r(i, j) = s;
      }
    return r;
  }

  friend Matrix3 operator-(const Matrix3& a, const Matrix3& b) {
    Matrix3 r;
    for (int k = 0; k < 9; ++k) r.m[static_cast<std::size_t>(k)] = a.m[static_cast<std::size_t>(k)] - b.m[static_cast<std::size_t>(k)];
    return r;
  }

  Complex det() const {
    const auto& a = *this;
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  }

  Matrix3 inverse() const {
    const Complex d = det();
    if (std::abs(d) == 0.0) throw IllConditioned("Matrix3: singular matrix");
    const auto& a = *this;
    Matrix3 r;
    r(0, 0) = (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) / d;
    r(0, 1) = (a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2)) / d;
    r(0, 2) = (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)) / d;
    r(1, 0) = (a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) / d;
    r(1, 1) = (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) / d;
    r(1, 2) = (a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2)) / d;
    r(2, 0) = (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)) / d;
    r(2, 1) = (a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1)) / d;
    r(2, 2) = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) / d;
    return r;
  }

  double max_abs() const {
    double r = 0.0;
    for (const auto& v : m) r = std::max(r, std::abs(v));
    return r;
  }
};

}  // namespace stokes
