#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stokes/stokes_matrices.hpp"
#include "stokes/verify.hpp"

using namespace stokes;

namespace {

const Parameters kCanonical{{Complex(0.0), Complex(0.25), Complex(-0.5)},
                            {Complex(0.0), Complex(3.0), Complex(1.0, 1.0)}};

double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("singular directions reduce to [0, 2pi)") {
  const auto d1 = singular_directions(kCanonical);
  CHECK(std::abs(d1[0] - kPi) < 1e-15);
  CHECK(std::abs(d1[1] - 5.0 * kPi / 4.0) < 1e-15);
  CHECK(std::abs(d1[2] - (kTwoPi - std::atan(0.5))) < 1e-15);

  const Parameters p2{kCanonical.alpha, {Complex(0.0), Complex(-1.0), Complex(0.0, 1.0)}};
  const auto d2 = singular_directions(p2);
  CHECK(std::abs(d2[0] - 0.0) < 1e-15);
  CHECK(std::abs(d2[1] - 3.0 * kPi / 2.0) < 1e-15);
  CHECK(std::abs(d2[2] - 5.0 * kPi / 4.0) < 1e-15);
}

TEST_CASE("mu_pair integer-case vanishing is exact") {
  const Parameters p{{Complex(0.0), Complex(-2.0), Complex(0.3)}, kCanonical.beta};
  CHECK(mu_pair(1, 2, p) == Complex(0.0));
  const Parameters q{{Complex(0.0), Complex(0.3), Complex(0.3 - 5.0)}, kCanonical.beta};
  CHECK(mu_pair(2, 3, q) == Complex(0.0));
  CHECK(std::abs(mu_pair(1, 2, kCanonical)) > 0.1);
}

TEST_CASE("mu_pair measured instance alpha=(0,-1/2), beta=(1,2,.)") {
  // principal-branch closed form; the measured jump at arg x = pi fixes the
  // sign: mu1 = -4 sqrt(pi) (frozen from the high-precision measurement)
  const Parameters p{{Complex(0.0), Complex(-0.5), Complex(0.3)},
                     {Complex(1.0), Complex(2.0), Complex(1.0, 1.5)}};
  const Complex mu1 = mu_pair(1, 2, p);
  CHECK(rel_err(mu1, Complex(-4.0 * std::sqrt(kPi))) < 1e-13);
}

TEST_CASE("mu_13 case dispatch") {
  // both pairs integer: exact zero
  const Parameters pz{{Complex(0.0), Complex(-3.0), Complex(-5.0)}, kCanonical.beta};
  CHECK(mu_13(pz, classify(pz)) == Complex(0.0));
  // not covered: alpha3-alpha1 in Z<=-4, alpha2-alpha1 in Z<=-2, alpha3-alpha2 in Z>=-1
  const Parameters pn{{Complex(0.0), Complex(-5.0), Complex(-4.0)}, kCanonical.beta};
  CHECK_THROWS_AS((void)mu_13(pn, classify(pn)), CaseNotCovered);
  // excluded case propagates
  const Parameters pe{{Complex(0.0), Complex(0.5), Complex(1.5)}, kCanonical.beta};
  CHECK_THROWS_AS((void)stokes_matrices(pe), ExcludedCase);
}

TEST_CASE("equal-modulus regime gate on mu_13") {
  const std::array<Complex, 3> beq{Complex(0.0), Complex(1.0) - std::exp(Complex(0.0, 2.0)),
                                   Complex(1.0)};
  const Parameters ok{{Complex(0.0), Complex(0.25), Complex(-0.5)}, beq};
  CHECK_NOTHROW((void)mu_13(ok, classify(ok)));
  // alpha3-alpha2 in Z<=-2 rejected in the equal-modulus regime
  const Parameters bad{{Complex(0.0), Complex(0.25), Complex(-1.75)}, beq};
  CHECK_THROWS_AS((void)mu_13(bad, classify(bad)), RegimeUnsupported);
}

TEST_CASE("stokes matrices structure") {
  const StokesData d = stokes_matrices(kCanonical);
  CHECK(d.St1(0, 1) == d.mu1);
  CHECK(d.St2(0, 2) == d.mu2);
  CHECK(d.St3(1, 2) == d.mu3);
  for (const Matrix3* m : {&d.St1, &d.St2, &d.St3}) {
    CHECK(std::abs((*m).det() - 1.0) < 1e-15);
    CHECK((*m)(1, 0) == Complex(0.0));
    CHECK((*m)(2, 0) == Complex(0.0));
    CHECK((*m)(2, 1) == Complex(0.0));
  }
  // product structure: (1,3) of St1 St2 St3 is mu2 + mu1 mu3
  const Matrix3 prod = d.St1 * d.St2 * d.St3;
  CHECK(rel_err(prod(0, 2), d.mu2 + d.mu1 * d.mu3) < 1e-14);
  CHECK(rel_err(prod(0, 1), d.mu1) < 1e-14);
  CHECK(rel_err(prod(1, 2), d.mu3) < 1e-14);
}

TEST_CASE("monodromy product diagonal and degenerate case") {
  const StokesData d = stokes_matrices(kCanonical);
  const Matrix3 m = monodromy_product(d);
  const auto fm = formal_monodromy(kCanonical);
  for (int k = 0; k < 3; ++k) CHECK(rel_err(m(k, k), fm[static_cast<std::size_t>(k)]) < 1e-14);

  const Parameters pz{{Complex(0.0), Complex(-3.0), Complex(-5.0)}, kCanonical.beta};
  const StokesData dz = stokes_matrices(pz);
  CHECK(dz.mu1 == Complex(0.0));
  CHECK(dz.mu3 == Complex(0.0));
  const Matrix3 mz = monodromy_product(dz);
  const auto fmz = formal_monodromy(pz);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(mz(i, j) - (i == j ? fmz[static_cast<std::size_t>(i)] : Complex(0.0))) <
            1e-14);
}

TEST_CASE("eigenvalues match exponents at infinity") {
  const Matrix3 m = monodromy_product(stokes_matrices(kCanonical));
  const auto rho = exponents_at_infinity(kCanonical);
  const Complex want[3] = {std::exp(-kTwoPi * kI * rho[0]), std::exp(-kTwoPi * kI * rho[1]),
                           std::exp(-kTwoPi * kI * rho[2])};
  for (int k = 0; k < 3; ++k) CHECK(rel_err(m(k, k), want[k]) < 1e-13);
}

TEST_CASE("conjugation relation M St M^{-1} entrywise") {
  const StokesData d = stokes_matrices(kCanonical);
  const auto fm = d.formal_monodromy;
  const Matrix3 M = Matrix3::diag(fm[0], fm[1], fm[2]);
  const Matrix3 Minv = Matrix3::diag(1.0 / fm[0], 1.0 / fm[1], 1.0 / fm[2]);
  for (const Matrix3* st : {&d.St1, &d.St2, &d.St3}) {
    const Matrix3 conj = M * (*st) * Minv;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Complex want =
            (*st)(i, j) * fm[static_cast<std::size_t>(i)] / fm[static_cast<std::size_t>(j)];
        CHECK(std::abs(conj(i, j) - want) < 1e-12);
      }
  }
}

TEST_CASE("closed forms match the measured jumps (canonical)") {
  EngineOptions opt;
  opt.tol_quad = 1e-12;
  const StokesCheckReport rep = check_stokes(kCanonical, 1e-6, opt);
  for (int k = 0; k < 3; ++k) {
    CAPTURE(k);
    CAPTURE(rep.dir[static_cast<std::size_t>(k)].rel_err);
    CHECK(rep.dir[static_cast<std::size_t>(k)].pass);
    CHECK(rep.dir[static_cast<std::size_t>(k)].off_entry_max < 1e-7);
  }
}
