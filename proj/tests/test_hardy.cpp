#include <gtest/gtest.h>

#include <random>

#include "cslab/fixtures.hpp"
#include "cslab/hardy.hpp"

using namespace cslab;

namespace {

HardyCoeffs random_coeffs(std::mt19937_64& rng, int K) {
  HardyCoeffs h = HardyCoeffs::zeros(K);
  for (int n = 0; n < K; ++n) h[n] = cplx(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
  return h;
}

// sum_m u(n+m) conj(u(m)) by direct summation.
HardyCoeffs modulus_oracle(const HardyCoeffs& u) {
  HardyCoeffs out = HardyCoeffs::zeros(u.K());
  for (int n = 0; n < u.K(); ++n) {
    for (int m = 0; n + m < u.K(); ++m) out[n] += u[n + m] * std::conj(u[m]);
  }
  return out;
}

}  // namespace

TEST(Hardy, InnerProductOfModes) {
  const HardyCoeffs e1 = HardyCoeffs::mode(4, 1);
  const HardyCoeffs one = HardyCoeffs::mode(4, 0);
  EXPECT_EQ(inner_product(e1, e1), cplx(1.0));
  EXPECT_EQ(inner_product(one, e1), cplx(0.0));
}

TEST(Hardy, InnerProductConjugateLinearInSecondSlot) {
  std::mt19937_64 rng(11);
  const HardyCoeffs u = random_coeffs(rng, 9), v = random_coeffs(rng, 9);
  HardyCoeffs w = v;
  w.vec() *= cplx(0.0, 2.0);
  EXPECT_NEAR(std::abs(inner_product(u, w) - cplx(0.0, -2.0) * inner_product(u, v)), 0.0, 1e-14);
  const cplx self = inner_product(u, u);
  EXPECT_NEAR(self.imag(), 0.0, 1e-15);
  EXPECT_NEAR(self.real(), u.norm2(), 1e-14);
}

TEST(Hardy, InnerProductDimensionMismatch) {
  try {
    inner_product(HardyCoeffs::zeros(3), HardyCoeffs::zeros(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Hardy, ShiftAndAdjoint) {
  std::mt19937_64 rng(3);
  HardyCoeffs h = random_coeffs(rng, 8);
  h[7] = 0.0;
  const HardyCoeffs s = apply_shift(h, ShiftDirection::kForward);
  EXPECT_EQ(s[0], cplx(0.0));
  for (int n = 1; n < 8; ++n) EXPECT_EQ(s[n], h[n - 1]);
  const HardyCoeffs back = apply_shift(s, ShiftDirection::kAdjoint);
  EXPECT_EQ((back.vec() - h.vec()).norm(), 0.0);  // S*S = Id
  // S S* removes the mean.
  const HardyCoeffs ss = apply_shift(apply_shift(h, ShiftDirection::kAdjoint), ShiftDirection::kForward);
  EXPECT_EQ(ss[0], cplx(0.0));
  for (int n = 1; n < 7; ++n) EXPECT_EQ(ss[n], h[n]);
}

TEST(Hardy, ShiftOverflowWarns) {
  HardyCoeffs h = HardyCoeffs::mode(4, 3);
  Warnings w;
  apply_shift(h, ShiftDirection::kForward, &w);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].code, WarningCode::kTruncationOverflow);
}

TEST(Hardy, ToeplitzExamples) {
  FullCoeffs one(5);
  one.at(0) = 1.0;
  EXPECT_TRUE(toeplitz_block(one, 5).isApprox(Eigen::MatrixXcd::Identity(5, 5)));
  FullCoeffs e1(5);
  e1.at(1) = 1.0;
  const Eigen::MatrixXcd S = toeplitz_block(e1, 5);
  for (int j = 0; j < 5; ++j) {
    for (int k = 0; k < 5; ++k) EXPECT_EQ(S(j, k), cplx(j == k + 1 ? 1.0 : 0.0));
  }
}

TEST(Hardy, ToeplitzMatchesProjectedProduct) {
  // 1 + 0.5 e^{ix}: compare with Pi(u f) on basis vectors computed by convolution.
  const int K = 6;
  HardyCoeffs u = HardyCoeffs::zeros(K);
  u[0] = 1.0;
  u[1] = 0.5;
  const Eigen::MatrixXcd T = toeplitz_block(FullCoeffs::from_hardy(u), K);
  for (int k = 0; k < K; ++k) {
    const HardyCoeffs col = hardy_product(u, HardyCoeffs::mode(K, k));
    EXPECT_NEAR((T.col(k) - col.vec()).norm(), 0.0, 1e-15);
  }
  EXPECT_EQ(T(2, 2), cplx(1.0));
  EXPECT_EQ(T(3, 2), cplx(0.5));
}

TEST(Hardy, ToeplitzTriangularity) {
  std::mt19937_64 rng(5);
  const HardyCoeffs u = random_coeffs(rng, 7);
  const Eigen::MatrixXcd A = toeplitz_block(FullCoeffs::from_hardy(u), 7);
  const Eigen::MatrixXcd B = toeplitz_block(FullCoeffs::conjugate_of(u), 7);
  for (int j = 0; j < 7; ++j) {
    for (int k = j + 1; k < 7; ++k) {
      EXPECT_EQ(A(j, k), cplx(0.0));
      EXPECT_EQ(B(k, j), cplx(0.0));
    }
  }
}

TEST(Hardy, HilbertTransform) {
  FullCoeffs f(3);
  f.at(1) = 1.0;
  f.at(0) = 2.0;
  f.at(-2) = 1.0;
  const FullCoeffs h = hilbert_transform(f);
  EXPECT_EQ(h.at(1), cplx(0.0, -1.0));
  EXPECT_EQ(h.at(0), cplx(0.0));
  EXPECT_EQ(h.at(-2), cplx(0.0, 1.0));
}

TEST(Hardy, SzegoProjectorFromHilbert) {
  // Pi f = (f + iHf + <f|1>)/2 on random f.
  std::mt19937_64 rng(17);
  const int K = 9;
  FullCoeffs f(K);
  for (int n = -(K - 1); n < K; ++n) f.at(n) = cplx(uniform01(rng), uniform01(rng));
  const FullCoeffs h = hilbert_transform(f);
  const HardyCoeffs pf = szego_project(f);
  for (int n = 0; n < K; ++n) {
    const cplx expect = (f.at(n) + cplx(0, 1) * h.at(n) + (n == 0 ? f.at(0) : 0.0)) / 2.0;
    EXPECT_NEAR(std::abs(pf[n] - expect), 0.0, 1e-15);
  }
}

TEST(Hardy, SzegoIdempotent) {
  std::mt19937_64 rng(19);
  FullCoeffs f(6);
  for (int n = -5; n < 6; ++n) f.at(n) = cplx(uniform01(rng), uniform01(rng));
  const HardyCoeffs once = szego_project(f);
  const HardyCoeffs twice = szego_project(FullCoeffs::from_hardy(once));
  EXPECT_EQ((once.vec() - twice.vec()).norm(), 0.0);
}

TEST(Hardy, GridSamples) {
  const std::vector<cplx> c = to_grid(HardyCoeffs::mode(3, 0), 8);
  for (const cplx& v : c) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-15);
  const std::vector<cplx> s = to_grid(HardyCoeffs::mode(2, 1), 4);
  const cplx expect[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  for (int m = 0; m < 4; ++m) EXPECT_NEAR(std::abs(s[m] - expect[m]), 0.0, 1e-15);
}

TEST(Hardy, PropertyGridRoundTripAndParseval) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int K = 5 + static_cast<int>(60 * uniform01(rng));
    const HardyCoeffs h = random_coeffs(rng, K);
    const int M = 2 * K;
    const std::vector<cplx> g = to_grid(h, M);
    Warnings w;
    const HardyCoeffs back = from_grid(g, K, &w);
    EXPECT_LT((back.vec() - h.vec()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(w.empty());
    double mean = 0.0;
    for (const cplx& v : g) mean += std::norm(v);
    EXPECT_NEAR(mean / M, h.norm2(), 1e-12);
  }
}

TEST(Hardy, FromGridAliasWarning) {
  const std::vector<cplx> g = to_grid(HardyCoeffs::mode(8, 6), 16);
  Warnings w;
  from_grid(g, 4, &w);
  ASSERT_FALSE(w.empty());
  EXPECT_EQ(w[0].code, WarningCode::kAliasWarning);
}

TEST(Hardy, BlaschkeExamples) {
  const HardyCoeffs z = blaschke_to_coeffs(BlaschkeProduct{0.0, 1, {}}, 4);
  EXPECT_EQ(z[0], cplx(0.0));
  EXPECT_EQ(z[1], cplx(1.0));
  EXPECT_EQ(z[2], cplx(0.0));
  const HardyCoeffs c = blaschke_to_coeffs(BlaschkeProduct{0.7, 0, {}}, 3);
  EXPECT_NEAR(std::abs(c[0] - std::polar(1.0, 0.7)), 0.0, 1e-15);
  EXPECT_EQ(c[1], cplx(0.0));
  const HardyCoeffs psi = blaschke_to_coeffs(BlaschkeProduct{0.0, 0, {0.5}}, 4);
  const double expect[4] = {-0.5, 0.75, 0.375, 0.1875};
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(std::abs(psi[n] - expect[n]), 0.0, 1e-15);
}

TEST(Hardy, BlaschkeAgreesWithContourCoefficients) {
  const BlaschkeProduct psi{0.3, 1, {cplx(0.4, 0.2), cplx(-0.5, 0.1), cplx(0.4, 0.2)}};
  const int K = 32, M = 512;
  const HardyCoeffs c = blaschke_to_coeffs(psi, K);
  for (int n = 0; n < K; ++n) {
    cplx acc = 0.0;
    for (int m = 0; m < M; ++m) {
      const double x = 2 * M_PI * m / M;
      acc += psi.evaluate(std::polar(1.0, x)) * std::polar(1.0, -n * x);
    }
    EXPECT_NEAR(std::abs(c[n] - acc / double(M)), 0.0, 1e-13);
  }
}

TEST(Hardy, PropertyBlaschkeUnimodular) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    BlaschkeProduct psi;
    psi.theta = 2 * M_PI * uniform01(rng);
    psi.m0 = static_cast<int>(3 * uniform01(rng));
    const int r = 1 + static_cast<int>(3 * uniform01(rng));
    for (int j = 0; j < r; ++j) psi.poles.push_back(std::polar(0.8 * uniform01(rng), 6.3 * uniform01(rng)));
    const HardyCoeffs c = blaschke_to_coeffs(psi, 256);
    for (const cplx& v : to_grid(c, 512)) EXPECT_LT(std::abs(std::abs(v) - 1.0), 1e-10);
  }
}

TEST(Hardy, BlaschkePoleOnCircle) {
  try {
    blaschke_to_coeffs(BlaschkeProduct{0.0, 0, {cplx(1.0, 0.0)}}, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPoleOnCircle);
  }
}

TEST(Hardy, ModulusSquaredExamples) {
  const HardyCoeffs pm = projected_modulus_squared(HardyCoeffs::mode(6, 3, 1.0));
  EXPECT_NEAR(std::abs(pm[0] - 1.0), 0.0, 1e-15);
  for (int n = 1; n < 6; ++n) EXPECT_NEAR(std::abs(pm[n]), 0.0, 1e-15);
  const HardyCoeffs two = projected_modulus_squared(HardyCoeffs(std::vector<cplx>{1.0, 1.0}));
  EXPECT_NEAR(std::abs(two[0] - 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(two[1] - 1.0), 0.0, 1e-15);
}

TEST(Hardy, PropertyModulusSquaredMatchesConvolution) {
  // Covers both the direct path (small K) and the padded FFT path.
  std::mt19937_64 rng(31);
  for (int K : {1, 7, 33, 63, 64, 100, 256}) {
    const HardyCoeffs u = random_coeffs(rng, K);
    const HardyCoeffs fast = projected_modulus_squared(u);
    const HardyCoeffs slow = modulus_oracle(u);
    EXPECT_LT((fast.vec() - slow.vec()).cwiseAbs().maxCoeff(), 1e-12 * std::max(1, K / 8)) << K;
    EXPECT_NEAR(fast[0].real(), u.norm2(), 1e-12 * K);
  }
}

TEST(Hardy, TranslateAndDerivative) {
  HardyCoeffs u = HardyCoeffs::zeros(4);
  u[1] = 1.0;
  u[3] = 2.0;
  const HardyCoeffs t = translate(u, M_PI / 2);
  EXPECT_NEAR(std::abs(t[1] - cplx(0, -1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t[3] - cplx(0, 2)), 0.0, 1e-15);
  const HardyCoeffs d = derivative(u);
  EXPECT_EQ(d[1], cplx(0, 1));
  EXPECT_EQ(d[3], cplx(0, 6));
}

TEST(Hardy, HornerEvaluation) {
  const Fixture f = appendix1(0.5, 128);
  const cplx z(0.3, -0.4);
  EXPECT_NEAR(std::abs(evaluate(f.u, z) - std::sqrt(0.75) / (1.0 - 0.5 * z)), 0.0, 1e-14);
}
