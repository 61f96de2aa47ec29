#include <gtest/gtest.h>

#include <random>

#include "cslab/fixtures.hpp"
#include "cslab/lax.hpp"

using namespace cslab;

namespace {

// L = D -+ T_u T_conj(u) assembled entry by entry: (T_u T_ubar)(j,k) = sum_{l<=min(j,k)} u(j-l) conj(u(k-l)).
Eigen::MatrixXcd lax_oracle(const HardyCoeffs& u, Sign s) {
  const int K = u.K();
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(K, K);
  for (int j = 0; j < K; ++j) {
    L(j, j) = j;
    for (int k = 0; k < K; ++k) {
      cplx acc = 0.0;
      for (int l = 0; l <= std::min(j, k); ++l) acc += u[j - l] * std::conj(u[k - l]);
      L(j, k) -= sign_factor(s) * acc;
    }
  }
  return L;
}

}  // namespace

TEST(Lax, MatchesEntrywiseOracle) {
  std::mt19937_64 rng(43);
  const HardyCoeffs u = random_potential(rng, 24, 0.8);
  for (Sign s : {Sign::kFocusing, Sign::kDefocusing}) {
    const LaxBlock L = build_lax(u, s);
    EXPECT_LT((L.matrix - lax_oracle(u, s)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((L.matrix - L.matrix.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Lax, ZeroPotential) {
  const HardyCoeffs u = HardyCoeffs::zeros(8);
  const LaxBlock L = build_lax(u, Sign::kDefocusing);
  for (int j = 0; j < 8; ++j) EXPECT_EQ(L.matrix(j, j), cplx(j));
  EXPECT_EQ(build_b(u, Sign::kFocusing).matrix.norm(), 0.0);
  const SpectralDecomposition dec = spectral_decompose(L);
  for (int n = 0; n < 8; ++n) EXPECT_EQ(dec.eigenvalues[n], n);
  const IdentityReport r = check_spectral_identities(u, dec);
  EXPECT_EQ(r.shift_commutator, 0.0);
}

TEST(Lax, PlaneWaveDoubleZero) {
  const HardyCoeffs u = HardyCoeffs::mode(16, 1);
  const LaxBlock L = build_lax(u, Sign::kFocusing);
  EXPECT_LT((L.matrix * HardyCoeffs::mode(16, 0).vec()).norm(), 1e-15);
  EXPECT_LT((L.matrix * HardyCoeffs::mode(16, 1).vec()).norm(), 1e-15);
  const SpectralDecomposition dec = spectral_decompose(L);
  const GapProfile gp = gap_profile(dec, u);
  EXPECT_NEAR(gp.gap(1), -1.0, 1e-14);
}

TEST(Lax, ConstantSymbol) {
  const cplx C(0.6, 0.8);
  const HardyCoeffs u = HardyCoeffs::mode(10, 0, C);
  const Eigen::VectorXd ev = eigenvalues_only(build_lax(u, Sign::kFocusing));
  for (int n = 0; n < 10; ++n) EXPECT_NEAR(ev[n], n - 1.0, 1e-13);
  const Eigen::MatrixXcd B = build_b(u, Sign::kFocusing).matrix;
  EXPECT_LT((B - cplx(0.0, 1.0) * Eigen::MatrixXcd::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Lax, Appendix1Spectrum) {
  const Fixture f = appendix1(0.5, 256);
  const SpectralDecomposition dec = spectral_decompose(build_lax(f.u, f.sign));
  for (int n = 0; n < 20; ++n) EXPECT_NEAR(dec.eigenvalues[n], n - 1.0, 1e-8);
  const GapProfile gp = gap_profile(dec, f.u);
  for (int n = 1; n < dec.reliable_count(); ++n) EXPECT_NEAR(gp.gap(n), 0.0, 1e-8) << n;
  const IdentityReport r = check_spectral_identities(f.u, dec);
  EXPECT_LT(r.max(), 1e-8);
  const BBlock B = build_b(f.u, f.sign);
  const int keep = 256 - 8;
  EXPECT_LT((B.matrix + B.matrix.adjoint()).topLeftCorner(keep, keep).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Lax, Appendix2DoubleEigenvalue) {
  const Fixture f = appendix2(0.6, 256);
  const SpectralDecomposition dec = spectral_decompose(build_lax(f.u, f.sign));
  const double expect[5] = {-1.0, 0.0, 0.0, 1.0, 2.0};
  for (int n = 0; n < 5; ++n) EXPECT_NEAR(dec.eigenvalues[n], expect[n], 1e-8);
  auto [lo, hi] = dec.cluster_range(1);
  EXPECT_EQ(lo, 1);
  EXPECT_EQ(hi, 2);
  const GapVanishingReport g = corollary_gap_vanishing_check(f.u, dec);
  EXPECT_NE(std::find(g.vanishing.begin(), g.vanishing.end(), 2), g.vanishing.end());
}

TEST(Lax, DecompositionInvariants) {
  std::mt19937_64 rng(47);
  const HardyCoeffs u = random_potential(rng, 96, 0.8);
  for (Sign s : {Sign::kFocusing, Sign::kDefocusing}) {
    const LaxBlock L = build_lax(u, s);
    const SpectralDecomposition dec = spectral_decompose(L);
    const Eigen::MatrixXcd& F = dec.eigenvectors;
    EXPECT_LT((F.adjoint() * F - Eigen::MatrixXcd::Identity(96, 96)).cwiseAbs().maxCoeff(), 1e-10);
    for (int n = 0; n < dec.reliable_count(); ++n) {
      EXPECT_LT((L.matrix * F.col(n) - dec.eigenvalues[n] * F.col(n)).norm(), 1e-9);
      int first = 0;
      while (std::abs(F(first, n)) <= 1e-8) ++first;
      EXPECT_NEAR(F(first, n).imag(), 0.0, 1e-14);
      EXPECT_GT(F(first, n).real(), 0.0);
    }
    if (s == Sign::kDefocusing) { EXPECT_GE(dec.eigenvalues[0], -1e-10); }
  }
}

TEST(Lax, PropertyGapLaws) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 25; ++trial) {
    const HardyCoeffs u = random_potential(rng, 96, 0.8);
    const SpectralDecomposition d = spectral_decompose(build_lax(u, Sign::kDefocusing));
    const GapProfile gp = gap_profile(d, u);
    for (int n = 1; n < d.reliable_count(); ++n) EXPECT_GE(gp.gap(n), -1e-8);
    EXPECT_TRUE(gp.collinearity_set.empty());
    const Eigen::VectorXd ev = eigenvalues_only(build_lax(u, Sign::kFocusing));
    for (int n = 2; n < 84; ++n) EXPECT_GE(ev[n] - ev[n - 2], 1.0 - 1e-8);
    HardyCoeffs v = u;
    v.vec() *= std::sqrt(0.4 / u.norm2());
    const Eigen::VectorXd es = eigenvalues_only(build_lax(v, Sign::kFocusing));
    for (int n = 1; n < 84; ++n) EXPECT_GT(es[n] - es[n - 1], 0.6 - 1e-8);
  }
}

TEST(Lax, PropertyTranslationInvariantSpectrum) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 5; ++trial) {
    const HardyCoeffs u = random_potential(rng, 64, 0.7);
    const double a = 2 * M_PI * uniform01(rng);
    for (Sign s : {Sign::kFocusing, Sign::kDefocusing}) {
      const Eigen::VectorXd e0 = eigenvalues_only(build_lax(u, s));
      const Eigen::VectorXd e1 = eigenvalues_only(build_lax(translate(u, a), s));
      EXPECT_LT((e0 - e1).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(Lax, PropertyIdentitiesOnRandomPotentials) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 6; ++trial) {
    const HardyCoeffs u = random_potential(rng, 128, 0.7);
    for (Sign s : {Sign::kFocusing, Sign::kDefocusing}) {
      const SpectralDecomposition dec = spectral_decompose(build_lax(u, s));
      const IdentityReport r = check_spectral_identities(u, dec);
      EXPECT_LT(r.max(), 1e-8) << trial;
    }
  }
}

TEST(Lax, DefocusingWaveOverlapStructure) {
  const Fixture f = wave_fixture(defocusing_reference_wave(), 256, "w");
  const SpectralDecomposition dec = spectral_decompose(build_lax(f.u, f.sign));
  const GapVanishingReport g = corollary_gap_vanishing_check(f.u, dec);
  EXPECT_TRUE(g.holds);
  // Exactly one index n >= 1 keeps a nonzero overlap.
  EXPECT_EQ(static_cast<int>(g.vanishing.size()), dec.reliable_count() - 2);
  EXPECT_NEAR(dec.eigenvalues[0], 4.0 / 3.0, 1e-10);
}

TEST(Lax, EigenspaceAlternative) {
  for (const Fixture& f : {appendix1(0.5, 128), appendix2(0.6, 192)}) {
    const SpectralDecomposition dec = spectral_decompose(build_lax(f.u, f.sign));
    const EigenspaceAlternativeReport r = eigenspace_alternative_check(dec);
    EXPECT_TRUE(r.holds) << f.name;
    EXPECT_FALSE(r.checked.empty());
  }
}

TEST(Lax, ApplierMatchesDenseBlocks) {
  std::mt19937_64 rng(67);
  const HardyCoeffs u = random_potential(rng, 48, 0.6);
  Eigen::VectorXcd g(48);
  for (int n = 0; n < 48; ++n) g[n] = cplx(uniform01(rng), uniform01(rng)) * std::pow(0.7, n);
  for (Sign s : {Sign::kFocusing, Sign::kDefocusing}) {
    const LaxApplier A(u, s);
    EXPECT_LT((A.apply_l(g) - build_lax(u, s).matrix * g).norm(), 1e-12);
    // B's quadratic term is truncated differently; compare away from the edge.
    const Eigen::VectorXcd diff = A.apply_b(g) - build_b(u, s).matrix * g;
    EXPECT_LT(diff.head(24).norm(), 1e-10);
  }
}
