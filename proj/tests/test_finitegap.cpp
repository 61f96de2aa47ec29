#include <gtest/gtest.h>

#include <random>

#include "cslab/finitegap.hpp"
#include "cslab/fixtures.hpp"
#include "cslab/lax.hpp"

using namespace cslab;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIoError;
}

// (Id - z S*)^{-1} u evaluated at 1 through the Neumann series: sum_n u(n) z^n.
cplx neumann_oracle(const HardyCoeffs& u, cplx z) {
  cplx acc = 0.0, zn = 1.0;
  for (int n = 0; n < u.K(); ++n, zn *= z) acc += u[n] * zn;
  return acc;
}

}  // namespace

TEST(FiniteGap, SinglePoleFocusingSubstitution) {
  // a = -1/3, c = 1 satisfies the focusing condition at p = 0.5.
  const std::vector<cplx> F = residue_conditions(Sign::kFocusing, {{0.5, 1}}, -1.0 / 3.0, {1.0});
  EXPECT_NEAR(std::abs(F[0]), 0.0, 1e-15);
  const FiniteGapPotential fg =
      solve_residue_system(Sign::kFocusing, 0, {{0.5, 1}}, -1.0 / 3.0, std::vector<cplx>{0.9});
  EXPECT_NEAR(std::abs(fg.residues[0] - 1.0), 0.0, 1e-12);
  EXPECT_LT(fg.newton_residual, 1e-12);
  // Without a start the aligned root is taken: (4/3)c^2 - c/3 = 1 also holds at c = -3/4.
  const FiniteGapPotential other = solve_residue_system(Sign::kFocusing, 0, {{0.5, 1}}, -1.0 / 3.0);
  EXPECT_NEAR(std::abs(other.residues[0] + 0.75), 0.0, 1e-12);
}

TEST(FiniteGap, SinglePoleDefocusing) {
  const FiniteGapPotential fg = solve_residue_system(Sign::kDefocusing, 0, {{0.5, 1}}, -7.0 / 3.0);
  EXPECT_NEAR(std::abs(fg.residues[0] - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(fg.predicted_eig, 28.0 / 9.0, 1e-12);
  EXPECT_NEAR(predicted_l2(fg), 19.0 / 9.0, 1e-12);
}

TEST(FiniteGap, DefocusingWithZeroAIsInfeasible) {
  EXPECT_EQ(code_of([] { solve_residue_system(Sign::kDefocusing, 0, {{0.5, 1}}, cplx(0.0)); }),
            ErrorCode::kInfeasibleSign);
}

TEST(FiniteGap, InvalidPoles) {
  EXPECT_EQ(code_of([] { solve_residue_system(Sign::kFocusing, 0, {{cplx(1.0, 0.0), 1}}); }),
            ErrorCode::kPoleOnCircle);
  EXPECT_EQ(code_of([] { solve_residue_system(Sign::kFocusing, 0, {{0.3, 1}, {0.3, 2}}); }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of([] { solve_residue_system(Sign::kFocusing, 1, {{0.3, 1}}, cplx(0.0)); }),
            ErrorCode::kInvalidParameter);
}

TEST(FiniteGap, DivergenceIsReported) {
  NewtonOptions opts;
  opts.max_iter = 0;
  try {
    solve_residue_system(Sign::kFocusing, 0, {{0.5, 1}, {0.2, 1}}, std::nullopt, std::nullopt, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNewtonDivergence);
    ASSERT_TRUE(e.residual().has_value());
    EXPECT_GT(*e.residual(), 0.0);
  }
}

TEST(FiniteGap, TwoPoleFocusing) {
  const FiniteGapPotential fg =
      solve_residue_system(Sign::kFocusing, 0, {{0.5, 1}, {cplx(0.3, 0.2), 1}});
  EXPECT_LT(fg.newton_residual, 1e-12);
  EXPECT_EQ(fg.a, cplx(0.0));
  const HardyCoeffs u = potential_coeffs(fg, 256);
  EXPECT_NEAR(predicted_l2(fg), u.norm2(), 1e-10);
  const SpectralDecomposition dec = spectral_decompose(build_lax(u, fg.sign));
  const GapProfile gp = gap_profile(dec, u);
  for (int n = fg.N() + 1; n < dec.reliable_count(); ++n) EXPECT_LT(std::abs(gp.gap(n)), 1e-7);
  const BlaschkeEigenCheck bc = blaschke_eigen_check(u, fg.ladder(), fg.sign, 8);
  EXPECT_NEAR(bc.nu, fg.predicted_eig, 1e-8);
  for (double r : bc.residuals) EXPECT_LT(r, 1e-7);
}

TEST(FiniteGap, GeometricCoefficients) {
  const FiniteGapPotential fg = solve_residue_system(Sign::kFocusing, 0, {{0.5, 1}}, -1.0 / 3.0);
  const HardyCoeffs u = potential_coeffs(fg, 64);
  const cplx a = fg.a, c = fg.residues[0];
  EXPECT_NEAR(std::abs(u[0] - (a + c)), 0.0, 1e-14);
  cplx pk = 0.5;
  for (int n = 1; n < 64; ++n, pk *= 0.5) EXPECT_NEAR(std::abs(u[n] - c * pk), 0.0, 1e-14);
}

TEST(FiniteGap, AliasingDetected) {
  const FiniteGapPotential fg = solve_residue_system(Sign::kFocusing, 0, {{0.95, 1}});
  EXPECT_EQ(code_of([&] { potential_coeffs(fg, 16); }), ErrorCode::kNumericalAliasing);
}

TEST(FiniteGap, PlaneWaveNormIdentity) {
  // No poles: u = a z^N with nu_u = N - |a|^2.
  const FiniteGapPotential fg = solve_residue_system(Sign::kFocusing, 3, {}, cplx(2.0));
  EXPECT_NEAR(fg.predicted_eig, 3.0 - 4.0, 1e-15);
  EXPECT_NEAR(predicted_l2(fg), 4.0, 1e-15);
  const HardyCoeffs u = potential_coeffs(fg, 8);
  EXPECT_NEAR(std::abs(u[3] - 2.0), 0.0, 1e-14);
}

TEST(FiniteGap, FocusingWaveNormIdentity) {
  const Fixture f = wave_fixture(focusing_reference_wave(), 256, "w");
  const Eigen::VectorXd ev = eigenvalues_only(build_lax(f.u, f.sign));
  // N - nu_u = ||u||^2 with ||u||^2 = 7/9.
  const FiniteGapPotential fg =
      solve_residue_system(Sign::kFocusing, 0, {{0.5, 1}}, -1.0 / 3.0, std::vector<cplx>{1.0});
  EXPECT_NEAR(fg.predicted_eig, 2.0 / 9.0, 1e-12);
  bool found = false;
  for (int n = 0; n < 10; ++n) found = found || std::abs(ev[n] - 2.0 / 9.0) < 1e-8;
  EXPECT_TRUE(found);
}

TEST(FiniteGap, ClassifyExamples) {
  {
    const Fixture f = appendix1(0.5, 256);
    const Classification c = classify(spectral_decompose(build_lax(f.u, f.sign)), f.u);
    EXPECT_TRUE(c.is_finite_gap);
    EXPECT_EQ(c.m, 1);
    EXPECT_EQ(c.N_estimate, 1);
  }
  {
    const HardyCoeffs u = HardyCoeffs::mode(256, 3, 2.0);
    const Classification c = classify(spectral_decompose(build_lax(u, Sign::kFocusing)), u);
    EXPECT_TRUE(c.is_finite_gap);
    EXPECT_EQ(c.N_estimate, 3);
  }
  {
    const Fixture f = appendix2(0.6, 256);
    const Classification c = classify(spectral_decompose(build_lax(f.u, f.sign)), f.u);
    EXPECT_EQ(c.N_estimate, 2);
  }
}

TEST(FiniteGap, ClassifyNegativeControl) {
  // Slow algebraic decay: gaps never close inside the reliable window.
  std::mt19937_64 rng(79);
  HardyCoeffs u = HardyCoeffs::zeros(256);
  for (int n = 0; n < 256; ++n) u[n] = std::polar(0.5 / (1.0 + n), 6.28 * uniform01(rng));
  const SpectralDecomposition dec = spectral_decompose(build_lax(u, Sign::kFocusing));
  bool negative = false;
  try {
    negative = !classify(dec, u).is_finite_gap;
  } catch (const Error& e) {
    negative = e.code() == ErrorCode::kInconclusive;
  }
  EXPECT_TRUE(negative);
}

TEST(FiniteGap, PropertySolvedConfigurations) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 12; ++trial) {
    const Sign s = trial % 2 ? Sign::kDefocusing : Sign::kFocusing;
    const PoleConfig pc = random_pole_config(rng, s);
    const FiniteGapPotential fg = solve_residue_system(s, pc.m0, pc.poles, pc.a);
    EXPECT_LT(fg.newton_residual, 1e-12);
    for (const cplx& F : residue_conditions(s, fg.poles, fg.a, fg.residues)) EXPECT_LT(std::abs(F), 1e-10);
    const HardyCoeffs u = potential_coeffs(fg, 256);
    EXPECT_NEAR(predicted_l2(fg), u.norm2(), 1e-10);
    const SpectralDecomposition dec = spectral_decompose(build_lax(u, s));
    const Classification c = classify(dec, u);
    EXPECT_EQ(c.N_estimate, fg.N()) << trial;
    const BlaschkeEigenCheck bc = blaschke_eigen_check(u, fg.ladder(), s, 6);
    EXPECT_NEAR(bc.nu, fg.predicted_eig, 1e-8);
    for (double r : bc.residuals) EXPECT_LT(r, 1e-7);
  }
}

TEST(FiniteGap, ReconstructExamples) {
  const Fixture f = appendix1(0.5, 256);
  const SpectralDecomposition dec = spectral_decompose(build_lax(f.u, f.sign));
  const InversionData d = inversion_data(f.u, dec);
  EXPECT_NEAR(std::abs(reconstruct(d, 0.0) - f.u[0]), 0.0, 1e-12);
  const cplx closed = std::sqrt(0.75) * 4.0 / 3.0;
  EXPECT_NEAR(std::abs(reconstruct(d, 0.5) - closed), 0.0, 1e-12);
  ASSERT_EQ(d.reduced_dim, 2);
  for (int k = 0; k < 32; ++k) {
    const cplx z = std::polar(0.9, 2 * M_PI * k / 32);
    EXPECT_NEAR(std::abs(reconstruct(d, z, true) - neumann_oracle(f.u, z)), 0.0, 1e-8);
  }
  EXPECT_NEAR(d.X.squaredNorm(), f.u.norm2(), 1e-10);
  EXPECT_NEAR(d.Y.squaredNorm(), 1.0, 1e-10);
}

TEST(FiniteGap, ReconstructLinearPolynomial) {
  HardyCoeffs u = HardyCoeffs::zeros(8);
  u[0] = 0.1;
  u[1] = cplx(0.05, 0.02);
  const SpectralDecomposition dec = spectral_decompose(build_lax(u, Sign::kFocusing), 0);
  const InversionData d = inversion_data(u, dec, false);
  for (const cplx z : {cplx(0.3, 0.1), cplx(-0.7, 0.2)}) {
    EXPECT_NEAR(std::abs(reconstruct(d, z) - (u[0] + u[1] * z)), 0.0, 1e-12);
  }
}

TEST(FiniteGap, ReducedDenominatorRecoversPole) {
  const Fixture f = wave_fixture(defocusing_reference_wave(), 256, "w");
  const SpectralDecomposition dec = spectral_decompose(build_lax(f.u, f.sign));
  const InversionData d = inversion_data(f.u, dec);
  ASSERT_EQ(d.reduced_dim, 2);
  // det(Id - z M) is linear in z for this 2x2 block up to a constant factor; its root sits at 1/p.
  const Eigen::Matrix2cd M = d.Mr;
  const cplx tr = M.trace(), det = M.determinant();
  // det(Id - zM) = 1 - tr z + det z^2
  cplx root;
  if (std::abs(det) < 1e-12) {
    root = 1.0 / tr;
  } else {
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    const cplx r1 = (tr + disc) / (2.0 * det), r2 = (tr - disc) / (2.0 * det);
    root = std::abs(r1) < std::abs(r2) ? r1 : r2;
  }
  EXPECT_NEAR(1.0 / std::abs(root), 0.5, 1e-8);
  const double pf = std::abs(dec.eigenvectors.col(0).dot(
      apply_shift(dec.f(0), ShiftDirection::kForward).vec()));
  EXPECT_NEAR(pf, 0.5, 1e-8);
}

TEST(FiniteGap, SingularSystem) {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(1, 1);
  Eigen::VectorXcd X = Eigen::VectorXcd::Ones(1), Y = Eigen::VectorXcd::Ones(1);
  EXPECT_EQ(code_of([&] { reconstruct(M, X, Y, 1.0); }), ErrorCode::kSingularSystem);
}
