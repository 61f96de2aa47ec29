#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "cslab/hardy.hpp"
#include "cslab/lax.hpp"

namespace cslab {

struct Pole {
  cplx p;
  int mult = 1;
};

// u = z^{m0} prod_j B_j^{m_j - 1} (a + sum_j c_j / (1 - p_j z)), B_j = (z - conj p_j)/(1 - p_j z).
struct FiniteGapPotential {
  Sign sign = Sign::kFocusing;
  int m0 = 0;
  std::vector<Pole> poles;
  cplx a = 0.0;
  std::vector<cplx> residues;
  double predicted_eig = 0.0;
  double newton_residual = 0.0;
  int iterations = 0;

  int N() const;
  BlaschkeProduct ladder() const;
};

struct NewtonOptions {
  int max_iter = 100;
  double target = 1e-12;
};

// Residuals of the residue conditions, one per pole.
std::vector<cplx> residue_conditions(Sign sign, const std::vector<Pole>& poles, cplx a,
                                     const std::vector<cplx>& c);

double predicted_eigenvalue(Sign sign, int m0, cplx a, const std::vector<cplx>& c);

// a is pinned (default 0 when m0 = 0, 1 otherwise); init overrides the starting residues.
FiniteGapPotential solve_residue_system(Sign sign, int m0, const std::vector<Pole>& poles,
                                        std::optional<cplx> a = std::nullopt,
                                        std::optional<std::vector<cplx>> init = std::nullopt,
                                        const NewtonOptions& opts = {});

cplx evaluate_potential(const FiniteGapPotential& fg, cplx z);
HardyCoeffs potential_coeffs(const FiniteGapPotential& fg, int K);
double predicted_l2(const FiniteGapPotential& fg);

struct BlaschkeEigenCheck {
  double nu = 0.0;
  std::vector<double> residuals;  // k = 0..kmax
};

BlaschkeEigenCheck blaschke_eigen_check(const HardyCoeffs& u, const BlaschkeProduct& psi,
                                        Sign sign, int kmax);

struct Classification {
  bool is_finite_gap = false;
  int m = 1;
  int N_estimate = 0;
  double ladder_eigenvalue = 0.0;  // eigenvalue of the ladder base psi
  Eigen::VectorXcd psi;            // ladder base, unit norm
};

// Throws Inconclusive when nonzero gaps reach the reliability edge.
Classification classify(const SpectralDecomposition& dec, const HardyCoeffs& u,
                        double tol = 1e-7);

struct InversionData {
  Eigen::VectorXcd X;  // <u|f_n>
  Eigen::VectorXcd Y;  // <1|f_n>
  Eigen::MatrixXcd M;  // M(m, p) = <f_p | S f_m>
  int reduced_dim = 0; // N + 1 when reduction applies, else 0
  Eigen::VectorXcd Xr;
  Eigen::VectorXcd Yr;
  Eigen::MatrixXcd Mr;
};

// reduce=false skips classification and the (N+1) block.
InversionData inversion_data(const HardyCoeffs& u, const SpectralDecomposition& dec,
                             bool reduce = true, double tol = 1e-7);

// <(Id - zM)^{-1} X | Y>.
cplx reconstruct(const Eigen::MatrixXcd& M, const Eigen::VectorXcd& X, const Eigen::VectorXcd& Y,
                 cplx z);
cplx reconstruct(const InversionData& data, cplx z, bool reduced = false);

}  // namespace cslab
