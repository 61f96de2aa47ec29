#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "cslab/hardy.hpp"

namespace cslab {

struct LaxBlock {
  Eigen::MatrixXcd matrix;
  Sign sign;
  HardyCoeffs source;
};

struct BBlock {
  Eigen::MatrixXcd matrix;
  Sign sign;
};

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;    // ascending
  Eigen::MatrixXcd eigenvectors;  // column n is f_n
  Sign sign;
  int buffer = 0;
  double cluster_tol = 1e-8;
  std::vector<std::vector<int>> degenerate_clusters;

  int K() const { return static_cast<int>(eigenvalues.size()); }
  int reliable_count() const { return K() - buffer; }
  bool reliable(int n) const { return n >= 0 && n < reliable_count(); }
  HardyCoeffs f(int n) const { return HardyCoeffs(Eigen::VectorXcd(eigenvectors.col(n))); }
  // Inclusive index range of the eigenvalue cluster containing n.
  std::pair<int, int> cluster_range(int n) const;
};

struct GapProfile {
  std::vector<double> gaps;          // gaps[n - 1] = gamma_n, n = 1..R-1
  std::vector<double> overlaps;      // overlaps[n - 1] = |<S f_{n-1} | f_n>|
  std::vector<int> collinearity_set; // n with overlap below tol
  double gap(int n) const { return gaps[n - 1]; }
};

struct IdentityReport {
  double coefficient_identity = 0.0;  // <1|u><u|f_n> vs eigenvalue * <1|f_n>
  double pair_identity = 0.0;         // (l_n - l_p - 1)<Sf_p|f_n> vs <Sf_p|u><u|f_n>
  double shift_commutator = 0.0;      // L S - S L - S -+ <.|S*u>u
  double b_commutator = 0.0;          // [S*, B] - i(S* L^2 - (L+1)^2 S*)
  double b_skew = 0.0;                // B + B^dagger
  int block = 0;
  double max() const;
};

struct GapVanishingReport {
  bool holds = true;
  std::vector<int> violations;  // n where exactly one side of the biconditional holds
  std::vector<int> vanishing;   // n >= 1 with |<u|f_n>| < tol
  std::vector<int> zero_gaps;   // n >= 1 with |gamma_n| < tol
};

struct EigenspaceAlternativeReport {
  bool holds = true;
  std::vector<int> checked;
  std::vector<int> violations;
  std::vector<int> skipped_zero;  // indices with |nu_n| < 1e-8
};

LaxBlock build_lax(const HardyCoeffs& u, Sign sign);
BBlock build_b(const HardyCoeffs& u, Sign sign);

// buffer < 0 selects K/8.
SpectralDecomposition spectral_decompose(const LaxBlock& L, int buffer = -1,
                                         double cluster_tol = 1e-8);
Eigen::VectorXd eigenvalues_only(const LaxBlock& L);

GapProfile gap_profile(const SpectralDecomposition& dec, const HardyCoeffs& u,
                       double tol = 1e-8);

// Identities on the top-left (K - buffer) block; buffer < 0 selects K/4.
IdentityReport check_spectral_identities(const HardyCoeffs& u, const SpectralDecomposition& dec,
                                         int buffer = -1);

GapVanishingReport corollary_gap_vanishing_check(const HardyCoeffs& u,
                                                 const SpectralDecomposition& dec,
                                                 double tol = 1e-7);

// For zero gaps with nonzero eigenvalue: S f_{n-1} in E(nu_n) or f_n in S E(nu_{n-1}).
EigenspaceAlternativeReport eigenspace_alternative_check(const SpectralDecomposition& dec,
                                                         double tol = 1e-7);

// Matrix-free action of L and B, reusing the grids of u and its derivative.
class LaxApplier {
 public:
  LaxApplier(const HardyCoeffs& u, Sign sign);
  Eigen::VectorXcd apply_l(const Eigen::VectorXcd& g) const;
  Eigen::VectorXcd apply_b(const Eigen::VectorXcd& g) const;

 private:
  // T_a g and T_{conj a} g for a with precomputed grid.
  Eigen::VectorXcd analytic(const std::vector<cplx>& agrid, const std::vector<cplx>& ggrid) const;
  Eigen::VectorXcd anti(const std::vector<cplx>& agrid, const std::vector<cplx>& ggrid) const;
  std::vector<cplx> grid(const Eigen::VectorXcd& g) const;
  Eigen::VectorXcd apply_a(const Eigen::VectorXcd& g) const;

  int K_;
  std::size_t P_;
  Sign sign_;
  std::vector<cplx> ugrid_;
  std::vector<cplx> dugrid_;
};

}  // namespace cslab
