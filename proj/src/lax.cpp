#include "cslab/lax.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "cslab/fft.hpp"
#include "cslab/kernels.hpp"

namespace cslab {

namespace {

Eigen::MatrixXcd lower_toeplitz(const HardyCoeffs& a) {
  return toeplitz_block(FullCoeffs::from_hardy(a), a.K());
}

// T_u T_{conj u} = T_u T_u^dagger, exact on the K x K block.
Eigen::MatrixXcd tt_block(const Eigen::MatrixXcd& Tu) {
  return Tu.triangularView<Eigen::Lower>() * Tu.adjoint();
}

Eigen::MatrixXcd shift_matrix(int K) {
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(K, K);
  for (int j = 1; j < K; ++j) S(j, j - 1) = 1.0;
  return S;
}

// Rows shifted down by one, top row dropped at the boundary.
Eigen::MatrixXcd shift_rows(const Eigen::MatrixXcd& F) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(F.rows(), F.cols());
  out.bottomRows(F.rows() - 1) = F.topRows(F.rows() - 1);
  return out;
}

}  // namespace

std::pair<int, int> SpectralDecomposition::cluster_range(int n) const {
  int lo = n, hi = n;
  while (lo > 0 && eigenvalues[lo] - eigenvalues[lo - 1] < cluster_tol) --lo;
  while (hi + 1 < K() && eigenvalues[hi + 1] - eigenvalues[hi] < cluster_tol) ++hi;
  return {lo, hi};
}

double IdentityReport::max() const {
  return std::max({coefficient_identity, pair_identity, shift_commutator, b_commutator, b_skew});
}

LaxBlock build_lax(const HardyCoeffs& u, Sign sign) {
  const int K = u.K();
  Eigen::MatrixXcd L = -sign_factor(sign) * tt_block(lower_toeplitz(u));
  for (int n = 0; n < K; ++n) L(n, n) += static_cast<double>(n);
  return {std::move(L), sign, u};
}

BBlock build_b(const HardyCoeffs& u, Sign sign) {
  const Eigen::MatrixXcd Tu = lower_toeplitz(u);
  const Eigen::MatrixXcd Tdu = lower_toeplitz(derivative(u));
  const Eigen::MatrixXcd A = tt_block(Tu);
  const double s = sign_factor(sign);
  Eigen::MatrixXcd B = s * (Tu * Tdu.adjoint() - Tdu * Tu.adjoint());
  B.noalias() += cplx(0.0, 1.0) * (A * A);
  return {std::move(B), sign};
}

SpectralDecomposition spectral_decompose(const LaxBlock& L, int buffer, double cluster_tol) {
  const int K = static_cast<int>(L.matrix.rows());
  if (buffer < 0) buffer = K / 8;
  if (buffer >= K / 2 && K > 1) {
    throw Error(ErrorCode::kInvalidParameter, "buffer must be below K/2");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(L.matrix);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigensolveFailure, "Hermitian eigensolver did not converge");
  }
  SpectralDecomposition dec;
  dec.eigenvalues = solver.eigenvalues();
  dec.eigenvectors = solver.eigenvectors();
  dec.sign = L.sign;
  dec.buffer = buffer;
  dec.cluster_tol = cluster_tol;
  for (int n = 0; n < K; ++n) {
    auto col = dec.eigenvectors.col(n);
    col.normalize();
    for (int j = 0; j < K; ++j) {
      const double m = std::abs(col[j]);
      if (m > 1e-8) {
        col *= std::conj(col[j]) / m;
        col[j] = cplx(m, 0.0);
        break;
      }
    }
  }
  for (int n = 0; n < K;) {
    auto [lo, hi] = dec.cluster_range(n);
    if (hi > lo) {
      std::vector<int> group;
      for (int j = lo; j <= hi; ++j) group.push_back(j);
      dec.degenerate_clusters.push_back(std::move(group));
    }
    n = hi + 1;
  }
  return dec;
}

Eigen::VectorXd eigenvalues_only(const LaxBlock& L) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(L.matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigensolveFailure, "Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

GapProfile gap_profile(const SpectralDecomposition& dec, const HardyCoeffs& u, double tol) {
  if (u.K() != dec.K()) throw Error(ErrorCode::kDimensionMismatch, "gap_profile");
  GapProfile g;
  const int R = dec.reliable_count();
  const auto& kt = kernels::active();
  const auto K = static_cast<std::size_t>(dec.K());
  for (int n = 1; n < R; ++n) {
    g.gaps.push_back(dec.eigenvalues[n] - dec.eigenvalues[n - 1] - 1.0);
    // <S f_{n-1} | f_n> = sum_j f_{n-1}[j] conj(f_n[j+1])
    const cplx ov = kt.cdot(dec.eigenvectors.col(n - 1).data(), dec.eigenvectors.col(n).data() + 1,
                            K - 1);
    g.overlaps.push_back(std::abs(ov));
    if (std::abs(ov) < tol) g.collinearity_set.push_back(n);
  }
  return g;
}

IdentityReport check_spectral_identities(const HardyCoeffs& u, const SpectralDecomposition& dec,
                                         int buffer) {
  const int K = dec.K();
  if (u.K() != K) throw Error(ErrorCode::kDimensionMismatch, "check_spectral_identities");
  if (buffer < 0) buffer = K / 4;
  const int R = std::min(K - buffer, dec.reliable_count());
  // sigma = +1 defocusing, -1 focusing
  const double sigma = -sign_factor(dec.sign);
  IdentityReport rep;
  rep.block = R;

  const Eigen::MatrixXcd F = dec.eigenvectors.leftCols(R);
  const Eigen::VectorXd lam = dec.eigenvalues.head(R);
  const Eigen::VectorXcd X = F.adjoint() * u.vec();  // <u|f_n>
  const cplx one_u = std::conj(u[0]);                   // <1|u>
  for (int n = 0; n < R; ++n) {
    const cplx Y = std::conj(F(0, n));  // <1|f_n>
    rep.coefficient_identity =
        std::max(rep.coefficient_identity, std::abs(one_u * X[n] - sigma * lam[n] * Y));
  }

  const Eigen::MatrixXcd SF = shift_rows(F);
  const Eigen::MatrixXcd G = F.adjoint() * SF;                      // G(n,p) = <S f_p | f_n>
  const Eigen::VectorXcd W = SF.adjoint() * u.vec();                // W(p) = <u | S f_p>
  for (int p = 0; p < R; ++p) {
    const cplx Wp = std::conj(W[p]);  // <S f_p | u>
    for (int n = 0; n < R; ++n) {
      const cplx r = (lam[n] - lam[p] - 1.0) * G(n, p) - sigma * Wp * X[n];
      rep.pair_identity = std::max(rep.pair_identity, std::abs(r));
    }
  }

  const LaxBlock L = build_lax(u, dec.sign);
  const BBlock B = build_b(u, dec.sign);
  const Eigen::MatrixXcd S = shift_matrix(K);
  const Eigen::MatrixXcd Ss = S.adjoint();
  const Eigen::VectorXcd Su = Ss * u.vec();
  const Eigen::MatrixXcd& Lm = L.matrix;
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(K, K);

  Eigen::MatrixXcd r1 = Lm * S - S * Lm - S - sigma * u.vec() * Su.adjoint();
  rep.shift_commutator = r1.topLeftCorner(R, R).cwiseAbs().maxCoeff();

  const Eigen::MatrixXcd L2 = Lm * Lm;
  const Eigen::MatrixXcd LI = Lm + I;
  Eigen::MatrixXcd r2 =
      Ss * B.matrix - B.matrix * Ss - cplx(0.0, 1.0) * (Ss * L2 - LI * LI * Ss);
  rep.b_commutator = r2.topLeftCorner(R, R).cwiseAbs().maxCoeff();
  rep.b_skew = (B.matrix + B.matrix.adjoint()).topLeftCorner(R, R).cwiseAbs().maxCoeff();
  return rep;
}

GapVanishingReport corollary_gap_vanishing_check(const HardyCoeffs& u,
                                                 const SpectralDecomposition& dec, double tol) {
  GapVanishingReport rep;
  const int R = dec.reliable_count();
  for (int n = 1; n < R; ++n) {
    const cplx x = dec.eigenvectors.col(n).dot(u.vec());  // <u|f_n>
    const bool vanishes = std::abs(x) < tol;
    const bool zero_gap = std::abs(dec.eigenvalues[n] - dec.eigenvalues[n - 1] - 1.0) < tol;
    if (vanishes) rep.vanishing.push_back(n);
    if (zero_gap) rep.zero_gaps.push_back(n);
    if (vanishes != zero_gap) {
      rep.holds = false;
      rep.violations.push_back(n);
    }
  }
  return rep;
}

EigenspaceAlternativeReport eigenspace_alternative_check(const SpectralDecomposition& dec,
                                                         double tol) {
  EigenspaceAlternativeReport rep;
  const int R = dec.reliable_count();
  const auto& V = dec.eigenvectors;
  for (int n = 1; n < R; ++n) {
    if (std::abs(dec.eigenvalues[n] - dec.eigenvalues[n - 1] - 1.0) >= tol) continue;
    if (std::abs(dec.eigenvalues[n]) < 1e-8) {
      rep.skipped_zero.push_back(n);
      continue;
    }
    rep.checked.push_back(n);
    // Branch 1: S f_{n-1} lies in the eigenspace of nu_n.
    auto [lo, hi] = dec.cluster_range(n);
    const Eigen::MatrixXcd E = V.middleCols(lo, hi - lo + 1);
    Eigen::VectorXcd sf = Eigen::VectorXcd::Zero(dec.K());
    sf.tail(dec.K() - 1) = V.col(n - 1).head(dec.K() - 1);
    const double in1 = (E.adjoint() * sf).norm();
    // Branch 2: f_n lies in S applied to the eigenspace of nu_{n-1}.
    auto [lo2, hi2] = dec.cluster_range(n - 1);
    const Eigen::MatrixXcd SE = shift_rows(V.middleCols(lo2, hi2 - lo2 + 1));
    const double in2 = (SE.adjoint() * V.col(n)).norm();
    if (in1 < 1.0 - tol && in2 < 1.0 - tol) {
      rep.holds = false;
      rep.violations.push_back(n);
    }
  }
  return rep;
}

LaxApplier::LaxApplier(const HardyCoeffs& u, Sign sign)
    : K_(u.K()), P_(fft::next_pow2(2 * static_cast<std::size_t>(u.K()))), sign_(sign) {
  ugrid_ = grid(u.vec());
  dugrid_ = grid(derivative(u).vec());
}

std::vector<cplx> LaxApplier::grid(const Eigen::VectorXcd& g) const {
  std::vector<cplx> out(P_, cplx(0.0));
  for (int n = 0; n < K_; ++n) out[n] = g[n];
  fft::backward(out.data(), P_);
  return out;
}

Eigen::VectorXcd LaxApplier::analytic(const std::vector<cplx>& agrid,
                                      const std::vector<cplx>& ggrid) const {
  std::vector<cplx> prod(P_);
  kernels::active().cmul(agrid.data(), ggrid.data(), prod.data(), P_);
  fft::forward(prod.data(), P_);
  Eigen::VectorXcd out(K_);
  const double inv = 1.0 / static_cast<double>(P_);
  for (int n = 0; n < K_; ++n) out[n] = prod[n] * inv;
  return out;
}

Eigen::VectorXcd LaxApplier::anti(const std::vector<cplx>& agrid,
                                  const std::vector<cplx>& ggrid) const {
  std::vector<cplx> conj_a(P_);
  for (std::size_t i = 0; i < P_; ++i) conj_a[i] = std::conj(agrid[i]);
  return analytic(conj_a, ggrid);
}

Eigen::VectorXcd LaxApplier::apply_a(const Eigen::VectorXcd& g) const {
  return analytic(ugrid_, grid(anti(ugrid_, grid(g))));
}

Eigen::VectorXcd LaxApplier::apply_l(const Eigen::VectorXcd& g) const {
  Eigen::VectorXcd out = -sign_factor(sign_) * apply_a(g);
  for (int n = 0; n < K_; ++n) out[n] += static_cast<double>(n) * g[n];
  return out;
}

Eigen::VectorXcd LaxApplier::apply_b(const Eigen::VectorXcd& g) const {
  const std::vector<cplx> gg = grid(g);
  const std::vector<cplx> w1 = grid(anti(ugrid_, gg));   // T_{conj u} g
  const std::vector<cplx> w2 = grid(anti(dugrid_, gg));  // T_{conj du} g
  Eigen::VectorXcd out = sign_factor(sign_) * (analytic(ugrid_, w2) - analytic(dugrid_, w1));
  const Eigen::VectorXcd ag = analytic(ugrid_, w1);
  out += cplx(0.0, 1.0) * apply_a(ag);
  return out;
}

}  // namespace cslab
