#include "cslab/finitegap.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "cslab/fft.hpp"

namespace cslab {

namespace {

void validate_poles(const std::vector<Pole>& poles) {
  for (std::size_t j = 0; j < poles.size(); ++j) {
    const double r = std::abs(poles[j].p);
    if (r >= 1.0) throw Error(ErrorCode::kPoleOnCircle, "pole outside the open disc", r);
    if (r == 0.0) throw Error(ErrorCode::kInvalidParameter, "pole at the origin");
    if (poles[j].mult < 1) throw Error(ErrorCode::kInvalidParameter, "multiplicity must be >= 1");
    for (std::size_t k = 0; k < j; ++k) {
      if (std::abs(poles[j].p - poles[k].p) < 1e-12) {
        throw Error(ErrorCode::kInvalidParameter, "poles must be distinct");
      }
    }
  }
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& x : v) m = std::max(m, std::abs(x));
  return m;
}

// Decoupled single-pole residue for a pinned a; defocusing has two roots.
cplx decoupled_residue(Sign sign, const Pole& pole, cplx a, bool small_root = false) {
  const double g = 1.0 / (1.0 - std::norm(pole.p));
  const double m = pole.mult;
  const double A = std::abs(a);
  const double arg = A > 0.0 ? std::arg(a) : 0.0;
  if (sign == Sign::kFocusing) {
    // Two roots: aligned with a (smaller, default) or anti-aligned (fallback).
    const double root = std::sqrt(A * A + 4.0 * g * m);
    if (!small_root) return std::polar((root - A) / (2.0 * g), arg);
    return std::polar((root + A) / (2.0 * g), arg + M_PI);
  }
  const double disc = A * A - 4.0 * g * m;
  const double root = disc >= 0.0 ? std::sqrt(disc) : 0.0;
  const double rho = (small_root ? A - root : A + root) / (2.0 * g);
  return std::polar(rho, arg + M_PI);
}

}  // namespace

int FiniteGapPotential::N() const {
  int n = m0;
  for (const Pole& p : poles) n += p.mult;
  return n;
}

BlaschkeProduct FiniteGapPotential::ladder() const {
  BlaschkeProduct psi;
  psi.m0 = m0;
  for (const Pole& p : poles)
    for (int k = 0; k < p.mult; ++k) psi.poles.push_back(p.p);
  return psi;
}

std::vector<cplx> residue_conditions(Sign sign, const std::vector<Pole>& poles, cplx a,
                                     const std::vector<cplx>& c) {
  const std::size_t r = poles.size();
  std::vector<cplx> F(r);
  for (std::size_t j = 0; j < r; ++j) {
    cplx s = std::conj(a);
    for (std::size_t k = 0; k < r; ++k) {
      s += std::conj(c[k]) / (1.0 - poles[j].p * std::conj(poles[k].p));
    }
    F[j] = c[j] * s - sign_factor(sign) * static_cast<double>(poles[j].mult);
  }
  return F;
}

double predicted_eigenvalue(Sign sign, int m0, cplx a, const std::vector<cplx>& c) {
  cplx cross = 0.0;
  for (const cplx& cj : c) cross += a * std::conj(cj);
  const double q = std::norm(a) + cross.real();
  return sign == Sign::kFocusing ? m0 - q : m0 + q;
}

FiniteGapPotential solve_residue_system(Sign sign, int m0, const std::vector<Pole>& poles,
                                        std::optional<cplx> a_opt,
                                        std::optional<std::vector<cplx>> init,
                                        const NewtonOptions& opts) {
  if (m0 < 0) throw Error(ErrorCode::kInvalidParameter, "m0 must be >= 0");
  validate_poles(poles);
  const cplx a = a_opt.value_or(m0 == 0 ? cplx(0.0) : cplx(1.0));
  if (m0 >= 1 && a == cplx(0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "a must be nonzero when m0 >= 1");
  }
  if (sign == Sign::kDefocusing && a == cplx(0.0) && !poles.empty()) {
    // Summing the conditions gives c^T G conj(c) = -sum m_j with G positive definite.
    throw Error(ErrorCode::kInfeasibleSign, "defocusing conditions with a = 0 have no solution");
  }
  const std::size_t r = poles.size();
  FiniteGapPotential fg;
  fg.sign = sign;
  fg.m0 = m0;
  fg.poles = poles;
  fg.a = a;
  if (init) {
    if (init->size() != r) throw Error(ErrorCode::kDimensionMismatch, "init residues");
    fg.residues = *init;
  } else {
    for (const Pole& p : poles) fg.residues.push_back(decoupled_residue(sign, p, a));
  }

  // Unknowns: (Re a, Im a, Re c_1, Im c_1, ...); equations: a pinned, then the conditions.
  const int n = 2 * static_cast<int>(r + 1);
  auto residual_vec = [&](cplx av, const std::vector<cplx>& c) {
    Eigen::VectorXd R(n);
    R[0] = av.real() - a.real();
    R[1] = av.imag() - a.imag();
    const std::vector<cplx> F = residue_conditions(sign, poles, av, c);
    for (std::size_t j = 0; j < r; ++j) {
      R[2 + 2 * j] = F[j].real();
      R[3 + 2 * j] = F[j].imag();
    }
    return R;
  };

  cplx av = a;
  std::vector<cplx> c;
  Eigen::VectorXd R;
  double res = 0.0;
  int it = 0;
  auto newton = [&](const std::vector<cplx>& c0) {
    av = a;
    c = c0;
    R = residual_vec(av, c);
    res = R.lpNorm<Eigen::Infinity>();
    it = 0;
    for (; it < opts.max_iter && res >= opts.target; ++it) {
      Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
      J(0, 0) = 1.0;
      J(1, 1) = 1.0;
      for (std::size_t j = 0; j < r; ++j) {
        cplx diag = std::conj(av);
        for (std::size_t k = 0; k < r; ++k) {
          diag += std::conj(c[k]) / (1.0 - poles[j].p * std::conj(poles[k].p));
        }
        auto put = [&](int col, cplx dz, cplx dzbar) {
          const cplx dx = dz + dzbar;
          const cplx dy = cplx(0.0, 1.0) * (dz - dzbar);
          J(2 + 2 * j, col) += dx.real();
          J(3 + 2 * j, col) += dx.imag();
          J(2 + 2 * j, col + 1) += dy.real();
          J(3 + 2 * j, col + 1) += dy.imag();
        };
        put(0, 0.0, c[j]);
        for (std::size_t l = 0; l < r; ++l) {
          const cplx G = 1.0 / (1.0 - poles[j].p * std::conj(poles[l].p));
          put(2 + 2 * static_cast<int>(l), j == l ? diag : cplx(0.0), c[j] * G);
        }
      }
      // Minimum-norm step tolerates the phase symmetry present when a = 0.
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(J);
      cod.setThreshold(1e-12);
      const Eigen::VectorXd step = cod.solve(-R);
      double lambda = 1.0;
      for (int halvings = 0; halvings < 40; ++halvings, lambda *= 0.5) {
        const cplx a_try = a;  // pinned exactly; its rows only anchor the gauge
        std::vector<cplx> c_try(r);
        for (std::size_t j = 0; j < r; ++j) {
          c_try[j] = c[j] + lambda * cplx(step[2 + 2 * j], step[3 + 2 * j]);
        }
        const Eigen::VectorXd R_try = residual_vec(a_try, c_try);
        const double res_try = R_try.lpNorm<Eigen::Infinity>();
        if (res_try < res || halvings == 39) {
          av = a_try;
          c = c_try;
          R = R_try;
          res = res_try;
          break;
        }
      }
    }
  };
  newton(fg.residues);
  if (!(res < opts.target) && !init) {
    // Second deterministic start from the other decoupled root.
    std::vector<cplx> c0;
    for (const Pole& p : poles) c0.push_back(decoupled_residue(sign, p, a, true));
    newton(c0);
  }
  fg.a = av;
  fg.residues = c;
  fg.newton_residual = max_abs(residue_conditions(sign, poles, av, c));
  fg.iterations = it;
  if (!(res < opts.target)) {
    throw Error(ErrorCode::kNewtonDivergence,
                "residue system not converged after " + std::to_string(it) + " iterations", res);
  }
  fg.predicted_eig = predicted_eigenvalue(sign, m0, av, c);
  return fg;
}

cplx evaluate_potential(const FiniteGapPotential& fg, cplx z) {
  cplx v = std::pow(z, fg.m0);
  cplx s = fg.a;
  for (std::size_t j = 0; j < fg.poles.size(); ++j) {
    const cplx p = fg.poles[j].p;
    const cplx B = (z - std::conj(p)) / (1.0 - p * z);
    v *= std::pow(B, fg.poles[j].mult - 1);
    s += fg.residues[j] / (1.0 - p * z);
  }
  return v * s;
}

HardyCoeffs potential_coeffs(const FiniteGapPotential& fg, int K) {
  const std::size_t M = fft::next_pow2(2 * static_cast<std::size_t>(K));
  std::vector<cplx> g(M);
  for (std::size_t m = 0; m < M; ++m) {
    g[m] = evaluate_potential(fg, std::polar(1.0, 2.0 * M_PI * m / M));
  }
  fft::forward(g.data(), M);
  HardyCoeffs h = HardyCoeffs::zeros(K);
  double kept = 0.0, tail = 0.0, negative = 0.0;
  for (std::size_t n = 0; n < M; ++n) {
    const cplx v = g[n] / static_cast<double>(M);
    if (n < static_cast<std::size_t>(K)) {
      h[static_cast<int>(n)] = v;
      kept += std::norm(v);
    } else {
      tail += std::norm(v);
      if (n >= M / 2) negative += std::norm(v);
    }
  }
  const double total = kept + tail;
  if (total > 0.0 && tail > 1e-8 * total) {
    throw Error(ErrorCode::kNumericalAliasing, "potential not resolved at this K", tail / total);
  }
  if (total > 0.0 && negative > 1e-12 * total) {
    throw Error(ErrorCode::kNumericalAliasing, "negative-frequency energy in a Hardy potential",
                negative / total);
  }
  return h;
}

double predicted_l2(const FiniteGapPotential& fg) {
  return fg.sign == Sign::kFocusing ? fg.N() - fg.predicted_eig : fg.predicted_eig - fg.N();
}

BlaschkeEigenCheck blaschke_eigen_check(const HardyCoeffs& u, const BlaschkeProduct& psi,
                                        Sign sign, int kmax) {
  const int K = u.K();
  const Eigen::MatrixXcd L = build_lax(u, sign).matrix;
  const Eigen::VectorXcd v0 = blaschke_to_coeffs(psi, K).vec();
  BlaschkeEigenCheck out;
  out.nu = (v0.dot(L * v0)).real() / v0.squaredNorm();
  for (int k = 0; k <= kmax; ++k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(K);
    if (k < K) v.tail(K - k) = v0.head(K - k);
    out.residuals.push_back((L * v - (out.nu + k) * v).norm());
  }
  return out;
}

Classification classify(const SpectralDecomposition& dec, const HardyCoeffs& u, double tol) {
  const int K = dec.K();
  const int R = dec.reliable_count();
  const auto& lam = dec.eigenvalues;
  // Gaps are trusted only where both eigenvectors have left the truncation buffer.
  const int edge = std::max(1, dec.buffer);
  int resolved = 1;
  while (resolved < R && dec.eigenvectors.col(resolved).tail(edge).norm() < 1e-8) ++resolved;
  int last = 0;
  for (int n = 1; n < resolved; ++n) {
    if (std::abs(lam[n] - lam[n - 1] - 1.0) > tol) last = n;
  }
  const int margin = std::max(8, K / 32);
  if (last >= resolved - margin) {
    throw Error(ErrorCode::kInconclusive, "nonzero gaps persist to the reliability edge",
                static_cast<double>(last));
  }
  Classification out;
  out.m = last + 1;

  // Walk down the shift ladder from the top simple reliable eigenvector.
  // Skip vectors that still carry weight in the truncation buffer.
  int n0 = R - 1;
  while (n0 > 0 && (dec.cluster_range(n0).first != dec.cluster_range(n0).second ||
                    dec.eigenvectors.col(n0).tail(edge).norm() > 1e-10)) {
    --n0;
  }
  const Eigen::MatrixXcd L = build_lax(u, dec.sign).matrix;
  Eigen::VectorXcd phi = dec.eigenvectors.col(n0);
  double nu = lam[n0];
  int steps = 0;
  while (true) {
    if (std::norm(phi[0]) > 1e-6) break;  // |<S S* phi | phi>| below 1 - 1e-6
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(K);
    next.head(K - 1) = phi.tail(K - 1);
    next.normalize();
    const double res = (L * next - (nu - 1.0) * next).norm();
    if (res > 1e-6 * std::max(1.0, std::abs(nu))) break;
    phi = next;
    nu -= 1.0;
    ++steps;
  }
  out.is_finite_gap = steps > 0;
  out.N_estimate = n0 - steps;
  out.ladder_eigenvalue = nu;
  out.psi = phi;
  return out;
}

InversionData inversion_data(const HardyCoeffs& u, const SpectralDecomposition& dec, bool reduce,
                             double tol) {
  const int K = dec.K();
  if (u.K() != K) throw Error(ErrorCode::kDimensionMismatch, "inversion_data");
  const Eigen::MatrixXcd& F = dec.eigenvectors;
  InversionData d;
  d.X = F.adjoint() * u.vec();
  d.Y = F.row(0).adjoint();
  Eigen::MatrixXcd SF = Eigen::MatrixXcd::Zero(K, K);
  SF.bottomRows(K - 1) = F.topRows(K - 1);
  d.M = SF.adjoint() * F;
  if (!reduce) return d;

  Classification cls;
  try {
    cls = classify(dec, u, tol);
  } catch (const Error&) {
    return d;
  }
  if (!cls.is_finite_gap) return d;

  // Keep every reliable eigendirection except the ladder vectors S^k psi, k >= 1.
  std::vector<Eigen::VectorXcd> keep;
  const int R = dec.reliable_count();
  for (int n = 0; n < R;) {
    auto [lo, hi] = dec.cluster_range(n);
    hi = std::min(hi, R - 1);
    const Eigen::MatrixXcd E = F.middleCols(lo, hi - lo + 1);
    const double offset = dec.eigenvalues[lo] - cls.ladder_eigenvalue;
    const double k = std::round(offset);
    bool removed = false;
    if (k >= 1.0 && std::abs(offset - k) < tol) {
      Eigen::VectorXcd w = Eigen::VectorXcd::Zero(K);
      const int ki = static_cast<int>(k);
      if (ki < K) w.tail(K - ki) = cls.psi.head(K - ki);
      const Eigen::VectorXcd coords = E.adjoint() * w;
      if (coords.norm() > 0.5) {
        // Orthonormal complement of coords inside the cluster.
        Eigen::MatrixXcd Pc = Eigen::MatrixXcd::Identity(E.cols(), E.cols()) -
                              coords * coords.adjoint() / coords.squaredNorm();
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Pc, Eigen::ComputeFullU);
        for (int j = 0; j + 1 < E.cols(); ++j) keep.push_back(E * svd.matrixU().col(j));
        removed = true;
      }
    }
    if (!removed) {
      for (int j = 0; j < E.cols(); ++j) keep.push_back(E.col(j));
    }
    n = hi + 1;
  }
  if (static_cast<int>(keep.size()) != cls.N_estimate + 1) return d;
  const int r = static_cast<int>(keep.size());
  Eigen::MatrixXcd Q(K, r);
  for (int j = 0; j < r; ++j) Q.col(j) = keep[j];
  Eigen::MatrixXcd SQ = Eigen::MatrixXcd::Zero(K, r);
  SQ.bottomRows(K - 1) = Q.topRows(K - 1);
  d.reduced_dim = r;
  d.Xr = Q.adjoint() * u.vec();
  d.Yr = Q.row(0).adjoint();
  d.Mr = SQ.adjoint() * Q;
  return d;
}

cplx reconstruct(const Eigen::MatrixXcd& M, const Eigen::VectorXcd& X, const Eigen::VectorXcd& Y,
                 cplx z) {
  const Eigen::Index n = M.rows();
  const Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(n, n) - z * M;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const cplx det = lu.determinant();
  if (std::abs(det) < 1e-14) {
    throw Error(ErrorCode::kSingularSystem, "Id - zM is singular", std::abs(det));
  }
  const Eigen::VectorXcd xi = lu.solve(X);
  return Y.dot(xi);  // sum xi_n conj(Y_n)
}

cplx reconstruct(const InversionData& data, cplx z, bool reduced) {
  if (reduced) {
    if (data.reduced_dim == 0) {
      throw Error(ErrorCode::kInvalidParameter, "no reduced block available");
    }
    return reconstruct(data.Mr, data.Xr, data.Yr, z);
  }
  return reconstruct(data.M, data.X, data.Y, z);
}

}  // namespace cslab
