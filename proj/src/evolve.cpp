#include "cslab/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cslab/fft.hpp"
#include "cslab/kernels.hpp"

namespace cslab {

namespace {

// Evaluates +-2i [D Pi(|u|^2) u] with three FFTs of the padded length.
class Nonlinearity {
 public:
  Nonlinearity(int K, Sign sign)
      : K_(K), P_(fft::next_pow2(2 * static_cast<std::size_t>(K))), sign_(sign),
        gu_(P_), gw_(P_) {}

  void operator()(const Eigen::VectorXcd& u, Eigen::VectorXcd& out) {
    const auto& kt = kernels::active();
    const double inv = 1.0 / static_cast<double>(P_);
    std::fill(gu_.begin(), gu_.end(), cplx(0.0));
    for (int n = 0; n < K_; ++n) gu_[n] = u[n];
    fft::backward(gu_.data(), P_);
    kt.abs2(gu_.data(), gw_.data(), P_);
    fft::forward(gw_.data(), P_);
    for (int n = 0; n < K_; ++n) gw_[n] *= static_cast<double>(n) * inv;
    std::fill(gw_.begin() + K_, gw_.end(), cplx(0.0));
    fft::backward(gw_.data(), P_);
    kt.cmul(gw_.data(), gu_.data(), gw_.data(), P_);
    fft::forward(gw_.data(), P_);
    const cplx f(0.0, 2.0 * sign_factor(sign_) * inv);
    out.resize(K_);
    for (int n = 0; n < K_; ++n) out[n] = f * gw_[n];
  }

 private:
  int K_;
  std::size_t P_;
  Sign sign_;
  std::vector<cplx> gu_;
  std::vector<cplx> gw_;
};

Eigen::VectorXcd phases(int K, double t) {
  Eigen::VectorXcd e(K);
  for (int n = 0; n < K; ++n) e[n] = std::polar(1.0, -static_cast<double>(n) * n * t);
  return e;
}

void check_state(const Eigen::VectorXcd& v, double threshold, double t) {
  const double m = v.cwiseAbs().maxCoeff();
  if (!(m <= threshold)) {
    throw Error(ErrorCode::kBlowupDetected, "coefficient exceeded threshold at t=" +
                std::to_string(t), m);
  }
}

// Lagrange weights at position x for nodes 0..n-1.
std::vector<double> lagrange(int n, double x) {
  std::vector<double> w(n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i) w[i] *= (x - j) / static_cast<double>(i - j);
  return w;
}

}  // namespace

SnapshotDiagnostics diagnose(const HardyCoeffs& u) {
  SnapshotDiagnostics d;
  const int K = u.K();
  d.l2 = u.norm2();
  d.mean = u[0];
  const int top = K / 8;
  const double t = u.vec().tail(top).squaredNorm();
  d.tail = d.l2 > 0.0 ? t / d.l2 : 0.0;
  return d;
}

HardyCoeffs modal_rhs(const HardyCoeffs& u, Sign sign) {
  Nonlinearity nl(u.K(), sign);
  Eigen::VectorXcd out;
  nl(u.vec(), out);
  for (int n = 0; n < u.K(); ++n) out[n] += cplx(0.0, -static_cast<double>(n) * n) * u[n];
  return HardyCoeffs(std::move(out));
}

Trajectory evolve(const HardyCoeffs& u0, const EvolveConfig& cfg) {
  if (!(cfg.dt > 0.0) || !(cfg.T >= 0.0) || cfg.record_every < 1) {
    throw Error(ErrorCode::kInvalidParameter, "dt > 0, T >= 0 and record_every >= 1 required");
  }
  const int K = u0.K();
  Trajectory traj;
  traj.sign = cfg.sign;
  const long steps = std::max(1L, static_cast<long>(std::ceil(cfg.T / cfg.dt - 1e-9)));
  const double h = cfg.T > 0.0 ? cfg.T / static_cast<double>(steps) : 0.0;
  traj.dt = h;

  const double head_tail = u0.vec().tail(K - K / 2).squaredNorm();
  if (u0.norm2() > 0.0 && head_tail > 1e-10 * u0.norm2()) {
    throw Error(ErrorCode::kUnderResolved, "initial data has energy beyond K/2",
                head_tail / u0.norm2());
  }
  if (cfg.sign == Sign::kFocusing && u0.norm() >= 1.0) {
    warn(&traj.warnings, WarningCode::kOutsideTheory,
         "focusing run with ||u0|| >= 1 is outside the small-data theory", u0.norm());
  }
  const double advisory = h * (K - 1.0) * (K - 1.0);
  if (advisory > 2.0) {
    warn(&traj.warnings, WarningCode::kStepAdvisory, "dt (K-1)^2 exceeds 2", advisory);
  }

  auto record = [&](double t, const Eigen::VectorXcd& v) {
    HardyCoeffs s(v);
    const SnapshotDiagnostics d = diagnose(s);
    if (d.tail > cfg.tail_threshold) {
      throw Error(ErrorCode::kUnderResolved, "tail energy above threshold at t=" +
                  std::to_string(t), d.tail);
    }
    traj.times.push_back(t);
    traj.states.push_back(std::move(s));
    traj.diagnostics.push_back(d);
  };

  Eigen::VectorXcd u = u0.vec();
  record(0.0, u);
  if (cfg.T == 0.0) return traj;

  const Eigen::VectorXcd eh = phases(K, 0.5 * h);
  const Eigen::VectorXcd ef = phases(K, h);
  Nonlinearity N(K, cfg.sign);
  Eigen::VectorXcd k1, k2, k3, k4, tmp(K), next(K);
  const auto& kt = kernels::active();
  const auto n = static_cast<std::size_t>(K);
  for (long s = 1; s <= steps; ++s) {
    // Lawson RK4 in the frame rotating with exp(-i n^2 t).
    N(u, k1);
    tmp = u;
    kt.caxpy(0.5 * h, k1.data(), tmp.data(), n);
    kt.cmul(eh.data(), tmp.data(), tmp.data(), n);
    N(tmp, k2);
    kt.cmul(eh.data(), u.data(), tmp.data(), n);
    kt.caxpy(0.5 * h, k2.data(), tmp.data(), n);
    N(tmp, k3);
    Eigen::VectorXcd ek3(K);
    kt.cmul(eh.data(), k3.data(), ek3.data(), n);
    kt.cmul(ef.data(), u.data(), tmp.data(), n);
    kt.caxpy(h, ek3.data(), tmp.data(), n);
    N(tmp, k4);

    next = u;
    kt.caxpy(h / 6.0, k1.data(), next.data(), n);
    kt.cmul(ef.data(), next.data(), next.data(), n);
    Eigen::VectorXcd k23 = k2 + k3;
    kt.cmul(eh.data(), k23.data(), k23.data(), n);
    kt.caxpy(h / 3.0, k23.data(), next.data(), n);
    kt.caxpy(h / 6.0, k4.data(), next.data(), n);
    u.swap(next);
    const double t = static_cast<double>(s) * h;
    check_state(u, cfg.blowup_threshold, t);
    if (s % cfg.record_every == 0 || s == steps) record(t, u);
  }
  return traj;
}

ConservationReport conservation_report(const Trajectory& traj, int n_eigs, int max_samples) {
  ConservationReport rep;
  if (traj.states.empty()) return rep;
  const SnapshotDiagnostics& d0 = traj.diagnostics.front();
  for (const SnapshotDiagnostics& d : traj.diagnostics) {
    rep.l2_drift = std::max(rep.l2_drift, std::abs(d.l2 - d0.l2));
    rep.mean_drift = std::max(rep.mean_drift, std::abs(d.mean - d0.mean));
    rep.max_tail = std::max(rep.max_tail, d.tail);
  }
  const int S = static_cast<int>(traj.states.size());
  const int samples = std::min(S, std::max(2, max_samples));
  const Eigen::VectorXd e0 = eigenvalues_only(build_lax(traj.states.front(), traj.sign));
  const int ne = std::min<int>(n_eigs, static_cast<int>(e0.size()));
  std::vector<int> picked;
  for (int i = 0; i < samples; ++i) {
    const int idx = static_cast<int>(std::llround(static_cast<double>(i) * (S - 1) /
                                                  std::max(1, samples - 1)));
    if (picked.empty() || picked.back() != idx) picked.push_back(idx);
  }
  for (int idx : picked) {
    const Eigen::VectorXd e = eigenvalues_only(build_lax(traj.states[idx], traj.sign));
    rep.eigen_drift = std::max(rep.eigen_drift, (e.head(ne) - e0.head(ne)).cwiseAbs().maxCoeff());
  }
  rep.spectral_samples = static_cast<int>(picked.size());
  return rep;
}

SpeedFit measure_speed(const Trajectory& traj, const HardyCoeffs& base) {
  SpeedFit fit;
  const int K = base.K();
  const int S = static_cast<int>(traj.states.size());
  if (S < 2) throw Error(ErrorCode::kInvalidParameter, "need at least two snapshots");
  double wsum = 0.0, csum = 0.0, amp_dev = 0.0;
  for (int n = 1; n < K; ++n) {
    const double a0 = std::abs(base[n]);
    if (a0 <= 1e-6) continue;
    std::vector<double> ph(S);
    double prev = 0.0, offset = 0.0;
    for (int j = 0; j < S; ++j) {
      const cplx r = traj.states[j][n] / base[n];
      amp_dev = std::max(amp_dev, std::abs(std::abs(r) - 1.0));
      const double a = std::arg(r);
      if (wsum > 0.0) {
        // Unwrap against the speed found on lower modes so fast modes stay unambiguous.
        const double guess = -n * (csum / wsum) * traj.times[j];
        ph[j] = guess + std::remainder(a - guess, 2.0 * M_PI);
        continue;
      }
      if (j > 0) offset += std::remainder(a - prev, 2.0 * M_PI) - (a - prev);
      prev = a;
      ph[j] = a + offset;
    }
    // Least-squares slope with intercept.
    double tm = 0.0, pm = 0.0;
    for (int j = 0; j < S; ++j) {
      tm += traj.times[j];
      pm += ph[j];
    }
    tm /= S;
    pm /= S;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < S; ++j) {
      num += (traj.times[j] - tm) * (ph[j] - pm);
      den += (traj.times[j] - tm) * (traj.times[j] - tm);
    }
    const double cn = -(num / den) / n;
    fit.modes.push_back(n);
    fit.per_mode.push_back(cn);
    wsum += a0 * a0;
    csum += a0 * a0 * cn;
  }
  if (fit.modes.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "no nonzero-frequency mode above 1e-6");
  }
  fit.c = csum / wsum;
  for (double cn : fit.per_mode) fit.spread = std::max(fit.spread, std::abs(cn - fit.c));
  const double rel = fit.spread / std::max(1.0, std::abs(fit.c));
  if (rel > 1e-3 || amp_dev > 1e-3) {
    throw Error(ErrorCode::kNotATravelingWave, "modes do not share one speed and profile",
                std::max(rel, amp_dev));
  }
  return fit;
}

double PhaseLawReport::max() const { return std::max({u_law, one_law, pair_law}); }

EvolvedBasis evolve_basis(const Trajectory& traj, const SpectralDecomposition& dec0,
                          const std::vector<int>& tracked) {
  const int S = static_cast<int>(traj.states.size());
  if (S < 4) throw Error(ErrorCode::kInvalidParameter, "evolve_basis needs >= 4 snapshots");
  const int K = dec0.K();
  const double h = traj.times[1] - traj.times[0];
  for (int j = 1; j < S; ++j) {
    if (std::abs(traj.times[j] - traj.times[j - 1] - h) > 1e-9 * std::max(1.0, h)) {
      throw Error(ErrorCode::kInvalidParameter, "snapshots must be uniformly spaced");
    }
  }
  const Sign sign = traj.sign;
  const HardyCoeffs& u0 = traj.states.front();

  // Midpoint state by cubic interpolation in the rotating frame.
  auto midpoint = [&](int i) {
    const int first = std::clamp(i - 1, 0, S - 4);
    const double tm = traj.times[i] + 0.5 * h;
    const std::vector<double> w = lagrange(4, (tm - traj.times[first]) / h);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(K);
    for (int q = 0; q < 4; ++q) {
      const double tq = traj.times[first + q];
      for (int n = 0; n < K; ++n) {
        v[n] += w[q] * std::polar(1.0, static_cast<double>(n) * n * (tq - tm)) *
                traj.states[first + q][n];
      }
    }
    return HardyCoeffs(std::move(v));
  };

  EvolvedBasis out;
  out.indices = tracked;
  const int m = static_cast<int>(tracked.size());
  std::vector<Eigen::VectorXcd> g(m);
  for (int k = 0; k < m; ++k) g[k] = dec0.eigenvectors.col(tracked[k]);
  const std::vector<Eigen::VectorXcd> f0 = g;

  auto shifted = [K](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd s = Eigen::VectorXcd::Zero(K);
    s.tail(K - 1) = v.head(K - 1);
    return s;
  };

  auto measure = [&](int j) {
    const double t = traj.times[j];
    const HardyCoeffs& u = traj.states[j];
    out.times.push_back(t);
    out.columns.push_back(g);
    std::vector<double> th(m);
    for (int k = 0; k < m; ++k) {
      const int n = tracked[k];
      const double ln = dec0.eigenvalues[n];
      const cplx rot = std::polar(1.0, -ln * ln * t);
      out.norm_drift = std::max(out.norm_drift, std::abs(g[k].norm() - 1.0));
      const cplx ug = g[k].dot(u.vec());      // <u|g_n>
      const cplx uf = f0[k].dot(u0.vec());    // <u0|f_n>
      out.laws.u_law = std::max(out.laws.u_law, std::abs(ug - uf * rot));
      const cplx og = std::conj(g[k][0]);
      const cplx of = std::conj(f0[k][0]);
      out.laws.one_law = std::max(out.laws.one_law, std::abs(og - of * rot));
      th[k] = std::arg(f0[k].dot(g[k]));
      for (int q = 0; q < m; ++q) {
        const int p = tracked[q];
        const double lp = dec0.eigenvalues[p];
        const cplx sg = g[k].dot(shifted(g[q]));   // <S g_p | g_n>
        const cplx sf = f0[k].dot(shifted(f0[q]));
        const cplx law = sf * std::polar(1.0, ((lp + 1.0) * (lp + 1.0) - ln * ln) * t);
        out.laws.pair_law = std::max(out.laws.pair_law, std::abs(sg - law));
      }
    }
    out.phases.push_back(std::move(th));
  };

  measure(0);
  for (int i = 0; i + 1 < S; ++i) {
    const LaxApplier b0(traj.states[i], sign);
    const LaxApplier bm(midpoint(i), sign);
    const LaxApplier b1(traj.states[i + 1], sign);
    for (int k = 0; k < m; ++k) {
      const Eigen::VectorXcd k1 = b0.apply_b(g[k]);
      const Eigen::VectorXcd k2 = bm.apply_b(g[k] + 0.5 * h * k1);
      const Eigen::VectorXcd k3 = bm.apply_b(g[k] + 0.5 * h * k2);
      const Eigen::VectorXcd k4 = b1.apply_b(g[k] + h * k3);
      g[k] += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    measure(i + 1);
  }
  const LaxApplier last(traj.states.back(), sign);
  for (int k = 0; k < m; ++k) {
    const double ln = dec0.eigenvalues[tracked[k]];
    out.eigen_residual = std::max(out.eigen_residual, (last.apply_l(g[k]) - ln * g[k]).norm());
  }
  if (out.norm_drift > 1e-5) {
    throw Error(ErrorCode::kBasisDrift, "evolved basis lost normalization", out.norm_drift);
  }
  return out;
}

}  // namespace cslab
