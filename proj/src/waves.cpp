#include "cslab/waves.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>

namespace cslab {

namespace {

constexpr double kConstraintTol = 1e-12;

double szego_weight(cplx p) {
  const double r = std::abs(p);
  if (!(r > 0.0 && r < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "|p| must lie in (0, 1)", r);
  }
  return 1.0 / (1.0 - r * r);
}

void finalize(WaveParams& w) {
  const double res = wave_constraint_residual(w);
  if (!(res <= kConstraintTol)) {
    throw Error(ErrorCode::kConstraintViolation, "wave constraint not satisfied", res);
  }
  w.c = wave_speed(w).c;
}

}  // namespace

const char* to_string(WaveFamily f) {
  switch (f) {
    case WaveFamily::kPlaneWave: return "plane_wave";
    case WaveFamily::kPoleFamily: return "pole_family";
    case WaveFamily::kModulatedFamily: return "modulated_family";
    case WaveFamily::kStationary: return "stationary";
  }
  return "unknown";
}

WaveFamily parse_family(const std::string& s) {
  if (s == "plane_wave" || s == "plane") return WaveFamily::kPlaneWave;
  if (s == "pole_family" || s == "pole") return WaveFamily::kPoleFamily;
  if (s == "modulated_family" || s == "modulated") return WaveFamily::kModulatedFamily;
  if (s == "stationary") return WaveFamily::kStationary;
  throw Error(ErrorCode::kInvalidParameter, "unknown wave family '" + s + "'");
}

double solve_wave_constraint(Sign sign, int N, cplx p, double beta) {
  const double g = szego_weight(p);
  if (beta == 0.0 || !std::isfinite(beta)) {
    throw Error(ErrorCode::kInvalidParameter, "beta must be nonzero");
  }
  if (N < 1) throw Error(ErrorCode::kInvalidParameter, "N must be >= 1");
  return (sign_factor(sign) * N - beta * beta * g) / beta;
}

std::vector<double> solve_wave_beta(Sign sign, int N, cplx p, double alpha) {
  const double g = szego_weight(p);
  if (N < 1) throw Error(ErrorCode::kInvalidParameter, "N must be >= 1");
  // g beta^2 + alpha beta - s N = 0
  const double disc = alpha * alpha + 4.0 * g * sign_factor(sign) * N;
  if (disc < 0.0) {
    throw Error(ErrorCode::kInfeasibleSign, "no real beta for this alpha", disc);
  }
  const double sq = std::sqrt(disc);
  // Cancellation-free pair of roots.
  const double q = -0.5 * (alpha + std::copysign(sq, alpha == 0.0 ? 1.0 : alpha));
  std::vector<double> roots{q / g, -sign_factor(sign) * N / q};
  std::sort(roots.begin(), roots.end());
  return roots;
}

double wave_constraint_residual(const WaveParams& w) {
  switch (w.family) {
    case WaveFamily::kPlaneWave:
      return std::abs(w.C) > 0.0 && w.N >= 0 ? 0.0 : 1.0;
    case WaveFamily::kPoleFamily:
    case WaveFamily::kStationary: {
      const double g = szego_weight(w.p);
      return std::abs(w.alpha * w.beta + w.beta * w.beta * g - sign_factor(w.sign) * w.N);
    }
    case WaveFamily::kModulatedFamily: {
      const double g = szego_weight(w.p);
      return std::max(std::abs(w.alpha * w.beta + w.beta * w.beta * g - 1.0),
                      std::abs(w.beta * (w.m - 1) - 2.0 * w.alpha));
    }
  }
  return 1.0;
}

WaveParams make_pole_wave(Sign sign, int N, cplx p, double beta, double theta) {
  WaveParams w;
  w.sign = sign;
  w.family = WaveFamily::kPoleFamily;
  w.N = N;
  w.p = p;
  w.beta = beta;
  w.alpha = solve_wave_constraint(sign, N, p, beta);
  w.theta = theta;
  finalize(w);
  return w;
}

WaveParams make_pole_wave(Sign sign, int N, cplx p, double alpha, double beta, double theta) {
  if (N < 1) throw Error(ErrorCode::kInvalidParameter, "N must be >= 1");
  if (beta == 0.0) throw Error(ErrorCode::kInvalidParameter, "beta must be nonzero");
  WaveParams w;
  w.sign = sign;
  w.family = WaveFamily::kPoleFamily;
  w.N = N;
  w.p = p;
  w.alpha = alpha;
  w.beta = beta;
  w.theta = theta;
  finalize(w);
  return w;
}

WaveParams make_plane_wave(Sign sign, int N, cplx C, double theta) {
  if (N < 0) throw Error(ErrorCode::kInvalidParameter, "N must be >= 0");
  if (std::abs(C) == 0.0) throw Error(ErrorCode::kInvalidParameter, "C must be nonzero");
  WaveParams w;
  w.sign = sign;
  w.family = WaveFamily::kPlaneWave;
  w.N = N;
  w.C = C;
  w.theta = theta;
  finalize(w);
  return w;
}

WaveParams make_modulated_wave(Sign sign, int m, cplx p, double theta, int branch) {
  if (sign != Sign::kFocusing) {
    throw Error(ErrorCode::kFamilyUnavailable, "modulated family exists only when focusing");
  }
  if (m < 1) throw Error(ErrorCode::kInvalidParameter, "m must be >= 1");
  const double g = szego_weight(p);
  // alpha = beta (m-1)/2 substituted into alpha beta + g beta^2 = 1
  const double denom = 0.5 * (m - 1) + g;
  if (denom <= 0.0) {
    throw Error(ErrorCode::kConstraintViolation, "complex root for beta", denom);
  }
  WaveParams w;
  w.sign = sign;
  w.family = WaveFamily::kModulatedFamily;
  w.m = m;
  w.N = 1;
  w.p = p;
  w.beta = (branch >= 0 ? 1.0 : -1.0) / std::sqrt(denom);
  w.alpha = 0.5 * w.beta * (m - 1);
  w.theta = theta;
  finalize(w);
  return w;
}

WaveParams make_stationary_wave(Sign sign, int N, cplx p, double theta) {
  if (sign != Sign::kFocusing) {
    throw Error(ErrorCode::kFamilyUnavailable, "no stationary defocusing wave exists");
  }
  if (N < 1) throw Error(ErrorCode::kInvalidParameter, "N must be >= 1");
  szego_weight(p);
  const double r2 = std::norm(p);
  WaveParams w;
  w.sign = sign;
  w.family = WaveFamily::kStationary;
  w.N = N;
  w.p = p;
  w.alpha = std::sqrt(N * (1.0 - r2) / (2.0 * (1.0 + r2)));
  w.beta = -2.0 * w.alpha;
  w.theta = theta;
  finalize(w);
  return w;
}

SpeedReport wave_speed(const WaveParams& w) {
  switch (w.family) {
    case WaveFamily::kPlaneWave:
      return {static_cast<double>(w.N), static_cast<double>(w.N)};
    case WaveFamily::kModulatedFamily:
      return {static_cast<double>(w.m), static_cast<double>(w.m)};
    case WaveFamily::kPoleFamily:
    case WaveFamily::kStationary: {
      const double r2 = std::norm(w.p);
      const double ratio = (1.0 + r2) / (1.0 - r2);
      const double N = w.N;
      const double c = -N * (1.0 + 2.0 * w.alpha / w.beta);
      const double tail = 2.0 * N / (w.beta * w.beta);
      const double cross =
          w.sign == Sign::kDefocusing ? N * (ratio + tail) : -N * (-ratio + tail);
      return {c, cross};
    }
  }
  return {};
}

double wave_l2(const WaveParams& w) {
  switch (w.family) {
    case WaveFamily::kPlaneWave:
      return std::norm(w.C);
    case WaveFamily::kModulatedFamily:
      return w.alpha * w.alpha + w.alpha * w.beta + 1.0;
    case WaveFamily::kPoleFamily:
    case WaveFamily::kStationary:
      return w.alpha * w.alpha + w.alpha * w.beta + sign_factor(w.sign) * w.N;
  }
  return 0.0;
}

HardyCoeffs sample_wave(const WaveParams& w, double t, int K) {
  HardyCoeffs h = HardyCoeffs::zeros(K);
  const cplx phase = std::polar(1.0, w.theta);
  switch (w.family) {
    case WaveFamily::kPlaneWave:
      if (w.N < K) h[w.N] = phase * w.C;
      break;
    case WaveFamily::kPoleFamily:
    case WaveFamily::kStationary: {
      h[0] = phase * (w.alpha + w.beta);
      cplx pk = w.p;
      for (int k = 1; static_cast<std::int64_t>(k) * w.N < K; ++k) {
        h[k * w.N] = phase * w.beta * pk;
        pk *= w.p;
      }
      break;
    }
    case WaveFamily::kModulatedFamily: {
      if (w.m < K) h[w.m] = phase * (w.alpha + w.beta);
      cplx pk = w.p;
      for (int k = 1; w.m + k < K; ++k) {
        h[w.m + k] = phase * w.beta * pk;
        pk *= w.p;
      }
      break;
    }
  }
  return translate(h, w.c * t);
}

HardyCoeffs sample_wave_dt(const WaveParams& w, double t, int K) {
  HardyCoeffs h = sample_wave(w, t, K);
  for (int n = 0; n < K; ++n) h[n] *= cplx(0.0, -n * w.c);
  return h;
}

HardyCoeffs pde_operator(const HardyCoeffs& u, const HardyCoeffs& dudt, Sign sign) {
  HardyCoeffs dw = derivative(projected_modulus_squared(u));
  for (int n = 0; n < u.K(); ++n) dw[n] *= cplx(0.0, -1.0);  // D = -i d/dx
  const HardyCoeffs nl = hardy_product(dw, u);
  HardyCoeffs r = HardyCoeffs::zeros(u.K());
  const double s2 = 2.0 * sign_factor(sign);
  for (int n = 0; n < u.K(); ++n) {
    r[n] = cplx(0.0, 1.0) * dudt[n] - static_cast<double>(n) * n * u[n] + s2 * nl[n];
  }
  return r;
}

double pde_residual(const TimeSampler& u_of_t, Sign sign, double t, double dt) {
  const HardyCoeffs u = u_of_t.state(t);
  HardyCoeffs dudt = HardyCoeffs::zeros(u.K());
  if (u_of_t.time_derivative) {
    dudt = u_of_t.time_derivative(t);
  } else {
    const HardyCoeffs up = u_of_t.state(t + dt);
    const HardyCoeffs um = u_of_t.state(t - dt);
    dudt = HardyCoeffs(Eigen::VectorXcd((up.vec() - um.vec()) / (2.0 * dt)));
  }
  return pde_operator(u, dudt, sign).norm() / std::max(1.0, u.norm());
}

double pde_residual(const WaveParams& w, double t, int K) {
  TimeSampler s{[&](double tt) { return sample_wave(w, tt, K); },
                [&](double tt) { return sample_wave_dt(w, tt, K); }};
  return pde_residual(s, w.sign, t);
}

L2Search find_wave_with_norm(Sign sign, int N, double target) {
  if (!(target > 0.0)) throw Error(ErrorCode::kInvalidParameter, "target norm must be > 0");
  const double want = target * target;
  for (double r : {0.5, 0.2, 0.05, 0.01, 2e-3, 5e-4, 1e-4, 2e-5}) {
    const cplx p(r, 0.0);
    const double g = 1.0 / (1.0 - r * r);
    auto norm2 = [&](double beta) {
      const double a = solve_wave_constraint(sign, N, p, beta);
      return a * a + a * beta + sign_factor(sign) * N;
    };
    // ||u||^2 = N^2/beta^2 + beta^2 g^2 r^2 - 2 s N r^2 g, minimal at beta^2 = N/(g r)
    const double bmin = std::sqrt(N / (g * r));
    if (norm2(bmin) >= want) continue;
    double bhi = 2.0 * bmin;
    while (norm2(bhi) < want) bhi *= 2.0;
    std::uintmax_t iters = 200;
    auto bracket = boost::math::tools::toms748_solve(
        [&](double b) { return norm2(b) - want; }, bmin, bhi,
        boost::math::tools::eps_tolerance<double>(52), iters);
    const double beta = 0.5 * (bracket.first + bracket.second);
    L2Search out{make_pole_wave(sign, N, p, beta), 0.0};
    out.norm = std::sqrt(wave_l2(out.wave));
    return out;
  }
  throw Error(ErrorCode::kConstraintViolation, "no pole-family wave reaches the target norm",
              target);
}

}  // namespace cslab
