#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "cslab/hardy.hpp"

namespace cslab {

enum class WaveFamily { kPlaneWave, kPoleFamily, kModulatedFamily, kStationary };

const char* to_string(WaveFamily f);
WaveFamily parse_family(const std::string& s);

struct WaveParams {
  Sign sign = Sign::kFocusing;
  WaveFamily family = WaveFamily::kPoleFamily;
  int N = 1;  // pole degree or plane-wave frequency
  int m = 0;  // modulated-family exponent
  cplx p = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double theta = 0.0;
  cplx C = 0.0;  // plane waves only
  double c = 0.0;
};

// alpha solving alpha*beta + beta^2/(1-|p|^2) = -N (defocusing) or +N (focusing).
double solve_wave_constraint(Sign sign, int N, cplx p, double beta);

// Real roots beta of the same constraint for a given alpha, ascending.
std::vector<double> solve_wave_beta(Sign sign, int N, cplx p, double alpha);

// Residual of the family constraints (max over equations).
double wave_constraint_residual(const WaveParams& w);

WaveParams make_pole_wave(Sign sign, int N, cplx p, double beta, double theta = 0.0);
// Validates a user-supplied (alpha, beta) pair.
WaveParams make_pole_wave(Sign sign, int N, cplx p, double alpha, double beta, double theta);
WaveParams make_plane_wave(Sign sign, int N, cplx C, double theta = 0.0);
// branch = +1 or -1 selects the sign of beta.
WaveParams make_modulated_wave(Sign sign, int m, cplx p, double theta = 0.0, int branch = 1);
WaveParams make_stationary_wave(Sign sign, int N, cplx p, double theta = 0.0);

struct SpeedReport {
  double c = 0.0;
  double cross_check = 0.0;  // independent closed form, equal to c for valid parameters
};

SpeedReport wave_speed(const WaveParams& w);
double wave_l2(const WaveParams& w);

HardyCoeffs sample_wave(const WaveParams& w, double t, int K);
// Exact time derivative of the sampled coefficients.
HardyCoeffs sample_wave_dt(const WaveParams& w, double t, int K);

// i u_t + u_xx +- 2 D Pi(|u|^2) u in coefficient space.
HardyCoeffs pde_operator(const HardyCoeffs& u, const HardyCoeffs& dudt, Sign sign);

struct TimeSampler {
  std::function<HardyCoeffs(double)> state;
  // Optional exact derivative; centered difference otherwise.
  std::function<HardyCoeffs(double)> time_derivative;
};

// ||i u_t + u_xx +- 2 D Pi(|u|^2) u|| / max(1, ||u||).
double pde_residual(const TimeSampler& u_of_t, Sign sign, double t, double dt = 1e-5);
double pde_residual(const WaveParams& w, double t, int K);

struct L2Search {
  WaveParams wave;
  double norm = 0.0;
};

// Pole-family wave whose L^2 norm equals target.
L2Search find_wave_with_norm(Sign sign, int N, double target);

}  // namespace cslab
