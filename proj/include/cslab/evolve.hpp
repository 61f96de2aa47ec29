#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cslab/hardy.hpp"
#include "cslab/lax.hpp"

namespace cslab {

struct EvolveConfig {
  Sign sign = Sign::kFocusing;
  double dt = 1e-4;
  double T = 0.5;
  int record_every = 1;
  double blowup_threshold = 1e6;
  double tail_threshold = 1e-8;
};

struct SnapshotDiagnostics {
  double l2 = 0.0;     // ||u||^2
  cplx mean = 0.0;     // <u|1>
  double tail = 0.0;   // energy fraction in the top K/8 modes
};

struct Trajectory {
  Sign sign = Sign::kFocusing;
  double dt = 0.0;   // integrator step actually used
  std::vector<double> times;
  std::vector<HardyCoeffs> states;
  std::vector<SnapshotDiagnostics> diagnostics;
  Warnings warnings;
};

SnapshotDiagnostics diagnose(const HardyCoeffs& u);

// Right-hand side of the modal ODE: -i n^2 u +- 2i [D Pi(|u|^2) u].
HardyCoeffs modal_rhs(const HardyCoeffs& u, Sign sign);

Trajectory evolve(const HardyCoeffs& u0, const EvolveConfig& cfg);

struct ConservationReport {
  double l2_drift = 0.0;
  double mean_drift = 0.0;
  double eigen_drift = 0.0;
  double max_tail = 0.0;
  int spectral_samples = 0;
};

// Eigenvalue drift is measured on up to max_samples evenly spaced snapshots.
ConservationReport conservation_report(const Trajectory& traj, int n_eigs = 10,
                                       int max_samples = 11);

struct SpeedFit {
  double c = 0.0;
  double spread = 0.0;  // max deviation of per-mode estimates from c
  std::vector<int> modes;
  std::vector<double> per_mode;
};

// Throws NotATravelingWave when per-mode speeds or amplitudes disagree.
SpeedFit measure_speed(const Trajectory& traj, const HardyCoeffs& base);

struct PhaseLawReport {
  double u_law = 0.0;     // <u(t)|g_n> vs <u0|f_n> e^{-i l_n^2 t}
  double one_law = 0.0;   // <1|g_n> vs <1|f_n> e^{-i l_n^2 t}
  double pair_law = 0.0;  // <S g_p|g_n> vs <S f_p|f_n> e^{i((l_p+1)^2 - l_n^2) t}
  double max() const;
};

struct EvolvedBasis {
  std::vector<int> indices;
  std::vector<double> times;
  std::vector<std::vector<Eigen::VectorXcd>> columns;  // [snapshot][tracked]
  std::vector<std::vector<double>> phases;            // theta_n(t) against f_n
  PhaseLawReport laws;
  double norm_drift = 0.0;
  double eigen_residual = 0.0;  // ||L_{u(T)} g_n - l_n g_n|| at the last snapshot
};

// Integrates d/dt g = B_{u(t)} g from g(0) = f_n for every tracked n.
EvolvedBasis evolve_basis(const Trajectory& traj, const SpectralDecomposition& dec0,
                          const std::vector<int>& tracked);

}  // namespace cslab
