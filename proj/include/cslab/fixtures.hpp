#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cslab/finitegap.hpp"
#include "cslab/hardy.hpp"
#include "cslab/waves.hpp"

namespace cslab {

struct Fixture {
  std::string name;
  Sign sign = Sign::kFocusing;
  HardyCoeffs u;
  std::optional<WaveParams> wave;
  std::optional<BlaschkeProduct> ladder;  // minimal Blaschke ladder base when known
  int degree = 0;                         // its degree N
};

// sqrt(1-|p|^2)/(1-pz), focusing.
Fixture appendix1(cplx p, int K);
// sqrt(2(1-|p|^4)) z/(1-p^2 z^2), focusing.
Fixture appendix2(cplx p, int K);
Fixture wave_fixture(const WaveParams& w, int K, const std::string& name);

// Names: appendix1, appendix2, plane:N:C, wave:sign:N:p:beta, stationary:N:p, modulated:m:p.
// p_override replaces the pole of appendix fixtures when given.
Fixture parse_fixture(const std::string& text, int K, std::optional<double> p_override = {});

// Fixtures with a pole inside the disc, used by the identity and inversion sweeps.
std::vector<Fixture> rational_fixtures(int K);
// Plane waves C e^{iNx}, N = 1, 2, 3.
std::vector<Fixture> plane_fixtures(int K);

// Defocusing pole wave with N=1, p=0.5, beta=1.
WaveParams defocusing_reference_wave();
// Focusing pole wave with N=1, p=0.5, beta=1.
WaveParams focusing_reference_wave();

// Uniform double in [0, 1) from the top 53 bits; portable across standard libraries.
double uniform01(std::mt19937_64& rng);

// |u_n| = decay^n * U(0,1) with a uniform phase.
HardyCoeffs random_potential(std::mt19937_64& rng, int K, double decay = 0.8);

struct PoleConfig {
  Sign sign = Sign::kFocusing;
  int m0 = 0;
  std::vector<Pole> poles;
  std::optional<cplx> a;  // pinned value; defocusing needs |a| large enough
};

// r <= 3 poles with |p| in [0.1, 0.7], pairwise separation >= 0.2, multiplicities <= 2.
PoleConfig random_pole_config(std::mt19937_64& rng, Sign sign);

}  // namespace cslab
