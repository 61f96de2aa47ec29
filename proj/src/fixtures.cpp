#include "cslab/fixtures.hpp"

#include <cmath>
#include <sstream>

namespace cslab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "not a number: '" + s + "'");
  }
  return v;
}

int integer(const std::string& s) {
  const double v = number(s);
  if (v != std::floor(v)) throw Error(ErrorCode::kInvalidParameter, "not an integer: '" + s + "'");
  return static_cast<int>(v);
}

}  // namespace

Fixture appendix1(cplx p, int K) {
  if (!(std::abs(p) < 1.0)) throw Error(ErrorCode::kPoleOnCircle, "|p| >= 1", std::abs(p));
  Fixture f;
  f.name = "appendix1";
  f.sign = Sign::kFocusing;
  f.u = HardyCoeffs::zeros(K);
  cplx pn = std::sqrt(1.0 - std::norm(p));
  for (int n = 0; n < K; ++n, pn *= p) f.u[n] = pn;
  f.ladder = BlaschkeProduct{0.0, 0, {p}};
  f.degree = 1;
  return f;
}

Fixture appendix2(cplx p, int K) {
  if (!(std::abs(p) < 1.0)) throw Error(ErrorCode::kPoleOnCircle, "|p| >= 1", std::abs(p));
  Fixture f;
  f.name = "appendix2";
  f.sign = Sign::kFocusing;
  f.u = HardyCoeffs::zeros(K);
  const cplx p2 = p * p;
  cplx amp = std::sqrt(2.0 * (1.0 - std::norm(p2)));
  for (int n = 1; n < K; n += 2, amp *= p2) f.u[n] = amp;
  f.ladder = BlaschkeProduct{0.0, 0, {p, -p}};
  f.degree = 2;
  return f;
}

Fixture wave_fixture(const WaveParams& w, int K, const std::string& name) {
  Fixture f;
  f.name = name;
  f.sign = w.sign;
  f.u = sample_wave(w, 0.0, K);
  f.wave = w;
  switch (w.family) {
    case WaveFamily::kPlaneWave:
      f.ladder = BlaschkeProduct{0.0, w.N, {}};
      f.degree = w.N;
      break;
    case WaveFamily::kPoleFamily:
    case WaveFamily::kStationary: {
      // Poles of u at the N-th roots of 1/p.
      BlaschkeProduct b;
      const double r = std::pow(std::abs(w.p), 1.0 / w.N);
      const double a = std::arg(w.p) / w.N;
      for (int k = 0; k < w.N; ++k) b.poles.push_back(std::polar(r, a + 2.0 * M_PI * k / w.N));
      f.ladder = b;
      f.degree = w.N;
      break;
    }
    case WaveFamily::kModulatedFamily:
      f.ladder = BlaschkeProduct{0.0, w.m, {w.p}};
      f.degree = w.m + 1;
      break;
  }
  return f;
}

Fixture parse_fixture(const std::string& text, int K, std::optional<double> p_override) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.empty()) throw Error(ErrorCode::kInvalidParameter, "empty fixture name");
  const std::string& kind = parts[0];
  auto need = [&](std::size_t n) {
    if (parts.size() != n) {
      throw Error(ErrorCode::kInvalidParameter, "fixture '" + text + "' expects " +
                  std::to_string(n - 1) + " fields");
    }
  };
  if (kind == "appendix1") {
    need(1);
    return appendix1(p_override.value_or(0.5), K);
  }
  if (kind == "appendix2") {
    need(1);
    return appendix2(p_override.value_or(0.6), K);
  }
  if (kind == "plane") {
    need(3);
    return wave_fixture(make_plane_wave(Sign::kFocusing, integer(parts[1]), number(parts[2])), K,
                        text);
  }
  if (kind == "wave") {
    need(5);
    return wave_fixture(make_pole_wave(parse_sign(parts[1]), integer(parts[2]), number(parts[3]),
                                       number(parts[4])),
                        K, text);
  }
  if (kind == "stationary") {
    need(3);
    return wave_fixture(make_stationary_wave(Sign::kFocusing, integer(parts[1]), number(parts[2])),
                        K, text);
  }
  if (kind == "modulated") {
    need(3);
    return wave_fixture(make_modulated_wave(Sign::kFocusing, integer(parts[1]), number(parts[2])),
                        K, text);
  }
  throw Error(ErrorCode::kInvalidParameter, "unknown fixture '" + text + "'");
}

WaveParams defocusing_reference_wave() { return make_pole_wave(Sign::kDefocusing, 1, 0.5, 1.0); }
WaveParams focusing_reference_wave() { return make_pole_wave(Sign::kFocusing, 1, 0.5, 1.0); }

std::vector<Fixture> rational_fixtures(int K) {
  return {appendix1(0.5, K),
          appendix2(0.6, K),
          wave_fixture(defocusing_reference_wave(), K, "wave:defocusing:1:0.5:1"),
          wave_fixture(focusing_reference_wave(), K, "wave:focusing:1:0.5:1"),
          wave_fixture(make_stationary_wave(Sign::kFocusing, 1, 0.5), K, "stationary:1:0.5"),
          wave_fixture(make_modulated_wave(Sign::kFocusing, 3, 0.5), K, "modulated:3:0.5")};
}

std::vector<Fixture> plane_fixtures(int K) {
  std::vector<Fixture> out;
  for (int N = 1; N <= 3; ++N) {
    out.push_back(wave_fixture(make_plane_wave(Sign::kFocusing, N, 0.5), K,
                               "plane:" + std::to_string(N) + ":0.5"));
  }
  return out;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

HardyCoeffs random_potential(std::mt19937_64& rng, int K, double decay) {
  HardyCoeffs u = HardyCoeffs::zeros(K);
  double scale = 1.0;
  for (int n = 0; n < K; ++n, scale *= decay) {
    const double amp = scale * uniform01(rng);
    u[n] = std::polar(amp, 2.0 * M_PI * uniform01(rng));
  }
  return u;
}

PoleConfig random_pole_config(std::mt19937_64& rng, Sign sign) {
  PoleConfig cfg;
  cfg.sign = sign;
  const int r = 1 + static_cast<int>(3.0 * uniform01(rng));
  cfg.m0 = static_cast<int>(2.0 * uniform01(rng));
  while (static_cast<int>(cfg.poles.size()) < r) {
    const cplx p = std::polar(0.1 + 0.6 * uniform01(rng), 2.0 * M_PI * uniform01(rng));
    const int mult = 1 + static_cast<int>(2.0 * uniform01(rng));
    bool separated = true;
    for (const Pole& q : cfg.poles) separated = separated && std::abs(q.p - p) >= 0.2;
    if (separated) cfg.poles.push_back({p, mult});
  }
  if (sign == Sign::kDefocusing) {
    // Past the decoupled feasibility bound |a| >= 2 sqrt(m_j / (1 - |p_j|^2)) for every pole.
    double g = 0.0;
    for (const Pole& q : cfg.poles) g += q.mult / (1.0 - std::norm(q.p));
    cfg.a = -(1.0 + 2.0 * std::sqrt(g));
  }
  return cfg;
}

}  // namespace cslab
