#include "cslab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <random>

#include "cslab/error.hpp"
#include "cslab/evolve.hpp"
#include "cslab/finitegap.hpp"
#include "cslab/fixtures.hpp"
#include "cslab/lax.hpp"
#include "cslab/parallel.hpp"
#include "cslab/waves.hpp"

namespace cslab {

namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Outcome {
  bool passed = true;
  std::string detail;
  void check(bool ok, const std::string& what) {
    passed = passed && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [FAIL]");
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 64 points filling the disc |z| <= 0.9 on a sunflower spiral.
std::vector<cplx> disc_points() {
  std::vector<cplx> z;
  for (int k = 0; k < 64; ++k) {
    z.push_back(std::polar(0.9 * std::sqrt((k + 1) / 64.0), 2.399963229728653 * k));
  }
  return z;
}

std::vector<Fixture> all_fixtures(int K) {
  std::vector<Fixture> fx = rational_fixtures(K);
  for (Fixture& f : plane_fixtures(K)) fx.push_back(std::move(f));
  return fx;
}

Outcome appendix1_check() {
  Outcome o;
  const int K = 256;
  const Fixture f = appendix1(0.5, K);
  const SpectralDecomposition dec = spectral_decompose(build_lax(f.u, f.sign));
  double err = 0.0;
  for (int n = 0; n < 20; ++n) err = std::max(err, std::abs(dec.eigenvalues[n] - (n - 1.0)));
  o.check(err < 1e-8, fmt("max|nu_n-(n-1)|, n<20 = %.3e (< 1e-8)", err));
  const BlaschkeEigenCheck bc = blaschke_eigen_check(f.u, *f.ladder, f.sign, 8);
  const double worst = *std::max_element(bc.residuals.begin(), bc.residuals.end());
  o.check(worst < 1e-8, fmt("ladder residual k<=8 = %.3e (< 1e-8)", worst));
  return o;
}

Outcome appendix2_check() {
  Outcome o;
  const int K = 256;
  const Fixture f = appendix2(0.6, K);
  const SpectralDecomposition dec = spectral_decompose(build_lax(f.u, f.sign));
  const double expect[5] = {-1.0, 0.0, 0.0, 1.0, 2.0};
  double err = 0.0;
  for (int n = 0; n < 5; ++n) err = std::max(err, std::abs(dec.eigenvalues[n] - expect[n]));
  o.check(err < 1e-8, fmt("spectrum head error = %.3e (< 1e-8)", err));
  double overlap = 0.0;
  for (int n = 1; n < dec.reliable_count(); ++n) {
    overlap = std::max(overlap, std::abs(dec.eigenvectors.col(n).dot(f.u.vec())));
  }
  o.check(overlap < 1e-7, fmt("max |<u|f_n>|, n>=1 = %.3e (< 1e-7)", overlap));
  const double g2 = dec.eigenvalues[2] - dec.eigenvalues[1] - 1.0;
  o.check(std::abs(g2) > 1e-7, fmt("gamma_2 = %.6f (nonzero)", g2));
  return o;
}

Outcome gap_law_check(std::uint64_t seed) {
  Outcome o;
  const int K = 256;
  const int draws = 100;
  std::vector<double> defoc(draws), foc(draws), small(draws);
  std::vector<int> collinear(draws);
  parallel_for(draws, [&](std::size_t i) {
    std::mt19937_64 rng(seed + 7919 * i);
    const HardyCoeffs u = random_potential(rng, K, 0.8);
    {
      const SpectralDecomposition dec = spectral_decompose(build_lax(u, Sign::kDefocusing));
      const GapProfile gp = gap_profile(dec, u, 1e-8);
      double m = 1e300;
      for (int n = 1; n < dec.reliable_count(); ++n) {
        m = std::min(m, dec.eigenvalues[n] - dec.eigenvalues[n - 1]);
      }
      defoc[i] = m;
      collinear[i] = static_cast<int>(gp.collinearity_set.size());
    }
    const int R = K - K / 8;
    {
      const Eigen::VectorXd ev = eigenvalues_only(build_lax(u, Sign::kFocusing));
      double m = 1e300;
      for (int n = 2; n < R; ++n) m = std::min(m, ev[n] - ev[n - 2]);
      foc[i] = m;
    }
    {
      HardyCoeffs v = u;
      v.vec() *= std::sqrt(0.4 / u.norm2());
      const Eigen::VectorXd ev = eigenvalues_only(build_lax(v, Sign::kFocusing));
      double m = 1e300;
      for (int n = 1; n < R; ++n) m = std::min(m, ev[n] - ev[n - 1]);
      small[i] = m;
    }
  });
  const double d = *std::min_element(defoc.begin(), defoc.end());
  const double f = *std::min_element(foc.begin(), foc.end());
  const double s = *std::min_element(small.begin(), small.end());
  int col = 0;
  for (int c : collinear) col += c;
  o.check(d >= 1.0 - 1e-8, fmt("defocusing min spacing = %.12f (>= 1-1e-8)", d));
  o.check(col == 0, fmt("collinearity indices = %d (0)", col));
  o.check(f >= 1.0 - 1e-8, fmt("focusing min nu_{n+2}-nu_n = %.12f (>= 1-1e-8)", f));
  o.check(s > 0.6 - 1e-8, fmt("||u||^2=0.4 min spacing = %.12f (> 0.6-1e-8)", s));
  return o;
}

Outcome identity_check() {
  Outcome o;
  const std::vector<Fixture> lo = all_fixtures(128);
  const std::vector<Fixture> hi = all_fixtures(256);
  double worst = 0.0, min_ratio = 1e300;
  std::string weakest;
  for (std::size_t i = 0; i < hi.size(); ++i) {
    const double r128 =
        check_spectral_identities(lo[i].u, spectral_decompose(build_lax(lo[i].u, lo[i].sign))).max();
    const double r256 =
        check_spectral_identities(hi[i].u, spectral_decompose(build_lax(hi[i].u, hi[i].sign))).max();
    worst = std::max(worst, r256);
    // 0/0 counts as no decrease.
    const double ratio = r256 > 0.0 ? r128 / r256 : (r128 > 0.0 ? 1e300 : 1.0);
    if (ratio < min_ratio) {
      min_ratio = ratio;
      weakest = fmt("%s: %.2e -> %.2e", hi[i].name.c_str(), r128, r256);
    }
  }
  o.check(worst < 1e-8, fmt("max residual at K=256 = %.3e (< 1e-8)", worst));
  o.check(min_ratio >= 1e3,
          fmt("min decrease K=128->256 = %.3g (>= 1e3; %s)", min_ratio, weakest.c_str()));
  return o;
}

Outcome pde_check() {
  Outcome o;
  const int K = 256;
  std::vector<std::pair<std::string, WaveParams>> waves = {
      {"defocusing", defocusing_reference_wave()},
      {"focusing", focusing_reference_wave()},
      {"modulated m=3", make_modulated_wave(Sign::kFocusing, 3, 0.5)},
      {"stationary", make_stationary_wave(Sign::kFocusing, 1, 0.5)}};
  for (int N = 1; N <= 3; ++N) {
    waves.push_back({"plane N=" + std::to_string(N), make_plane_wave(Sign::kFocusing, N, 0.5)});
  }
  double worst = 0.0;
  std::string which;
  for (const auto& [name, w] : waves) {
    for (double t : {0.0, 0.3}) {
      const double r = pde_residual(w, t, K);
      if (r >= worst) {
        worst = r;
        which = name;
      }
    }
  }
  o.check(worst < 1e-10, fmt("max residual = %.3e (< 1e-10, %s)", worst, which.c_str()));
  return o;
}

Outcome speed_check() {
  Outcome o;
  const int K = 256;
  const std::vector<std::pair<std::string, WaveParams>> waves = {
      {"defocusing", defocusing_reference_wave()},
      {"focusing", focusing_reference_wave()},
      {"stationary", make_stationary_wave(Sign::kFocusing, 1, 0.5)}};
  for (const auto& [name, w] : waves) {
    EvolveConfig cfg;
    cfg.sign = w.sign;
    cfg.dt = 1e-4;
    cfg.T = 0.5;
    cfg.record_every = 50;
    const HardyCoeffs u0 = sample_wave(w, 0.0, K);
    const SpeedFit fit = measure_speed(evolve(u0, cfg), u0);
    // Relative to |c|, absolute for the stationary wave.
    const double err = std::abs(fit.c - w.c) / std::max(std::abs(w.c), w.c == 0.0 ? 1.0 : 0.0);
    o.check(err < 1e-5, fmt("%s c=%.10f vs %.10f err %.2e (< 1e-5)", name.c_str(), fit.c, w.c, err));
  }
  const WaveParams w = defocusing_reference_wave();
  const HardyCoeffs u0 = sample_wave(w, 0.0, K);
  const double lam0 = eigenvalues_only(build_lax(u0, w.sign))[0];
  const double err = std::abs(w.N + 2.0 * lam0 - w.c);
  o.check(err < 2e-6, fmt("|N+2 lambda_0 - c| = %.3e (< 2e-6)", err));
  return o;
}

Outcome conservation_check() {
  Outcome o;
  const int K = 256;
  const std::vector<Fixture> fx = all_fixtures(K);
  std::vector<ConservationReport> rep(fx.size());
  parallel_for(fx.size(), [&](std::size_t i) {
    EvolveConfig cfg;
    cfg.sign = fx[i].sign;
    cfg.dt = 1e-4;
    cfg.T = 0.5;
    cfg.record_every = 100;
    rep[i] = conservation_report(evolve(fx[i].u, cfg), 10, 51);
  });
  double l2 = 0.0, mean = 0.0, eig = 0.0;
  for (const auto& r : rep) {
    l2 = std::max(l2, r.l2_drift);
    mean = std::max(mean, r.mean_drift);
    eig = std::max(eig, r.eigen_drift);
  }
  o.check(l2 < 1e-8, fmt("L2 drift = %.3e (< 1e-8)", l2));
  o.check(mean < 1e-8, fmt("mean drift = %.3e (< 1e-8)", mean));
  o.check(eig < 1e-6, fmt("eigenvalue drift = %.3e (< 1e-6)", eig));

  // Step halving against the exact traveling waves, coarse steps so truncation error dominates.
  double order = 1e300;
  for (const WaveParams& w : {defocusing_reference_wave(), focusing_reference_wave(),
                              make_modulated_wave(Sign::kFocusing, 3, 0.5)}) {
    const int Ks = 64;
    std::vector<double> errs;
    for (double dt : {4e-3, 2e-3, 1e-3}) {
      EvolveConfig cfg;
      cfg.sign = w.sign;
      cfg.dt = dt;
      cfg.T = 0.5;
      cfg.record_every = 1 << 30;
      const Trajectory tr = evolve(sample_wave(w, 0.0, Ks), cfg);
      errs.push_back((tr.states.back().vec() - sample_wave(w, tr.times.back(), Ks).vec()).norm());
    }
    for (std::size_t j = 1; j < errs.size(); ++j) {
      order = std::min(order, std::log2(errs[j - 1] / errs[j]));
    }
  }
  o.check(order >= 4.0, fmt("observed order under dt halving = %.3f (>= 4)", order));
  return o;
}

Outcome finite_gap_check(std::uint64_t seed) {
  Outcome o;
  const int K = 256;
  const int count = 10;
  struct Row {
    std::string error;
    double newton = 0.0, l2 = 0.0, drift = 0.0;
    bool agree = false;
  };
  std::vector<Row> rows(count);
  parallel_for(count, [&](std::size_t i) {
    Row& row = rows[i];
    try {
      std::mt19937_64 rng(seed + 104729 * i);
      const Sign sign = i % 2 == 0 ? Sign::kFocusing : Sign::kDefocusing;
      const PoleConfig pc = random_pole_config(rng, sign);
      const FiniteGapPotential fg = solve_residue_system(sign, pc.m0, pc.poles, pc.a);
      row.newton = fg.newton_residual;
      const HardyCoeffs u0 = potential_coeffs(fg, K);
      row.l2 = std::abs(predicted_l2(fg) - u0.norm2());
      const SpectralDecomposition d0 = spectral_decompose(build_lax(u0, sign));
      const Classification c0 = classify(d0, u0);
      EvolveConfig cfg;
      cfg.sign = sign;
      cfg.dt = 1e-4;
      cfg.T = 0.5;
      cfg.record_every = 5000;
      const Trajectory tr = evolve(u0, cfg);
      const HardyCoeffs& uT = tr.states.back();
      const SpectralDecomposition dT = spectral_decompose(build_lax(uT, sign));
      const Classification cT = classify(dT, uT);
      row.agree = c0.is_finite_gap && cT.is_finite_gap && c0.N_estimate == fg.N() &&
                  cT.N_estimate == fg.N();
      for (int n = 0; n < d0.reliable_count(); ++n) {
        row.drift = std::max(row.drift, std::abs(dT.eigenvalues[n] - d0.eigenvalues[n]));
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  double newton = 0.0, l2 = 0.0, drift = 0.0;
  int agree = 0;
  std::string errors;
  for (const Row& r : rows) {
    if (!r.error.empty()) errors += (errors.empty() ? "" : " | ") + r.error;
    newton = std::max(newton, r.newton);
    l2 = std::max(l2, r.l2);
    drift = std::max(drift, r.drift);
    agree += r.agree ? 1 : 0;
  }
  o.check(errors.empty(), errors.empty() ? "all solves ran" : "errors: " + errors);
  o.check(newton < 1e-12, fmt("max Newton residual = %.3e (< 1e-12)", newton));
  o.check(l2 < 1e-10, fmt("max norm identity error = %.3e (< 1e-10)", l2));
  o.check(agree == count, fmt("classify agreement %d/%d", agree, count));
  o.check(drift < 1e-6, fmt("max eigenvalue drift = %.3e (< 1e-6)", drift));
  return o;
}

Outcome inversion_check() {
  Outcome o;
  const int K = 256;
  const std::vector<cplx> pts = disc_points();
  double full = 0.0, reduced = 0.0;
  int missing = 0;
  for (const Fixture& f : all_fixtures(K)) {
    const SpectralDecomposition dec = spectral_decompose(build_lax(f.u, f.sign));
    const InversionData data = inversion_data(f.u, dec);
    if (data.reduced_dim != f.degree + 1) ++missing;
    for (const cplx z : pts) {
      const cplx exact = evaluate(f.u, z);
      const cplx vf = reconstruct(data, z, false);
      full = std::max(full, std::abs(vf - exact));
      if (data.reduced_dim > 0) reduced = std::max(reduced, std::abs(reconstruct(data, z, true) - vf));
    }
  }
  o.check(full < 1e-8, fmt("full-basis error = %.3e (< 1e-8)", full));
  o.check(missing == 0, fmt("fixtures without (N+1) reduction = %d (0)", missing));
  o.check(reduced < 1e-8, fmt("reduced vs full = %.3e (< 1e-8)", reduced));
  return o;
}

Outcome basis_check() {
  Outcome o;
  const int K = 128;
  const WaveParams w = defocusing_reference_wave();
  const HardyCoeffs u0 = sample_wave(w, 0.0, K);
  const SpectralDecomposition dec = spectral_decompose(build_lax(u0, w.sign));
  double res[2];
  const double steps[2] = {1e-4, 5e-5};
  for (int k = 0; k < 2; ++k) {
    EvolveConfig cfg;
    cfg.sign = w.sign;
    cfg.dt = steps[k];
    cfg.T = 0.2;
    res[k] = evolve_basis(evolve(u0, cfg), dec, {0, 1}).laws.max();
  }
  o.check(res[0] < 1e-4, fmt("phase-law residual at dt=1e-4 = %.3e (< 1e-4)", res[0]));
  const double gain = res[1] > 0.0 ? res[0] / res[1] : 0.0;
  o.check(gain >= 10.0, fmt("dt/2 residual = %.3e, improvement %.3g (>= 10)", res[1], gain));
  return o;
}

}  // namespace

const std::vector<std::pair<int, std::string>>& criterion_names() {
  static const std::vector<std::pair<int, std::string>> names = {
      {1, "appendix1"},  {2, "appendix2"},    {3, "gaplaws"},   {4, "identities"},
      {5, "residuals"},  {6, "speeds"},       {7, "isospectral"}, {8, "finitegap"},
      {9, "inversion"},  {10, "basis"}};
  return names;
}

int criterion_id(const std::string& key) {
  for (const auto& [id, name] : criterion_names()) {
    if (key == name || key == std::to_string(id)) return id;
  }
  throw Error(ErrorCode::kInvalidParameter, "unknown criterion '" + key + "'");
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  CriterionResult r;
  r.id = id;
  for (const auto& [i, name] : criterion_names()) {
    if (i == id) r.name = name;
  }
  if (r.name.empty()) throw Error(ErrorCode::kInvalidParameter, "criterion id out of range");
  // Runtime budgets in seconds, where one is stated.
  static const std::map<int, double> budget = {{1, 10.0}, {2, 10.0}, {3, 180.0}, {8, 300.0}};
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    switch (id) {
      case 1: o = appendix1_check(); break;
      case 2: o = appendix2_check(); break;
      case 3: o = gap_law_check(opts.seed); break;
      case 4: o = identity_check(); break;
      case 5: o = pde_check(); break;
      case 6: o = speed_check(); break;
      case 7: o = conservation_check(); break;
      case 8: o = finite_gap_check(opts.seed); break;
      case 9: o = inversion_check(); break;
      case 10: o = basis_check(); break;
    }
  } catch (const std::exception& e) {
    o.check(false, std::string("exception: ") + e.what());
  }
  r.seconds = seconds_since(t0);
  if (auto it = budget.find(id); it != budget.end()) {
    o.check(r.seconds < it->second, fmt("runtime %.2f s (< %.0f s)", r.seconds, it->second));
  }
  r.passed = o.passed;
  r.detail = o.detail;
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  std::vector<CriterionResult> out;
  for (const auto& [id, name] : criterion_names()) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) {
      continue;
    }
    out.push_back(run_criterion(id, opts));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  return fmt("%s [%2d] %-11s %7.2fs  ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
             r.seconds) +
         r.detail;
}

}  // namespace cslab
