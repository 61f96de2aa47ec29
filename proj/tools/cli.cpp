#include "cli.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cslab/acceptance.hpp"
#include "cslab/error.hpp"
#include "cslab/evolve.hpp"
#include "cslab/finitegap.hpp"
#include "cslab/fixtures.hpp"
#include "cslab/io.hpp"
#include "cslab/lax.hpp"
#include "cslab/waves.hpp"

namespace cslab::cli {

using nlohmann::json;

namespace {

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::kIoError:
    case ErrorCode::kInvalidParameter:
    case ErrorCode::kDimensionMismatch:
      return kUsage;
    default:
      return kConstraint;
  }
}

cplx parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidParameter, "expected re,im but got '" + s + "'");
  }
}

Pole parse_pole(const std::string& s) {
  const auto colon = s.find(':');
  Pole p;
  p.p = parse_complex(s.substr(0, colon));
  if (colon != std::string::npos) {
    try {
      p.mult = std::stoi(s.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidParameter, "bad multiplicity in '" + s + "'");
    }
  }
  if (p.mult < 1) throw Error(ErrorCode::kInvalidParameter, "multiplicity must be >= 1");
  return p;
}

// Writes name into the output directory, or to out when no directory was given and primary.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& out) : dir_(cfg.output), out_(out) {
    if (!dir_.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(dir_, ec);
      if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir_ + ": " + ec.message());
    }
  }
  void emit(const std::string& name, const std::string& content, bool primary) {
    if (!dir_.empty()) {
      io::write_text((std::filesystem::path(dir_) / name).string(), content);
    } else if (primary) {
      out_ << content;
    }
  }

 private:
  std::string dir_;
  std::ostream& out_;
};

Fixture load_potential(const RunConfig& cfg) {
  if (!cfg.fixture.empty() && !cfg.input.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "--fixture and --input are exclusive");
  }
  Fixture f;
  if (!cfg.fixture.empty()) {
    f = parse_fixture(cfg.fixture, cfg.K, cfg.p);
  } else if (!cfg.input.empty()) {
    f.name = cfg.input;
    f.u = io::hardy_from_json(json::parse(io::read_text(cfg.input)));
    f.sign = Sign::kFocusing;
  } else {
    throw Error(ErrorCode::kInvalidParameter, "need --fixture or --input");
  }
  if (cfg.sign) f.sign = parse_sign(*cfg.sign);
  if (f.u.K() != cfg.K) f.u = f.u.resized(cfg.K);
  return f;
}

int run_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Fixture f = load_potential(cfg);
  const SpectralDecomposition dec = spectral_decompose(build_lax(f.u, f.sign));
  const GapProfile gaps = gap_profile(dec, f.u, 1e-8);
  const IdentityReport ids = check_spectral_identities(f.u, dec);
  Sink sink(cfg, out);
  sink.emit("spectrum.csv", io::spectral_csv(dec, gaps), true);
  sink.emit("spectrum.json", io::dump_json(io::to_json(dec, gaps)), false);
  sink.emit("identities.json", io::dump_json(io::to_json(ids)), false);
  json cls;
  try {
    const Classification c = classify(dec, f.u, cfg.tol);
    cls = {{"is_finite_gap", c.is_finite_gap}, {"m", c.m}, {"N_estimate", c.N_estimate},
           {"ladder_eigenvalue", c.ladder_eigenvalue}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInconclusive) throw;
    cls = {{"inconclusive", true}};
  }
  sink.emit("classification.json", io::dump_json(cls), false);
  err << "spectrum: K=" << dec.K() << " reliable=" << dec.reliable_count()
      << " identity residual=" << io::format_double(ids.max()) << "\n";
  return kOk;
}

int run_wave(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Sign sign = parse_sign(cfg.sign.value_or("focusing"));
  const WaveFamily fam = parse_family(cfg.family);
  const cplx p(cfg.p.value_or(0.5), cfg.p_im);
  WaveParams w;
  switch (fam) {
    case WaveFamily::kPlaneWave:
      w = make_plane_wave(sign, cfg.N, cfg.C, cfg.theta);
      break;
    case WaveFamily::kPoleFamily:
      w = cfg.alpha ? make_pole_wave(sign, cfg.N, p, *cfg.alpha, cfg.beta, cfg.theta)
                    : make_pole_wave(sign, cfg.N, p, cfg.beta, cfg.theta);
      break;
    case WaveFamily::kModulatedFamily:
      w = make_modulated_wave(sign, cfg.m, p, cfg.theta, cfg.beta >= 0.0 ? 1 : -1);
      break;
    case WaveFamily::kStationary:
      w = make_stationary_wave(sign, cfg.N, p, cfg.theta);
      break;
  }
  const double residual = pde_residual(w, 0.0, cfg.K);
  json rec = io::to_json(w);
  rec["l2"] = wave_l2(w);
  rec["pde_residual"] = residual;
  Sink sink(cfg, out);
  sink.emit("wave.json", io::dump_json(rec), true);
  sink.emit("coeffs.json", io::dump_json(io::to_json(sample_wave(w, 0.0, cfg.K))), false);
  err << "wave: c=" << io::format_double(w.c) << " pde residual=" << io::format_double(residual)
      << "\n";
  return kOk;
}

int run_finitegap(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Sign sign = parse_sign(cfg.sign.value_or("focusing"));
  std::vector<Pole> poles;
  for (const std::string& s : cfg.poles) poles.push_back(parse_pole(s));
  std::optional<cplx> a;
  if (cfg.a) a = parse_complex(*cfg.a);
  const FiniteGapPotential fg = solve_residue_system(sign, cfg.m0, poles, a);
  const HardyCoeffs u = potential_coeffs(fg, cfg.K);
  Sink sink(cfg, out);
  sink.emit("finitegap.json", io::dump_json(io::to_json(fg)), true);
  sink.emit("coeffs.json", io::dump_json(io::to_json(u)), false);
  err << "finitegap: N=" << fg.N() << " newton residual=" << io::format_double(fg.newton_residual)
      << " iterations=" << fg.iterations << "\n";
  return kOk;
}

int run_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Fixture f = load_potential(cfg);
  EvolveConfig ec;
  ec.sign = f.sign;
  ec.T = cfg.T;
  ec.dt = cfg.dt;
  ec.record_every = cfg.record_every;
  const Trajectory traj = evolve(f.u, ec);
  const ConservationReport cons = conservation_report(traj);
  json summary{{"fixture", f.name},
               {"sign", to_string(f.sign)},
               {"K", f.u.K()},
               {"dt", traj.dt},
               {"T", traj.times.back()},
               {"l2_drift", cons.l2_drift},
               {"mean_drift", cons.mean_drift},
               {"eigen_drift", cons.eigen_drift},
               {"max_tail", cons.max_tail}};
  json warnings = json::array();
  for (const Warning& w : traj.warnings) warnings.push_back(std::string(to_string(w.code)));
  summary["warnings"] = warnings;
  try {
    const SpeedFit fit = measure_speed(traj, f.u);
    summary["speed"] = fit.c;
    err << "evolve: measured speed=" << io::format_double(fit.c) << "\n";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotATravelingWave) throw;
    summary["speed"] = nullptr;
  }
  Sink sink(cfg, out);
  sink.emit("trajectory.csv", io::trajectory_csv(traj), true);
  sink.emit("summary.json", io::dump_json(summary), false);
  for (const Warning& w : traj.warnings) err << "warning: " << to_string(w.code) << ": " << w.message << "\n";
  return kOk;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  AcceptanceOptions opts;
  opts.seed = cfg.seed;
  for (const std::string& key : cfg.only) {
    std::stringstream ss(key);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) opts.only.push_back(criterion_id(item));
    }
  }
  bool ok = true;
  json rows = json::array();
  for (const auto& [id, name] : criterion_names()) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) {
      continue;
    }
    const CriterionResult r = run_criterion(id, opts);
    out << format_result(r) << "\n" << std::flush;
    ok = ok && r.passed;
    rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  if (!cfg.output.empty()) {
    std::ostringstream sink_out;
    Sink sink(cfg, sink_out);
    sink.emit("verify.json", io::dump_json(json{{"seed", cfg.seed}, {"results", rows}}),
              false);
  }
  return ok ? kOk : kVerification;
}

}  // namespace

json to_json(const RunConfig& c) {
  json j{{"command", c.command}, {"fixture", c.fixture}, {"input", c.input},
         {"output", c.output},   {"p_im", c.p_im},       {"K", c.K},
         {"family", c.family},   {"N", c.N},             {"m", c.m},
         {"beta", c.beta},       {"C", c.C},             {"theta", c.theta},
         {"m0", c.m0},           {"poles", c.poles},     {"T", c.T},
         {"dt", c.dt},           {"record_every", c.record_every},
         {"seed", c.seed},       {"only", c.only},       {"tol", c.tol}};
  j["sign"] = c.sign ? json(*c.sign) : json(nullptr);
  j["p"] = c.p ? json(*c.p) : json(nullptr);
  j["alpha"] = c.alpha ? json(*c.alpha) : json(nullptr);
  j["a"] = c.a ? json(*c.a) : json(nullptr);
  return j;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidParameter, "config must be a JSON object");
  RunConfig c;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key) && !j.at(key).is_null()) j.at(key).get_to(field);
  };
  auto get_opt = [&](const char* key, auto& field) {
    if (j.contains(key) && !j.at(key).is_null()) {
      field = j.at(key).get<typename std::decay_t<decltype(field)>::value_type>();
    }
  };
  try {
    get("command", c.command);
    get("fixture", c.fixture);
    get("input", c.input);
    get("output", c.output);
    get_opt("sign", c.sign);
    get_opt("p", c.p);
    get("p_im", c.p_im);
    get("K", c.K);
    get("family", c.family);
    get("N", c.N);
    get("m", c.m);
    get_opt("alpha", c.alpha);
    get("beta", c.beta);
    get("C", c.C);
    get("theta", c.theta);
    get("m0", c.m0);
    get("poles", c.poles);
    get_opt("a", c.a);
    get("T", c.T);
    get("dt", c.dt);
    get("record_every", c.record_every);
    get("seed", c.seed);
    get("only", c.only);
    get("tol", c.tol);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidParameter, std::string("config: ") + e.what());
  }
  return c;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lax spectral toolkit for a derivative NLS flow on the circle"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // Flags land in a scratch config; only those actually given override a --config file.
  RunConfig flags;
  std::string config_path;
  std::string save_config;
  std::vector<std::function<void(RunConfig&)>> overrides;
  auto bind = [&](CLI::App* sub, const std::string& name, auto RunConfig::*field,
                  const std::string& help) {
    CLI::Option* opt = sub->add_option(name, flags.*field, help);
    overrides.push_back([opt, field, &flags](RunConfig& c) {
      if (opt->count() > 0) c.*field = flags.*field;
    });
    return opt;
  };

  const std::vector<std::string> commands = {"spectrum", "wave", "finitegap", "evolve", "verify"};
  std::map<std::string, CLI::App*> subs;
  subs["spectrum"] = app.add_subcommand("spectrum", "Lax eigenvalues, gaps and identity residuals");
  subs["wave"] = app.add_subcommand("wave", "Build and check an explicit traveling wave");
  subs["finitegap"] = app.add_subcommand("finitegap", "Solve the residue system for given poles");
  subs["evolve"] = app.add_subcommand("evolve", "Integrate the flow and record diagnostics");
  subs["verify"] = app.add_subcommand("verify", "Run the acceptance suite");

  for (const auto& [name, sub] : subs) {
    sub->add_option("--config", config_path, "JSON run config; explicit flags take precedence");
    sub->add_option("--save-config", save_config, "Write the effective config as JSON");
    bind(sub, "--output", &RunConfig::output, "Output directory (default: stdout)");
    bind(sub, "--tol", &RunConfig::tol, "Classification tolerance");
  }
  for (const char* name : {"spectrum", "evolve"}) {
    CLI::App* s = subs[name];
    bind(s, "--fixture", &RunConfig::fixture,
         "appendix1 | appendix2 | plane:N:C | wave:sign:N:p:beta | stationary:N:p | modulated:m:p");
    bind(s, "--input", &RunConfig::input, "HardyCoeffs JSON file");
    bind(s, "--p", &RunConfig::p, "Pole of the appendix fixtures");
  }
  for (const char* name : {"spectrum", "wave", "finitegap", "evolve"}) {
    bind(subs[name], "--K", &RunConfig::K, "Number of Hardy modes")->check(CLI::Range(2, 1 << 16));
    bind(subs[name], "--sign", &RunConfig::sign, "focusing | defocusing");
  }
  CLI::App* w = subs["wave"];
  bind(w, "--family", &RunConfig::family, "pole | plane | modulated | stationary");
  bind(w, "--N", &RunConfig::N, "Pole degree or plane-wave frequency");
  bind(w, "--m", &RunConfig::m, "Modulated-family exponent");
  bind(w, "--p", &RunConfig::p, "Pole parameter (real part)");
  bind(w, "--p-im", &RunConfig::p_im, "Pole parameter (imaginary part)");
  bind(w, "--alpha", &RunConfig::alpha, "Check this alpha instead of solving for it");
  bind(w, "--beta", &RunConfig::beta, "Amplitude parameter");
  bind(w, "--C", &RunConfig::C, "Plane-wave amplitude");
  bind(w, "--theta", &RunConfig::theta, "Phase");
  CLI::App* fgc = subs["finitegap"];
  bind(fgc, "--m0", &RunConfig::m0, "Power of z in front");
  bind(fgc, "--pole", &RunConfig::poles, "re,im:mult (repeatable)");
  bind(fgc, "--a", &RunConfig::a, "Pinned constant term re,im");
  CLI::App* ev = subs["evolve"];
  bind(ev, "--T", &RunConfig::T, "Final time");
  bind(ev, "--dt", &RunConfig::dt, "Time step");
  bind(ev, "--record-every", &RunConfig::record_every, "Steps between snapshots");
  CLI::App* ver = subs["verify"];
  bind(ver, "--seed", &RunConfig::seed, "Seed for the random sweeps");
  bind(ver, "--only", &RunConfig::only, "Criterion names or ids (repeatable, comma separated)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      json j;
      try {
        j = json::parse(io::read_text(config_path));
      } catch (const json::exception& e) {
        throw Error(ErrorCode::kInvalidParameter, std::string("config: ") + e.what());
      }
      cfg = config_from_json(j);
    }
    for (auto& apply : overrides) apply(cfg);
    for (const std::string& name : commands) {
      if (subs[name]->parsed()) cfg.command = name;
    }
    if (!save_config.empty()) io::write_text(save_config, io::dump_json(to_json(cfg)));
    if (cfg.command == "spectrum") return run_spectrum(cfg, out, err);
    if (cfg.command == "wave") return run_wave(cfg, out, err);
    if (cfg.command == "finitegap") return run_finitegap(cfg, out, err);
    if (cfg.command == "evolve") return run_evolve(cfg, out, err);
    return run_verify(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what();
    if (e.residual()) err << " (residual " << io::format_double(*e.residual()) << ")";
    err << "\n";
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace cslab::cli
