#include "cslab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cslab::io {

namespace {

json pair(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorCode::kInvalidParameter, "expected [re, im] pair");
}

void dump_into(const json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::number_float:
      out += std::isfinite(j.get<double>()) ? format_double(j.get<double>()) : "null";
      return;
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      bool small_struct = true;
      for (const auto& e : j) {
        if (e.is_object()) small_struct = false;
        if (e.is_array())
          for (const auto& x : e) small_struct = small_struct && !x.is_structured();
      }
      if (flat || (small_struct && depth > 0)) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_into(j[i], 0, 0, out);
        }
        out += "]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad;
        dump_into(j[i], indent, depth + 1, out);
        if (i + 1 < j.size()) out += ",";
        out += nl;
      }
      out += close + "]";
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad + json(it.key()).dump() + (indent > 0 ? ": " : ":");
        dump_into(it.value(), indent, depth + 1, out);
        if (i + 1 < j.size()) out += ",";
        out += nl;
      }
      out += close + "}";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
  std::string q = "\"";
  for (char c : f) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";  // drops the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string dump_json(const json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  out += "\n";
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ",";
    row += csv_field(fields[i]);
  }
  return row + "\r\n";
}

json to_json(const HardyCoeffs& h) {
  json a = json::array();
  for (int n = 0; n < h.K(); ++n) a.push_back(pair(h[n]));
  return a;
}

HardyCoeffs hardy_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "HardyCoeffs must be a non-empty array");
  }
  std::vector<cplx> c;
  for (const auto& e : j) c.push_back(complex_from(e));
  return HardyCoeffs(c);
}

json to_json(const SpectralDecomposition& dec, const GapProfile& gaps) {
  json j;
  j["sign"] = to_string(dec.sign);
  j["K"] = dec.K();
  j["reliable"] = dec.reliable_count();
  json ev = json::array();
  for (int n = 0; n < dec.reliable_count(); ++n) ev.push_back(dec.eigenvalues[n]);
  j["eigenvalues"] = ev;
  j["gaps"] = gaps.gaps;
  j["collinearity_set"] = gaps.collinearity_set;
  j["degenerate_clusters"] = dec.degenerate_clusters;
  return j;
}

std::string spectral_csv(const SpectralDecomposition& dec, const GapProfile& gaps) {
  std::string out = csv_row({"n", "eigenvalue", "gap"});
  for (int n = 0; n < dec.reliable_count(); ++n) {
    out += csv_row({std::to_string(n), format_double(dec.eigenvalues[n]),
                    n == 0 ? std::string() : format_double(gaps.gap(n))});
  }
  return out;
}

json to_json(const IdentityReport& r) {
  return json{{"coefficient_identity", r.coefficient_identity},
              {"pair_identity", r.pair_identity},
              {"shift_commutator", r.shift_commutator},
              {"b_commutator", r.b_commutator},
              {"b_skew", r.b_skew},
              {"block", r.block}};
}

json to_json(const WaveParams& w) {
  json j;
  j["family"] = to_string(w.family);
  j["sign"] = to_string(w.sign);
  j["N"] = w.N;
  j["m"] = w.m;
  j["p"] = pair(w.p);
  j["alpha"] = w.alpha;
  j["beta"] = w.beta;
  j["theta"] = w.theta;
  j["C"] = pair(w.C);
  j["c"] = w.c;
  return j;
}

WaveParams wave_from_json(const json& j) {
  const WaveFamily fam = parse_family(j.at("family").get<std::string>());
  const Sign sign = parse_sign(j.value("sign", std::string("focusing")));
  const double theta = j.value("theta", 0.0);
  switch (fam) {
    case WaveFamily::kPlaneWave:
      return make_plane_wave(sign, j.at("N").get<int>(), complex_from(j.at("C")), theta);
    case WaveFamily::kModulatedFamily:
      return make_modulated_wave(sign, j.at("m").get<int>(), complex_from(j.at("p")), theta,
                                 j.value("beta", 1.0) >= 0.0 ? 1 : -1);
    case WaveFamily::kStationary:
      return make_stationary_wave(sign, j.at("N").get<int>(), complex_from(j.at("p")), theta);
    case WaveFamily::kPoleFamily:
      if (j.contains("alpha")) {
        return make_pole_wave(sign, j.at("N").get<int>(), complex_from(j.at("p")),
                              j.at("alpha").get<double>(), j.at("beta").get<double>(), theta);
      }
      return make_pole_wave(sign, j.at("N").get<int>(), complex_from(j.at("p")),
                            j.at("beta").get<double>(), theta);
  }
  throw Error(ErrorCode::kInvalidParameter, "unknown family");
}

json to_json(const FiniteGapPotential& fg) {
  json poles = json::array();
  for (const Pole& p : fg.poles) poles.push_back(json::array({p.p.real(), p.p.imag(), p.mult}));
  json res = json::array();
  for (const cplx& c : fg.residues) res.push_back(pair(c));
  return json{{"sign", to_string(fg.sign)}, {"m0", fg.m0},           {"poles", poles},
              {"a", pair(fg.a)},            {"residues", res},        {"predicted_eig", fg.predicted_eig},
              {"N", fg.N()},                {"newton_residual", fg.newton_residual}};
}

FiniteGapPotential finitegap_from_json(const json& j) {
  FiniteGapPotential fg;
  fg.sign = parse_sign(j.at("sign").get<std::string>());
  fg.m0 = j.at("m0").get<int>();
  for (const auto& p : j.at("poles")) {
    fg.poles.push_back({cplx(p.at(0).get<double>(), p.at(1).get<double>()), p.at(2).get<int>()});
  }
  fg.a = complex_from(j.at("a"));
  for (const auto& c : j.at("residues")) fg.residues.push_back(complex_from(c));
  if (fg.residues.size() != fg.poles.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one residue per pole required");
  }
  fg.predicted_eig = predicted_eigenvalue(fg.sign, fg.m0, fg.a, fg.residues);
  std::vector<cplx> F = residue_conditions(fg.sign, fg.poles, fg.a, fg.residues);
  for (const cplx& f : F) fg.newton_residual = std::max(fg.newton_residual, std::abs(f));
  return fg;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = csv_row({"t", "l2", "mean_re", "mean_im", "tail_energy"});
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const SnapshotDiagnostics& d = traj.diagnostics[i];
    out += csv_row({format_double(traj.times[i]), format_double(d.l2), format_double(d.mean.real()),
                    format_double(d.mean.imag()), format_double(d.tail)});
  }
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path + "'");
}

}  // namespace cslab::io
