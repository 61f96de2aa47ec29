#pragma once

#include <string>

#include "cslab/evolve.hpp"
#include "cslab/finitegap.hpp"
#include "cslab/hardy.hpp"
#include "cslab/lax.hpp"
#include "cslab/waves.hpp"
#include "json.hpp"

namespace cslab::io {

using nlohmann::json;

// 17 significant digits; non-finite values become null in JSON.
std::string format_double(double v);
// JSON text with every float printed by format_double.
std::string dump_json(const json& j, int indent = 2);

// One RFC 4180 record terminated by CRLF.
std::string csv_row(const std::vector<std::string>& fields);

json to_json(const HardyCoeffs& h);
HardyCoeffs hardy_from_json(const json& j);

json to_json(const SpectralDecomposition& dec, const GapProfile& gaps);
std::string spectral_csv(const SpectralDecomposition& dec, const GapProfile& gaps);
json to_json(const IdentityReport& r);

json to_json(const WaveParams& w);
WaveParams wave_from_json(const json& j);

json to_json(const FiniteGapPotential& fg);
FiniteGapPotential finitegap_from_json(const json& j);

std::string trajectory_csv(const Trajectory& traj);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);

}  // namespace cslab::io
