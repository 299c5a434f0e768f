#pragma once

#include <string>
#include <vector>

#include "scramblab/analytic.hpp"
#include "scramblab/ramp.hpp"
#include "scramblab/scrambling.hpp"

#include <json.hpp>

namespace scramblab::io {

struct IOError : std::runtime_error {
  explicit IOError(const std::string& msg) : std::runtime_error(msg) {}
};

// 12-significant-digit decimal formatting shared by every CSV and JSON
// number so reruns are byte-identical.
std::string format_number(double v);

std::string curve_to_csv(const MICurve& curve);
MICurve curve_from_csv(const std::string& text);

nlohmann::json curve_metadata(const MICurve& curve);
void curve_metadata_into(MICurve& curve, const nlohmann::json& meta);

std::string bounds_to_csv(const std::vector<analytic::BoundCurve>& curves);

nlohmann::json ramp_to_json(const RampParams& params, double epsilon_searched);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Run manifest: resolved configuration, seed, artifact list, tool version
// and wall-clock duration; written last so its presence marks a finished
// run.
nlohmann::json make_manifest(const std::string& subcommand, const nlohmann::json& config,
                             std::uint64_t seed, const std::vector<std::string>& artifacts,
                             long long duration_ms);

extern const char* kToolVersion;

}  // namespace scramblab::io
