#include "scramblab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace scramblab::io {

const char* kToolVersion = "scramblab 0.1.0";

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string curve_to_csv(const MICurve& curve) {
  std::ostringstream out;
  out << "l,mean_I,min_I,max_I,std_error,subsets,samples\n";
  for (const auto& r : curve.rows) {
    out << r.l << ',' << format_number(r.mean_i) << ',' << format_number(r.min_i) << ','
        << format_number(r.max_i) << ',' << format_number(r.std_error) << ',' << r.subsets << ','
        << r.samples << "\n";
  }
  return out.str();
}

MICurve curve_from_csv(const std::string& text) {
  MICurve curve;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IOError("empty curve csv");
  if (line.rfind("l,mean_I", 0) != 0) throw IOError("unexpected curve csv header: " + line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    MIRow row;
    std::istringstream ls(line);
    char comma;
    if (!(ls >> row.l >> comma >> row.mean_i >> comma >> row.min_i >> comma >> row.max_i >>
          comma >> row.std_error >> comma >> row.subsets >> comma >> row.samples)) {
      throw IOError("bad curve csv row: " + line);
    }
    curve.rows.push_back(row);
  }
  if (curve.rows.empty()) throw IOError("curve csv has no rows");
  curve.n_players = curve.rows.back().l;
  curve.samples = curve.rows.back().samples;
  return curve;
}

nlohmann::json curve_metadata(const MICurve& curve) {
  nlohmann::json meta;
  meta["n_players"] = curve.n_players;
  meta["s_mixed"] = curve.s_mixed;
  meta["ensemble"] = ensemble_name(curve.kind);
  meta["seed"] = curve.seed;
  meta["samples"] = curve.samples;
  meta["subset_cap"] = curve.subset_cap;
  meta["discarded"] = curve.discarded;
  meta["max_pair_residual"] = curve.max_pair_residual;
  meta["max_spectator_deviation"] = curve.max_spectator_deviation;
  return meta;
}

void curve_metadata_into(MICurve& curve, const nlohmann::json& meta) {
  curve.n_players = meta.value("n_players", curve.n_players);
  curve.s_mixed = meta.value("s_mixed", 0);
  curve.kind = ensemble_from_name(meta.value("ensemble", std::string("haar")));
  curve.seed = meta.value("seed", std::uint64_t(0));
  curve.samples = meta.value("samples", curve.samples);
  curve.subset_cap = meta.value("subset_cap", 0);
  curve.discarded = meta.value("discarded", 0);
  curve.max_pair_residual = meta.value("max_pair_residual", 0.0);
  curve.max_spectator_deviation = meta.value("max_spectator_deviation", 0.0);
}

std::string bounds_to_csv(const std::vector<analytic::BoundCurve>& curves) {
  std::ostringstream out;
  out << "s,l,pure_bound,pure_bound_clamped,mixed_bound,mixed_bound_clamped,maximally_mixed_mi\n";
  for (const auto& c : curves) {
    for (const auto& r : c.rows) {
      out << format_number(c.s) << ',' << r.l << ',' << format_number(r.pure) << ','
          << format_number(r.pure_clamped) << ',' << format_number(r.mixed) << ','
          << format_number(r.mixed_clamped) << ',' << format_number(r.max_mixed) << "\n";
    }
  }
  return out.str();
}

nlohmann::json ramp_to_json(const RampParams& params, double epsilon_searched) {
  nlohmann::json j;
  j["N"] = params.n_players;
  j["s"] = params.s;
  j["b"] = params.b;
  j["g"] = params.g;
  j["gap"] = params.gap;
  j["rampiness"] = params.rampiness;
  j["gamma"] = params.gamma;
  j["delta"] = params.delta;
  j["mode"] = classify_mode_name(params.mode);
  j["epsilon_search"] = epsilon_searched;
  j["degenerate"] = params.degenerate;
  j["evaluated_subsets_min"] = params.evaluated_subsets_min;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot write " + path);
  out << content;
  if (!out) throw IOError("write failed for " + path);
}

nlohmann::json make_manifest(const std::string& subcommand, const nlohmann::json& config,
                             std::uint64_t seed, const std::vector<std::string>& artifacts,
                             long long duration_ms) {
  nlohmann::json m;
  m["subcommand"] = subcommand;
  m["config"] = config;
  m["seed"] = seed;
  m["artifacts"] = artifacts;
  m["version"] = kToolVersion;
  m["duration_ms"] = duration_ms;
  return m;
}

}  // namespace scramblab::io
