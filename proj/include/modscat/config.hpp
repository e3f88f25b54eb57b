#pragma once

#include "modscat/nonlinearity.hpp"
#include "modscat/scattering.hpp"
#include "modscat/solver.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

// Experiment configuration, readable from a small TOML-like text format
// (tables, key = value, strings, numbers, booleans, inline arrays, comments)
// or from JSON. serialize_config() emits the canonical text form;
// parse(serialize(c)) == c and serialize(parse(s)) is a fixed point.

namespace modscat {

struct ScheduleSpec {
  std::string kind = "dyadic_fine"; // dyadic_fine | uniform | explicit
  int per_octave = 16;              // dyadic_fine: nodes per octave past t = 2
  int prefix_nodes = 64;            // dyadic_fine: uniform nodes on [1, 2]
  int warmup_nodes = 16;            // dyadic_fine: uniform nodes on [0, 1]
  double spacing = 0.5;             // uniform
  std::vector<double> times;        // explicit
  bool operator==(const ScheduleSpec&) const = default;
};

struct InitialDataSpec {
  std::string name = "gaussian";
  std::uint64_t seed = 1;
  std::map<std::string, double> params; // amplitude, width, center, momentum,
                                        // correlation_length, envelope_width
  bool operator==(const InitialDataSpec&) const = default;

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

struct ExperimentConfig {
  int dim = 1;
  int points = 8192;
  double half_width = 256.0;

  Nonlinearity nonlinearity{Nonlinearity::Kind::power, 1};
  Frame frame = Frame::direct;

  InitialDataSpec initial_data;

  double dt = 2.5e-3;
  double t_end = 64.0; // tau_end in the pseudoconformal frame
  std::string output_dir = "out/run";
  bool save_snapshots = false;

  ScheduleSpec schedule;
  std::vector<std::string> observers = {"conservation", "scattering", "cpce",
                                        "decay"};

  PhaseSign phase_sign = PhaseSign::plus;
  double phase_lower_limit = 1.0; // fixed by the implemented convention
  double besov_s_index = 0;       // 0 selects the default -dim/2

  MonitorOptions monitor;

  void validate() const;
  bool operator==(const ExperimentConfig&) const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

/// JSON encoding of the same tables (accepted as an alternative input).
std::string config_json(const ExperimentConfig& cfg);
ExperimentConfig parse_config_json_text(const std::string& text);

/// FNV-1a hash of the canonical serialization, as a hex run id.
std::string config_run_id(const ExperimentConfig& cfg);

} // namespace modscat
