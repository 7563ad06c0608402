#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "sizepop/discretization.hpp"
#include "sizepop/evolution.hpp"
#include "sizepop/model.hpp"

namespace sizepop {

struct ConstantInitial {
  double value = 1.0;
  bool operator==(const ConstantInitial&) const = default;
};

/// amplitude * exp(-(s - center)^2 / (2 width^2))
struct GaussianInitial {
  double center = 0.5;
  double width = 0.1;
  double amplitude = 1.0;
  bool operator==(const GaussianInitial&) const = default;
};

struct TableInitial {
  std::vector<Breakpoint> points;
  bool operator==(const TableInitial&) const = default;
};

using InitialSpec = std::variant<ConstantInitial, GaussianInitial, TableInitial>;

struct RunSection {
  Scheme scheme = Scheme::implicit_euler;
  double dt = 1e-3;
  double t_end = 1.0;
  int snapshot_stride = 1;
  std::uint64_t seed = 0;
  bool operator==(const RunSection&) const = default;
};

/// A parsed, validated run configuration. The model is admissible.
struct RunConfig {
  Model model;
  int n = 2;
  RunSection run;
  InitialSpec initial = ConstantInitial{};

  Grid grid() const { return build_grid(model.m(), n); }
  SimulationOptions simulation_options() const;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the JSON configuration text. "boundary": "conservative" resolves
/// through conservative_constants() here.
/// Throws ParseError (with line/column or key path) on malformed input or
/// unknown keys, AdmissibilityError on an inadmissible model.
RunConfig parse_config(const std::string& text);

/// Reads and parses a file. Throws IoError if it cannot be read.
RunConfig load_config(const std::string& path);

/// Canonical JSON text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Samples the initial condition at the grid nodes (boundary compartments
/// take the trace values at 0 and m).
PopulationState initial_state(const InitialSpec& spec, const Grid& grid);

}  // namespace sizepop
