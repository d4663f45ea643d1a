#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "specdim/space.hpp"

namespace specdim {

/// Parameterized description of a catalogue space. Parsed from JSON config
/// files ({"kind": ..., "params": {...}, "children": [...]}) or from inline
/// tags like "lattice:d=2,metric=graph".
struct SpaceSpec {
  std::string kind;
  std::map<std::string, double> params;
  std::map<std::string, std::string> sparams;
  std::vector<SpaceSpec> children;
  std::vector<std::tuple<int, int, double>> edges;  // kind == "graph"
  std::vector<double> vertex_weights;               // kind == "graph", optional

  std::string canonical() const;  // stable serialization, feeds the hash
};

/// FNV-1a hash of the canonical serialization; keys cache files and reports.
std::uint64_t spec_hash(const SpaceSpec& spec);

SpaceSpec parse_space_tag(const std::string& tag);
SpaceSpec parse_space_json(const std::string& text);

/// Realize a spec as an immutable space. Throws std::invalid_argument naming
/// the offending field on bad parameters.
MetricMeasureSpace build_space(const SpaceSpec& spec);

/// Warp function of the liminf/limsup separating end: sqrt/linear/sqrt
/// branches glued at a_1, a_2, ... with a_n - a_{n-1} = 2^(2^n).
double oscillating_f(double x);

/// Breakpoints a_0..a_9 of oscillating_f (a_9 is the evaluation horizon).
const std::vector<double>& oscillating_breakpoints();

/// Volume V_delta(r) of the r-ball in the constant-curvature model of
/// dimension n, normalized so V_0 matches the Euclidean n-ball.
double model_ball_volume(double curvature, int n, double r);

}  // namespace specdim
