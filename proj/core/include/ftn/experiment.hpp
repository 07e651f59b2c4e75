#pragma once

#include <string>
#include <vector>

#include "ftn/sim.hpp"

namespace ftn {

struct Experiment {
  std::string name;     // optional label for summaries
  std::string out_csv;  // output path; empty = stdout
  SimConfig config;
};

// "start:step:stop" (inclusive, step > 0) or a single value.
std::vector<double> parse_ebn0_range(const std::string& text);

// Experiment file layout:
//   { "defaults": { <config keys> }, "experiments": [ { ... }, ... ] }
// Each experiment starts from the defaults and overrides per key. A bare
// top-level config object (no "experiments") is accepted as one experiment.
// Unknown keys anywhere are an error. "ebn0" takes an array of dB values or
// a "start:step:stop" string.
std::vector<Experiment> parse_experiment_json(const std::string& text);
std::vector<Experiment> load_experiment_file(const std::string& path);

// Inverse of the parser: parse(serialize(e)) reproduces e exactly.
std::string experiment_to_json(const Experiment& e);

}  // namespace ftn
