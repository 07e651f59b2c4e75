#include "ftn/experiment.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ftn {
namespace {

using nlohmann::json;

std::vector<double> grid_from_json(const json& v) {
  if (v.is_string()) {
    return parse_ebn0_range(v.get<std::string>());
  }
  if (v.is_array()) {
    std::vector<double> grid;
    grid.reserve(v.size());
    for (const auto& x : v) {
      if (!x.is_number()) {
        throw std::invalid_argument("experiment: ebn0 array must hold numbers");
      }
      grid.push_back(x.get<double>());
    }
    return grid;
  }
  if (v.is_number()) {
    return {v.get<double>()};
  }
  throw std::invalid_argument("experiment: ebn0 must be a number, array, or range string");
}

Modulation modulation_from(const std::string& s) {
  if (s == "bpsk") return Modulation::bpsk;
  if (s == "qpsk") return Modulation::qpsk;
  throw std::invalid_argument("experiment: unknown modulation '" + s + "'");
}

DetectorKind detector_from(const std::string& s) {
  if (s == "sss") return DetectorKind::sss;
  if (s == "bcjr") return DetectorKind::bcjr;
  throw std::invalid_argument("experiment: unknown detector '" + s + "'");
}

Coding coding_from(const std::string& s) {
  if (s == "none") return Coding::none;
  if (s == "polar") return Coding::polar;
  throw std::invalid_argument("experiment: unknown coding '" + s + "'");
}

ChannelPath channel_from(const std::string& s) {
  if (s == "discrete") return ChannelPath::discrete;
  if (s == "waveform") return ChannelPath::waveform;
  throw std::invalid_argument("experiment: unknown channel '" + s + "'");
}

// Applies one object's keys onto an experiment. Shared by "defaults" and the
// per-experiment objects so both accept the same vocabulary.
void apply_keys(const json& obj, Experiment& e) {
  if (!obj.is_object()) {
    throw std::invalid_argument("experiment: expected a JSON object");
  }
  SimConfig& c = e.config;
  for (const auto& [key, v] : obj.items()) {
    if (key == "name") {
      e.name = v.get<std::string>();
    } else if (key == "out") {
      e.out_csv = v.get<std::string>();
    } else if (key == "tau") {
      c.tau = v.get<double>();
    } else if (key == "beta") {
      c.beta = v.get<double>();
    } else if (key == "mod") {
      c.modulation = modulation_from(v.get<std::string>());
    } else if (key == "detector") {
      c.detector = detector_from(v.get<std::string>());
    } else if (key == "coding") {
      c.coding = coding_from(v.get<std::string>());
    } else if (key == "channel") {
      c.channel = channel_from(v.get<std::string>());
    } else if (key == "N") {
      c.code_n = v.get<int>();
    } else if (key == "M") {
      c.code_m = v.get<int>();
    } else if (key == "epsilon") {
      c.epsilon = v.get<double>();
    } else if (key == "K") {
      c.go_back_k = v.get<int>();
    } else if (key == "numax") {
      c.nu_max = v.get<int>();
    } else if (key == "L_threshold") {
      c.tap_threshold = v.get<double>();
    } else if (key == "span_symbols") {
      c.span_symbols = v.get<int>();
    } else if (key == "oversampling") {
      c.oversampling = v.get<int>();
    } else if (key == "exact_tanh") {
      c.exact_tanh = v.get<bool>();
    } else if (key == "sss_empirical_llr") {
      c.sss_empirical_llr = v.get<bool>();
    } else if (key == "ebn0") {
      c.ebn0_grid_db = grid_from_json(v);
    } else if (key == "min_errors") {
      c.min_bit_errors = v.get<std::uint64_t>();
    } else if (key == "max_frames") {
      c.max_frames = v.get<std::uint64_t>();
    } else if (key == "seed") {
      c.master_seed = v.get<std::uint64_t>();
    } else if (key == "zero_error_abort") {
      c.zero_error_abort = v.get<int>();
    } else if (key == "threads") {
      c.threads = v.get<int>();
    } else {
      throw std::invalid_argument("experiment: unknown key '" + key + "'");
    }
  }
}

}  // namespace

std::vector<double> parse_ebn0_range(const std::string& text) {
  const auto bad = [&]() {
    return std::invalid_argument("expected Eb/N0 as start:step:stop or a single value, got '" +
                                 text + "'");
  };
  std::vector<double> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t colon = text.find(':', pos);
    const std::string piece = text.substr(pos, colon == std::string::npos
                                                   ? std::string::npos
                                                   : colon - pos);
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw bad();
    } catch (const std::invalid_argument&) {
      throw bad();
    } catch (const std::out_of_range&) {
      throw bad();
    }
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  if (parts.size() == 1) {
    return parts;
  }
  if (parts.size() != 3) {
    throw bad();
  }
  const double start = parts[0], step = parts[1], stop = parts[2];
  if (!(step > 0.0) || stop < start) {
    throw std::invalid_argument("Eb/N0 range needs step > 0 and stop >= start");
  }
  const int count = static_cast<int>((stop - start) / step + 1e-9) + 1;
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    grid[i] = start + i * step;
  }
  return grid;
}

std::vector<Experiment> parse_experiment_json(const std::string& text) {
  json root = json::parse(text);
  if (!root.is_object()) {
    throw std::invalid_argument("experiment: top level must be a JSON object");
  }

  Experiment defaults;
  json experiments = json::array();
  bool bare_config = false;
  for (const auto& [key, v] : root.items()) {
    if (key == "defaults") {
      apply_keys(v, defaults);
    } else if (key == "experiments") {
      if (!v.is_array()) {
        throw std::invalid_argument("experiment: 'experiments' must be an array");
      }
      experiments = v;
    } else {
      bare_config = true;
    }
  }
  if (bare_config) {
    if (!experiments.empty() || root.contains("defaults")) {
      throw std::invalid_argument(
          "experiment: mix of top-level config keys and defaults/experiments");
    }
    Experiment e;
    apply_keys(root, e);
    return {e};
  }
  std::vector<Experiment> out;
  for (const auto& obj : experiments) {
    Experiment e = defaults;
    apply_keys(obj, e);
    out.push_back(std::move(e));
  }
  if (out.empty()) {
    throw std::invalid_argument("experiment: no experiments defined");
  }
  return out;
}

std::vector<Experiment> load_experiment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("experiment: cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_json(ss.str());
}

std::string experiment_to_json(const Experiment& e) {
  const SimConfig& c = e.config;
  json obj;
  obj["name"] = e.name;
  obj["out"] = e.out_csv;
  obj["tau"] = c.tau;
  obj["beta"] = c.beta;
  obj["mod"] = c.modulation == Modulation::bpsk ? "bpsk" : "qpsk";
  obj["detector"] = c.detector == DetectorKind::sss ? "sss" : "bcjr";
  obj["coding"] = c.coding == Coding::polar ? "polar" : "none";
  obj["channel"] = c.channel == ChannelPath::discrete ? "discrete" : "waveform";
  obj["N"] = c.code_n;
  obj["M"] = c.code_m;
  obj["epsilon"] = c.epsilon;
  obj["K"] = c.go_back_k;
  obj["numax"] = c.nu_max;
  obj["L_threshold"] = c.tap_threshold;
  obj["span_symbols"] = c.span_symbols;
  obj["oversampling"] = c.oversampling;
  obj["exact_tanh"] = c.exact_tanh;
  obj["sss_empirical_llr"] = c.sss_empirical_llr;
  obj["ebn0"] = c.ebn0_grid_db;
  obj["min_errors"] = c.min_bit_errors;
  obj["max_frames"] = c.max_frames;
  obj["seed"] = c.master_seed;
  obj["zero_error_abort"] = c.zero_error_abort;
  obj["threads"] = c.threads;
  return json{{"experiments", json::array({obj})}}.dump(2);
}

}  // namespace ftn
