#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../spingyro.hpp"

namespace spingyro::cli {

using nlohmann::json;

struct PhiGrid {
  double min = 0.0, max = 0.0;
  int points = 2;
};

// Merged view of defaults, --config JSON, and explicit flags (in that order).
struct RunConfig {
  std::optional<int> n;
  HalfInt s = HalfInt::from_twice(1);
  HalfInt i = HalfInt::from_twice(1);
  Mode mode = Mode::FullTensor;
  std::optional<HalfInt> s_total;
  std::optional<HalfInt> m_i;  // defaults to -I (impurity fully down)
  std::optional<std::string> initial_file;
  std::optional<std::string> pulse_spec;  // inline JSON or a path to a JSON file
  std::optional<double> omega0_tau;       // shorthand for a gaussian with tau = 1
  std::optional<double> t_min, t_max;
  int steps = 201;
  std::optional<PhiGrid> phi_grid;
  bool oracle = false;
  std::optional<std::string> out_format;  // csv | json; default depends on command
  double sweep_from = 0.0, sweep_to = 5.0;
  int sweep_points = 400;
  std::optional<HalfInt> j;  // coefficients command
  int n_max = 60;
  bool corrupt = false;  // verify negative-control hook
  Eigen::Index dim_cap = 4096;
};

inline Mode parse_mode(const std::string& text) {
  if (text == "full") return Mode::FullTensor;
  if (text == "collective") return Mode::Collective;
  throw config_error("mode must be 'full' or 'collective', got '" + text + "'");
}

// "MIN:MAX:POINTS"
inline PhiGrid parse_phi_grid(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw config_error("phi grid must be MIN:MAX:POINTS, got '" + text + "'");
  PhiGrid g;
  try {
    g.min = std::stod(text.substr(0, c1));
    g.max = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    g.points = std::stoi(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw config_error("phi grid must be MIN:MAX:POINTS, got '" + text + "'");
  }
  if (g.points < 2) throw config_error("phi grid needs at least 2 points");
  if (!(g.max >= g.min)) throw config_error("phi grid needs max >= min");
  return g;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline HalfInt half_from_json(const json& v) {
  if (v.is_string()) return HalfInt::parse(v.get<std::string>());
  if (v.is_number()) return HalfInt::from_double(v.get<double>());
  throw config_error("expected a half-integer (string or number)");
}

// Strict merge: unknown keys are configuration errors, never silently ignored.
inline void apply_json(RunConfig& cfg, const json& doc) {
  if (!doc.is_object()) throw config_error("config JSON must be an object");
  static const std::set<std::string> known{
      "n",       "s",     "i",        "mode",   "s_total", "m_i",  "initial_file",
      "pulse",   "omega0_tau", "t_min", "t_max", "steps",  "phi_grid", "oracle",
      "out",     "from",  "to",       "points", "j",       "n_max", "corrupt", "dim_cap"};
  for (const auto& item : doc.items())
    if (!known.count(item.key())) throw config_error("unknown config key: " + item.key());
  try {
    if (doc.contains("n")) cfg.n = doc.at("n").get<int>();
    if (doc.contains("s")) cfg.s = half_from_json(doc.at("s"));
    if (doc.contains("i")) cfg.i = half_from_json(doc.at("i"));
    if (doc.contains("mode")) cfg.mode = parse_mode(doc.at("mode").get<std::string>());
    if (doc.contains("s_total")) cfg.s_total = half_from_json(doc.at("s_total"));
    if (doc.contains("m_i")) cfg.m_i = half_from_json(doc.at("m_i"));
    if (doc.contains("initial_file")) cfg.initial_file = doc.at("initial_file").get<std::string>();
    if (doc.contains("pulse")) {
      const json& p = doc.at("pulse");
      cfg.pulse_spec = p.is_string() ? p.get<std::string>() : p.dump();
    }
    if (doc.contains("omega0_tau")) cfg.omega0_tau = doc.at("omega0_tau").get<double>();
    if (doc.contains("t_min")) cfg.t_min = doc.at("t_min").get<double>();
    if (doc.contains("t_max")) cfg.t_max = doc.at("t_max").get<double>();
    if (doc.contains("steps")) cfg.steps = doc.at("steps").get<int>();
    if (doc.contains("phi_grid")) {
      const json& g = doc.at("phi_grid");
      if (g.is_string()) {
        cfg.phi_grid = parse_phi_grid(g.get<std::string>());
      } else {
        PhiGrid pg{g.at("min").get<double>(), g.at("max").get<double>(), g.at("points").get<int>()};
        if (pg.points < 2) throw config_error("phi grid needs at least 2 points");
        if (!(pg.max >= pg.min)) throw config_error("phi grid needs max >= min");
        cfg.phi_grid = pg;
      }
    }
    if (doc.contains("oracle")) cfg.oracle = doc.at("oracle").get<bool>();
    if (doc.contains("out")) cfg.out_format = doc.at("out").get<std::string>();
    if (doc.contains("from")) cfg.sweep_from = doc.at("from").get<double>();
    if (doc.contains("to")) cfg.sweep_to = doc.at("to").get<double>();
    if (doc.contains("points")) cfg.sweep_points = doc.at("points").get<int>();
    if (doc.contains("j")) cfg.j = half_from_json(doc.at("j"));
    if (doc.contains("n_max")) cfg.n_max = doc.at("n_max").get<int>();
    if (doc.contains("corrupt")) cfg.corrupt = doc.at("corrupt").get<bool>();
    if (doc.contains("dim_cap")) cfg.dim_cap = doc.at("dim_cap").get<Eigen::Index>();
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(std::string("bad config value: ") + e.what());
  }
}

inline void apply_config_file(RunConfig& cfg, const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw config_error(std::string("cannot parse config JSON: ") + e.what());
  }
  apply_json(cfg, doc);
}

inline Pulse pulse_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("type"))
    throw config_error("pulse JSON needs a 'type' field");
  const std::string type = doc.at("type").get<std::string>();
  const auto require_keys = [&](std::set<std::string> allowed) {
    allowed.insert("type");
    for (const auto& item : doc.items())
      if (!allowed.count(item.key()))
        throw config_error("unknown pulse key for type '" + type + "': " + item.key());
  };
  try {
    if (type == "gaussian") {
      if (doc.contains("omega0_tau")) {
        require_keys({"omega0_tau"});
        return GaussianPulse(doc.at("omega0_tau").get<double>(), 1.0);
      }
      require_keys({"omega0", "tau"});
      return GaussianPulse(doc.at("omega0").get<double>(), doc.at("tau").get<double>());
    }
    if (type == "rectangular") {
      require_keys({"omega0", "t_on", "t_off"});
      return RectangularPulse(doc.at("omega0").get<double>(), doc.at("t_on").get<double>(),
                              doc.at("t_off").get<double>());
    }
    if (type == "tabulated") {
      require_keys({"t", "omega"});
      return TabulatedPulse(doc.at("t").get<std::vector<double>>(),
                            doc.at("omega").get<std::vector<double>>());
    }
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(std::string("bad pulse value: ") + e.what());
  }
  throw config_error("pulse type must be gaussian, rectangular, or tabulated, got '" + type + "'");
}

// --pulse accepts inline JSON (starts with '{') or a path to a JSON file.
inline Pulse build_pulse(const RunConfig& cfg) {
  if (cfg.pulse_spec && cfg.omega0_tau)
    throw config_error("give either --pulse or --omega0-tau, not both");
  if (cfg.omega0_tau) return GaussianPulse(*cfg.omega0_tau, 1.0);
  if (!cfg.pulse_spec) throw config_error("a pulse is required (--pulse or --omega0-tau)");
  const std::string& spec = *cfg.pulse_spec;
  const auto first = spec.find_first_not_of(" \t\r\n");
  const std::string text =
      (first != std::string::npos && spec[first] == '{') ? spec : read_text_file(spec);
  try {
    return pulse_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw config_error(std::string("cannot parse pulse JSON: ") + e.what());
  }
}

inline CompositeSystem build_system(const RunConfig& cfg) {
  if (!cfg.n) throw config_error("--n (number of identical spins) is required");
  return build_composite(*cfg.n, cfg.s, cfg.i, cfg.mode, cfg.s_total, cfg.dim_cap);
}

// Explicit vector file: one "re im" pair per line, blank lines and '#' comments allowed.
inline InitialState build_initial(const RunConfig& cfg, const CompositeSystem& sys) {
  if (!cfg.initial_file) return ferromagnetic_state(sys, cfg.m_i.value_or(-cfg.i));
  if (cfg.m_i) throw config_error("give either --m-i or --initial-file, not both");
  std::istringstream in(read_text_file(*cfg.initial_file));
  std::vector<Complex> entries;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double re, im;
    if (ls >> re) {
      if (!(ls >> im)) throw config_error("initial vector lines must be 're im' pairs");
      entries.emplace_back(re, im);
    }
  }
  StateVector v(static_cast<Eigen::Index>(entries.size()));
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = entries[static_cast<std::size_t>(k)];
  return make_initial(sys, v);
}

}  // namespace spingyro::cli
