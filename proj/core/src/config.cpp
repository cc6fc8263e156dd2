#include "cpo/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "cpo/error.hpp"
#include "cpo/output.hpp"

namespace cpo {

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::spectrum:
      return "spectrum";
    case Scenario::soliton:
      return "soliton";
    case Scenario::deflect:
      return "deflect";
    case Scenario::sweep:
      return "sweep";
    case Scenario::wn_check:
      return "wn-check";
  }
  return "spectrum";
}

Scenario parse_scenario(std::string_view name) {
  for (auto s : {Scenario::spectrum, Scenario::soliton, Scenario::deflect, Scenario::sweep,
                 Scenario::wn_check}) {
    if (name == to_string(s)) return s;
  }
  throw ConfigError("unknown scenario '" + std::string(name) +
                    "' (expected spectrum, soliton, deflect, sweep or wn-check)");
}

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"atom", {"gamma1", "gamma2", "delta_c", "w_eq"}},
      {"drive", {"omega_c", "probe_amplitude", "delta_min", "delta_max", "points"}},
      {"medium", {"atom_line_density", "coupling_c", "coupling_p", "alpha_c", "alpha_p", "k_c", "k_p", "c"}},
      {"grid", {"n", "width_over_lc"}},
      {"beam", {"a", "b", "length"}},
      {"numerics", {"dt", "dz", "edge_tolerance", "z_end", "snapshot_every", "model"}},
      {"sweep", {"a_values", "delta_values"}},
      {"output", {"snapshots"}},
  };
  return s;
}

std::string fmt(double v) { return format_double(v); }

[[noreturn]] void guard_failed(const std::string& inequality, const std::string& detail = {}) {
  throw ConfigError(inequality + " violated" + (detail.empty() ? "" : " (" + detail + ")"));
}

// Reads one block, recording every resolved value and every default it fills in.
class Block {
 public:
  Block(const YAML::Node& root, std::string name, nlohmann::json& inputs, nlohmann::json& defaults)
      : name_(std::move(name)), inputs_(inputs), defaults_(defaults) {
    if (root[name_]) {
      node_ = root[name_];
      present_ = true;
    }
    if (present_ && !node_.IsMap() && !node_.IsNull()) throw ConfigError("block '" + name_ + "' must be a mapping");
  }

  bool present() const { return present_; }
  bool has(const std::string& key) const { return present_ && node_.IsMap() && node_[key]; }

  std::optional<double> maybe_number(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    try {
      return node_[key].as<double>();
    } catch (const YAML::Exception&) {
      throw ConfigError(path(key) + ": expected a number");
    }
  }

  double number(const std::string& key, double fallback) {
    if (auto v = maybe_number(key)) return set(key, *v);
    return set_default(key, fallback);
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    if (has(key)) {
      const double v = *maybe_number(key);
      if (!(v >= 0.0) || v != std::floor(v) || v > 1e12) throw ConfigError(path(key) + ": expected a non-negative integer");
      inputs_[name_][key] = static_cast<std::size_t>(v);
      return static_cast<std::size_t>(v);
    }
    inputs_[name_][key] = fallback;
    defaults_[path(key)] = fallback;
    return fallback;
  }

  std::optional<std::string> maybe_text(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    if (!node_[key].IsScalar()) throw ConfigError(path(key) + ": expected a scalar");
    return node_[key].as<std::string>();
  }

  std::optional<bool> maybe_flag(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    try {
      return node_[key].as<bool>();
    } catch (const YAML::Exception&) {
      throw ConfigError(path(key) + ": expected true or false");
    }
  }

  std::optional<std::vector<double>> maybe_list(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const auto& n = node_[key];
    if (!n.IsSequence()) throw ConfigError(path(key) + ": expected a list of numbers");
    std::vector<double> out;
    for (const auto& item : n) {
      try {
        out.push_back(item.as<double>());
      } catch (const YAML::Exception&) {
        throw ConfigError(path(key) + ": expected a list of numbers");
      }
    }
    return out;
  }

  double set(const std::string& key, double v) {
    if (!std::isfinite(v)) throw ConfigError(path(key) + " must be finite");
    inputs_[name_][key] = v;
    return v;
  }

  double set_default(const std::string& key, double v) {
    inputs_[name_][key] = v;
    defaults_[path(key)] = json_number(v);
    return v;
  }

  std::string path(const std::string& key) const { return name_ + "." + key; }

 private:
  std::string name_;
  YAML::Node node_;
  bool present_ = false;
  nlohmann::json& inputs_;
  nlohmann::json& defaults_;
};

void check_keys(const YAML::Node& root) {
  if (!root.IsMap()) throw ConfigError("config: top level must be a mapping of blocks");
  for (const auto& kv : root) {
    const auto block = kv.first.as<std::string>();
    if (block == "scenario") continue;
    const auto it = schema().find(block);
    if (it == schema().end()) throw ConfigError("config: unknown block '" + block + "'");
    if (kv.second.IsNull()) continue;
    if (!kv.second.IsMap()) throw ConfigError("block '" + block + "' must be a mapping");
    for (const auto& entry : kv.second) {
      const auto key = entry.first.as<std::string>();
      if (!it->second.count(key)) throw ConfigError("config: unknown key '" + block + "." + key + "'");
    }
  }
}

void apply_override(YAML::Node& root, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + text + "' is not key=value");
  const std::string key = text.substr(0, eq);
  const std::string value = text.substr(eq + 1);
  YAML::Node parsed;
  try {
    parsed = YAML::Load(value);
  } catch (const YAML::Exception& e) {
    throw ConfigError("override '" + text + "': " + e.what());
  }
  const auto dot = key.find('.');
  if (dot == std::string::npos) {
    if (key != "scenario") throw ConfigError("override '" + text + "': expected block.key=value");
    root[key] = parsed;
    return;
  }
  const std::string block = key.substr(0, dot);
  const std::string field = key.substr(dot + 1);
  if (!schema().count(block)) throw ConfigError("override: unknown block '" + block + "'");
  if (!schema().at(block).count(field)) throw ConfigError("override: unknown key '" + key + "'");
  if (!root[block] || root[block].IsNull()) root[block] = YAML::Node(YAML::NodeType::Map);
  root[block][field] = parsed;
}

bool needs_medium(Scenario s) { return s != Scenario::spectrum; }
bool needs_beam(Scenario s) { return s == Scenario::deflect || s == Scenario::sweep || s == Scenario::wn_check; }

void require(const Block& b, const std::string& name, Scenario s) {
  if (!b.present()) {
    throw ConfigError("config: scenario " + std::string(to_string(s)) + " requires the '" + name + "' block");
  }
}

AtomParams read_atom(Block& b) {
  AtomParams defaults;
  AtomParams p;
  p.gamma1 = b.number("gamma1", defaults.gamma1);
  p.gamma2 = b.number("gamma2", defaults.gamma2);
  p.delta_c = b.number("delta_c", defaults.delta_c);
  p.w_eq = b.number("w_eq", defaults.w_eq);
  p.validate();
  return p;
}

void read_medium(Block& b, ScenarioConfig& cfg) {
  const Wavenumbers kd;
  Wavenumbers k;
  k.k_c = b.number("k_c", kd.k_c);
  k.k_p = b.number("k_p", kd.k_p);
  const double c = b.number("c", 1.0);
  const bool direct = b.has("alpha_c") || b.has("alpha_p");
  const bool derived = b.has("atom_line_density") || b.has("coupling_c") || b.has("coupling_p");
  if (direct && derived) {
    throw ConfigError("medium: give either alpha_c and alpha_p or the couplings, not both");
  }
  if (cfg.atom.delta_c == 0.0) {
    throw ConfigError("atom.delta_c != 0 violated (propagation needs the large-detuning regime)");
  }
  try {
    MediumCoefficients m;
    if (direct) {
      if (!b.has("alpha_c") || !b.has("alpha_p")) throw ConfigError("medium: alpha_c and alpha_p must be given together");
      m = coefficients_from_alphas(cfg.atom, b.number("alpha_c", 0.0), b.number("alpha_p", 0.0), k, c);
    } else {
      const Couplings cd;
      Couplings cp;
      cp.atom_line_density = b.number("atom_line_density", cd.atom_line_density);
      cp.coupling_c = b.number("coupling_c", cd.coupling_c);
      cp.coupling_p = b.number("coupling_p", cd.coupling_p);
      cp.c = c;
      m = derive_coefficients(cfg.atom, cp, k);
    }
    cfg.coefficients = m;
    cfg.medium.atom = cfg.atom;
    cfg.medium.couplings = {m.atom_line_density, m.coupling_c, m.coupling_p, m.c};
    cfg.medium.wavenumbers = k;
  } catch (const RegimeError& e) {
    throw ConfigError(e.what());
  }
  for (auto& w : regime_warnings(cfg.atom)) cfg.warnings.push_back(std::move(w));
}

void check_probe_geometry(const ScenarioConfig& cfg, double l_c, double b) {
  const double width = cfg.grid.width_over_lc * l_c;
  const double dx = width / static_cast<double>(cfg.grid.n);
  if (!(b > 0.0)) guard_failed("beam.b > 0");
  if (b > l_c) guard_failed("beam.b < L_c", "probe must be narrower than the control beam: b = " + fmt(b) + ", L_c = " + fmt(l_c));
  if (b < 4.0 * dx) guard_failed("beam.b >= 4 dx", "b = " + fmt(b) + ", dx = " + fmt(dx));
}

void check_inside(const ScenarioConfig& cfg, double a, double b, double l_c) {
  const double half = 0.5 * cfg.grid.width_over_lc * l_c;
  if (std::abs(a) + 4.0 * b > half) {
    guard_failed("|beam.a| + 4 b <= domain half width", "a = " + fmt(a) + ", b = " + fmt(b) + ", half width = " + fmt(half));
  }
}

}  // namespace

ScenarioConfig parse_config(std::string_view text, std::optional<Scenario> scenario,
                            const std::vector<std::string>& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: malformed document: ") + e.what());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  for (const auto& o : overrides) apply_override(root, o);
  check_keys(root);

  ScenarioConfig cfg;
  if (root["scenario"]) {
    const Scenario in_file = parse_scenario(root["scenario"].as<std::string>());
    if (scenario && *scenario != in_file) {
      throw ConfigError("config: document is for scenario " + std::string(to_string(in_file)) +
                        " but " + std::string(to_string(*scenario)) + " was requested");
    }
    cfg.scenario = in_file;
  } else if (scenario) {
    cfg.scenario = *scenario;
  } else {
    throw ConfigError("config: no scenario given");
  }
  const Scenario s = cfg.scenario;
  cfg.inputs = nlohmann::json::object();
  cfg.defaults = nlohmann::json::object();
  cfg.inputs["scenario"] = std::string(to_string(s));

  auto block = [&](const std::string& name) { return Block(root, name, cfg.inputs, cfg.defaults); };

  Block atom = block("atom");
  require(atom, "atom", s);
  cfg.atom = read_atom(atom);

  Block medium = block("medium");
  Block beam = block("beam");
  if (needs_medium(s)) require(medium, "medium", s);
  if (needs_beam(s)) require(beam, "beam", s);

  if (s == Scenario::spectrum) {
    Block drive = block("drive");
    const SpectrumSettings d;
    auto& sp = cfg.spectrum;
    sp.omega_c = drive.number("omega_c", d.omega_c);
    sp.probe_amplitude = drive.number("probe_amplitude", d.probe_amplitude);
    sp.delta_min = drive.number("delta_min", d.delta_min);
    sp.delta_max = drive.number("delta_max", d.delta_max);
    sp.points = drive.count("points", d.points);
    if (!(sp.probe_amplitude > 0.0)) guard_failed("drive.probe_amplitude > 0");
    if (!(sp.omega_c >= 0.0)) guard_failed("drive.omega_c >= 0");
    if (!(sp.delta_max > sp.delta_min)) guard_failed("drive.delta_max > drive.delta_min");
    if (sp.points < 3) guard_failed("drive.points >= 3");
    DriveFields f;
    f.omega_c = sp.omega_c;
    f.omega_p = sp.probe_amplitude;
    for (auto& w : drive_warnings(f)) cfg.warnings.push_back(std::move(w));
  }

  if (needs_medium(s)) read_medium(medium, cfg);

  Block grid = block("grid");
  cfg.grid.n = grid.count("n", GridSettings{}.n);
  cfg.grid.width_over_lc = grid.number("width_over_lc", GridSettings{}.width_over_lc);
  if (cfg.grid.n < 64 || (cfg.grid.n & (cfg.grid.n - 1)) != 0) guard_failed("grid.n power of two >= 64", "n = " + std::to_string(cfg.grid.n));
  if (needs_medium(s) && cfg.grid.width_over_lc < 8.0) {
    guard_failed("grid.width_over_lc >= 8", "domain must hold the soliton tails");
  }

  Block numerics = block("numerics");
  Block sweep = block("sweep");
  Block output = block("output");
  const auto snapshots = output.maybe_flag("snapshots");
  cfg.write_snapshots = snapshots.value_or(true);
  cfg.inputs["output"]["snapshots"] = cfg.write_snapshots;
  if (!snapshots) cfg.defaults["output.snapshots"] = true;

  if (const auto model = numerics.maybe_text("model")) {
    if (*model == "cubic") {
      cfg.numerics.model = ControlModel::cubic;
    } else if (*model == "saturable") {
      cfg.numerics.model = ControlModel::saturable;
    } else {
      throw ConfigError("numerics.model: expected cubic or saturable");
    }
  } else if (s == Scenario::soliton) {
    cfg.defaults["numerics.model"] = "cubic";
  }
  if (s == Scenario::soliton) {
    cfg.inputs["numerics"]["model"] = cfg.numerics.model == ControlModel::cubic ? "cubic" : "saturable";
  }

  if (s == Scenario::spectrum) {
    DriveFields f;
    f.omega_c = cfg.spectrum.omega_c;
    const double rate = bloch_max_rate(cfg.atom, f);
    auto& n = cfg.numerics;
    n.dt = numerics.number("dt", std::min(0.01, 0.05 / rate));
    if (!(n.dt > 0.0) || !(n.dt * rate < 0.1)) guard_failed("numerics.dt * max_rate < 0.1", "dt = " + fmt(n.dt) + ", rate = " + fmt(rate));
  }

  if (s == Scenario::soliton) {
    const auto& m = *cfg.coefficients;
    auto& n = cfg.numerics;
    const double dx = cfg.grid.width_over_lc * m.l_c / static_cast<double>(cfg.grid.n);
    n.dz = numerics.number("dz", std::min(0.01 / std::abs(m.alpha_c), m.k_c * dx * dx));
    n.z_end = numerics.number("z_end", 10.0 / std::abs(m.alpha_c));
    n.edge_tolerance = numerics.number("edge_tolerance", 2e-3);
    if (!(n.dz > 0.0) || !(n.dz * std::abs(m.alpha_c) < 0.1)) guard_failed("numerics.dz * |alpha_c| < 0.1", "dz = " + fmt(n.dz));
    if (!(n.z_end > 0.0)) guard_failed("numerics.z_end > 0");
    if (!(n.edge_tolerance > 0.0)) guard_failed("numerics.edge_tolerance > 0");
    const auto steps = plan_steps(n.z_end, n.dz).steps;
    n.snapshot_every = numerics.count("snapshot_every", std::max<std::size_t>(1, steps / 20));
  }

  if (needs_beam(s)) {
    const auto& m = *cfg.coefficients;
    auto& bm = cfg.beam;
    bm.a = beam.number("a", m.l_c);
    bm.b = beam.number("b", 0.2 * m.l_c);
    bm.length = beam.number("length", BeamSettings{}.length);
    if (!(bm.length > 0.0)) guard_failed("beam.length > 0");
    check_probe_geometry(cfg, m.l_c, bm.b);

    auto& n = cfg.numerics;
    const double dx = cfg.grid.width_over_lc * m.l_c / static_cast<double>(cfg.grid.n);
    n.dz = numerics.number("dz", default_probe_dz(m, dx));
    n.edge_tolerance = numerics.number("edge_tolerance", 1e-6);
    if (!(n.dz > 0.0) || !(n.dz * std::abs(m.alpha_p) / m.c < 0.1)) {
      guard_failed("numerics.dz * |alpha_p| / c < 0.1", "dz = " + fmt(n.dz) + ", alpha_p = " + fmt(m.alpha_p));
    }
    if (!(n.edge_tolerance > 0.0)) guard_failed("numerics.edge_tolerance > 0");

    if (s == Scenario::sweep) {
      auto& sw = cfg.sweep;
      if (auto v = sweep.maybe_list("a_values")) {
        sw.a_values = *v;
        cfg.inputs["sweep"]["a_values"] = sw.a_values;
      } else {
        sw.a_values = {-m.l_c, 0.0, m.l_c};
        cfg.inputs["sweep"]["a_values"] = sw.a_values;
        cfg.defaults["sweep.a_values"] = sw.a_values;
      }
      if (auto v = sweep.maybe_list("delta_values")) {
        sw.delta_values = *v;
        cfg.inputs["sweep"]["delta_values"] = sw.delta_values;
      } else {
        sw.delta_values = {cfg.atom.delta_c, -cfg.atom.delta_c};
        cfg.inputs["sweep"]["delta_values"] = sw.delta_values;
        cfg.defaults["sweep.delta_values"] = sw.delta_values;
      }
      if (sw.a_values.empty() || sw.delta_values.empty()) guard_failed("sweep lists non-empty");
      for (double d : sw.delta_values) {
        if (d == 0.0 || !std::isfinite(d)) guard_failed("sweep.delta_values != 0", "propagation needs the large-detuning regime");
        const auto md = cfg.medium.at(d);
        const double b = bm.b / m.l_c * md.l_c;
        check_probe_geometry(cfg, md.l_c, b);
        const double dxd = cfg.grid.width_over_lc * md.l_c / static_cast<double>(cfg.grid.n);
        const double dzd = numerics.has("dz") ? n.dz : default_probe_dz(md, dxd);
        if (!(dzd * std::abs(md.alpha_p) / md.c < 0.1)) guard_failed("numerics.dz * |alpha_p| / c < 0.1", "delta_c = " + fmt(d));
        for (double a : sw.a_values) check_inside(cfg, a, b, md.l_c);
      }
    } else {
      check_inside(cfg, bm.a, bm.b, m.l_c);
    }

    if (s == Scenario::wn_check) {
      const auto eta = linearized_potential(bm.a, m);
      const double rate = std::max({1.0 / (2.0 * m.k_p), std::abs(eta.eta0) / m.c, std::abs(eta.eta1) / m.c});
      n.dt = numerics.number("dt", std::min(1e-3, 0.05 / rate));
      if (!(n.dt > 0.0) || !(n.dt * rate < 0.1)) guard_failed("numerics.dt * max|c_j| < 0.1", "dt = " + fmt(n.dt));
    }
  }

  // Blocks that the scenario does not read must not silently carry settings.
  auto unused = [&](const Block& b, const std::string& name) {
    if (b.present()) cfg.warnings.push_back("block '" + name + "' is not used by scenario " + std::string(to_string(s)));
  };
  if (s != Scenario::spectrum) unused(block("drive"), "drive");
  if (s == Scenario::spectrum) {
    unused(medium, "medium");
    unused(beam, "beam");
  }
  if (s != Scenario::sweep) unused(sweep, "sweep");
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path, std::optional<Scenario> scenario,
                           const std::vector<std::string>& overrides) {
  return parse_config(read_text(path), scenario, overrides);
}

}  // namespace cpo
