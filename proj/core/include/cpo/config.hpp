#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cpo/bloch.hpp"
#include "cpo/deflection.hpp"
#include "cpo/medium.hpp"
#include "cpo/propagation.hpp"

namespace cpo {

enum class Scenario { spectrum, soliton, deflect, sweep, wn_check };

std::string_view to_string(Scenario s);
/// Accepts spectrum, soliton, deflect, sweep, wn-check.
Scenario parse_scenario(std::string_view name);

struct SpectrumSettings {
  double omega_c = 0.3;
  double probe_amplitude = 1e-3;
  double delta_min = -0.5;
  double delta_max = 0.5;
  std::size_t points = 1001;
};

struct GridSettings {
  std::size_t n = 1024;
  double width_over_lc = 16.0;
};

/// Probe geometry in absolute transverse units.
struct BeamSettings {
  double a = 0.0;
  double b = 0.0;
  double length = 10.0;
};

struct NumericsSettings {
  double dt = 0.0;              ///< Bloch / Wei-Norman step
  double dz = 0.0;              ///< propagation step
  double edge_tolerance = 0.0;
  double z_end = 0.0;           ///< soliton run length
  std::size_t snapshot_every = 0;
  ControlModel model = ControlModel::cubic;
};

struct SweepSettings {
  std::vector<double> a_values;
  std::vector<double> delta_values;
};

/// Fully resolved and validated run description.
struct ScenarioConfig {
  Scenario scenario = Scenario::spectrum;
  AtomParams atom;
  SpectrumSettings spectrum;
  MediumTemplate medium;             ///< inputs the coefficients are rebuilt from
  std::optional<MediumCoefficients> coefficients;
  GridSettings grid;
  BeamSettings beam;
  NumericsSettings numerics;
  SweepSettings sweep;
  bool write_snapshots = true;

  nlohmann::json inputs;    ///< every key after overrides and defaults, by block
  nlohmann::json defaults;  ///< only the keys that were filled in, dotted names
  std::vector<std::string> warnings;
};

/// Parses a sectioned YAML document. `scenario` (from the command line) must agree with
/// a `scenario:` key if the document has one. Each override is "block.key=value", with
/// the value read as YAML so lists work ("sweep.a_values=[-1, 1]").
///
/// Unknown blocks or keys, missing required blocks and violated guards throw ConfigError.
ScenarioConfig parse_config(std::string_view text, std::optional<Scenario> scenario = std::nullopt,
                            const std::vector<std::string>& overrides = {});

ScenarioConfig load_config(const std::filesystem::path& path,
                           std::optional<Scenario> scenario = std::nullopt,
                           const std::vector<std::string>& overrides = {});

}  // namespace cpo
