#include "cpo/scenario.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "cpo/error.hpp"
#include "cpo/fft.hpp"
#include "cpo/output.hpp"
#include "cpo/spectrum.hpp"
#include "cpo/wei_norman.hpp"

#ifndef CPO_VERSION
#define CPO_VERSION "0.0.0"
#endif

namespace cpo {

std::string version_string() { return CPO_VERSION; }

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Tolerances of the embedded checks.
constexpr double kClosedFormTol = 1e-8;
constexpr double kLinearityTol = 1e-12;
constexpr double kZerothTol = 1e-6;
constexpr double kSolitonAmplitudeTol = 1e-3;
constexpr double kSolitonWidthTol = 5e-3;
constexpr double kNormTol = 1e-10;
constexpr double kLinearizedTol = 0.01;
constexpr double kFullTol = 0.05;
constexpr double kMirrorTol = 0.02;
constexpr double kWnCoeffTol = 1e-8;
constexpr double kWnFieldTol = 1e-6;
constexpr double kWnEndpointTol = 1e-12;

struct Context {
  const ScenarioConfig& cfg;
  const RunOptions& opts;
  RunResult& result;
  json results = json::object();

  void csv(const std::string& rel, const Table& t) {
    write_csv(opts.out_dir / rel, t);
    result.files.push_back(rel);
  }
  void json_file(const std::string& rel, const json& j) {
    write_json(opts.out_dir / rel, j);
    result.files.push_back(rel);
  }
  void less(std::string name, double value, double limit, std::string note = {}) {
    result.checks.push_back({std::move(name), value, limit, "<", value < limit, std::move(note)});
  }
  void equal(std::string name, double value, double want, std::string note = {}) {
    result.checks.push_back({std::move(name), value, want, "==", value == want, std::move(note)});
  }
};

json coefficients_json(const MediumCoefficients& m) {
  return {{"alpha_c", m.alpha_c}, {"alpha_p", m.alpha_p}, {"beta", m.beta}, {"q", m.q},
          {"l_c", m.l_c}, {"k_c", m.k_c}, {"k_p", m.k_p}, {"coupling_c", m.coupling_c},
          {"coupling_p", m.coupling_p}, {"atom_line_density", m.atom_line_density},
          {"c", m.c}, {"delta_c", m.delta_c}, {"control_peak", m.control_peak()}};
}

json complex_json(complex z) { return json::array({json_number(z.real()), json_number(z.imag())}); }

Table field_table(const ComplexField1D& f) {
  Table t{{"x", "re", "im", "abs2"}, {}};
  t.rows.reserve(f.values.size());
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    const auto v = f.values[j];
    t.rows.push_back({f.grid.x(j), v.real(), v.imag(), std::norm(v)});
  }
  return t;
}

// ---------------------------------------------------------------- spectrum

void run_spectrum(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto& sp = c.spectrum;
  const auto grid = linspace(sp.delta_min, sp.delta_max, sp.points);
  const auto spectrum = probe_spectrum(c.atom, sp.omega_c, grid, sp.probe_amplitude);

  Table t{{"delta", "re_chi", "im_chi"}, {}};
  for (const auto& p : spectrum) t.rows.push_back({p.delta, p.chi.real(), p.chi.imag()});
  ctx.csv("spectrum.csv", t);

  double worst_closed = 0.0;
  double worst_linear = 0.0;
  std::size_t failed = 0;
  std::size_t closed_singular = 0;
  for (const auto& p : spectrum) {
    if (!p.ok) {
      ++failed;
      continue;
    }
    try {
      const complex closed = first_order_closed(c.atom, sp.omega_c, sp.probe_amplitude, p.delta) / sp.probe_amplitude;
      worst_closed = std::max(worst_closed, std::abs(p.chi - closed) / std::abs(closed));
    } catch (const SingularError&) {
      ++closed_singular;
    }
    const auto r1 = floquet_steady_solve(c.atom, sp.omega_c, sp.probe_amplitude, p.delta);
    const auto r2 = floquet_steady_solve(c.atom, sp.omega_c, 2.0 * sp.probe_amplitude, p.delta);
    if (r1.sigma_ge_minus != complex{}) {
      worst_linear = std::max(worst_linear, std::abs(r2.sigma_ge_minus - 2.0 * r1.sigma_ge_minus) /
                                                std::abs(2.0 * r1.sigma_ge_minus));
    }
  }
  ctx.equal("spectrum_failed_points", static_cast<double>(failed), 0.0);
  ctx.less("floquet_vs_closed_form_max_rel", worst_closed, kClosedFormTol,
           closed_singular ? std::to_string(closed_singular) + " points with singular closed form skipped" : "");
  ctx.less("probe_linearity_max_rel", worst_linear, kLinearityTol);

  // Long-time integration against the zeroth-order closed form.
  DriveFields f;
  f.omega_c = sp.omega_c;
  const double t_end = 20.0 / std::min(c.atom.gamma1, c.atom.gamma2);
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / c.numerics.dt));
  const auto end = integrate_bloch(c.atom, f, t_end, c.numerics.dt, steps).back();
  const auto z = steady_state_zeroth(c.atom, sp.omega_c);
  const double scale = std::hypot(z.w0, std::abs(z.sigma_ge0));
  const double err = std::hypot(end.w - z.w0, std::abs(end.sigma_ge() - z.sigma_ge0)) / scale;
  ctx.less("zeroth_order_time_domain_rel", err, kZerothTol, "t_end = 20 / min(gamma1, gamma2)");
  ctx.results["zeroth_order"] = {{"w0", z.w0}, {"sigma_ge0", complex_json(z.sigma_ge0)}, {"t_end", t_end}};

  const double spacing = (sp.delta_max - sp.delta_min) / static_cast<double>(sp.points - 1);
  if (sp.omega_c > 0.0) {
    try {
      const auto m = dip_metrics(spectrum);
      const json dip = {{"center", m.center}, {"fwhm", m.fwhm}, {"depth", m.depth},
                        {"baseline", m.baseline}, {"minimum", m.minimum}, {"gamma1", c.atom.gamma1}};
      ctx.results["dip"] = dip;
      ctx.json_file("dip_metrics.json", dip);
      ctx.equal("dip_present", 1.0, 1.0);
      ctx.less("dip_center_abs", std::abs(m.center), 2.0 * spacing + 1e-15, "limit is two grid spacings");
    } catch (const NoDipError& e) {
      ctx.results["dip"] = nullptr;
      ctx.equal("dip_present", 0.0, 1.0, e.what());
    }
  } else {
    bool absent = false;
    try {
      dip_metrics(spectrum);
    } catch (const NoDipError&) {
      absent = true;
    }
    ctx.results["dip"] = nullptr;
    ctx.equal("dip_absent_without_control", absent ? 1.0 : 0.0, 1.0);
  }
}

// ---------------------------------------------------------------- soliton

// max |residual| / (peak |alpha_c|) of the cubic control equation for the sech profile,
// with centred differences of spacing h.
double soliton_residual(const MediumCoefficients& m, double h) {
  const complex i{0.0, 1.0};
  double worst = 0.0;
  for (double xl : {-2.0, -0.7, 0.0, 0.5, 1.9}) {
    const double x = xl * m.l_c;
    const double z = 1.0;
    auto u = [&](double xx, double zz) { return soliton_profile(xx, zz, m); };
    const complex dz = (u(x, z + h) - u(x, z - h)) / (2.0 * h);
    const complex dxx = (u(x + h, z) - 2.0 * u(x, z) + u(x - h, z)) / (h * h);
    const complex here = u(x, z);
    const complex r = i * dz + dxx / (2.0 * m.k_c) - m.alpha_c * (1.0 - 2.0 * m.beta * std::norm(here)) * here;
    worst = std::max(worst, std::abs(r));
  }
  return worst / (m.control_peak() * std::abs(m.alpha_c));
}

void run_soliton(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto& m = *c.coefficients;
  const auto& n = c.numerics;
  const auto grid = TransverseGrid::centered(c.grid.n, c.grid.width_over_lc * m.l_c);
  const auto u0 = sample_soliton(grid, m);

  json snaps = json::array();
  PropagationOptions opts;
  opts.edge_tolerance = n.edge_tolerance;
  if (c.write_snapshots) {
    opts.snapshot_every = n.snapshot_every;
    opts.on_snapshot = [&](const ComplexField1D& f) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshots/soliton_%04zu.csv", snaps.size());
      ctx.csv(name, field_table(f));
      snaps.push_back({{"file", name}, {"z", f.z}});
    };
  }
  const auto u = propagate_control(u0, m, n.z_end, n.dz, n.model, opts);
  ctx.results["snapshots"] = snaps;

  double worst = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    worst = std::max(worst, std::abs(std::abs(u.values[j]) - std::abs(u0.values[j])));
  }
  const double deviation = worst / m.control_peak();
  const auto d0 = beam_diagnostics(u0);
  const auto d1 = beam_diagnostics(u);
  const double width_change = std::abs(d1.rms_width - d0.rms_width) / d0.rms_width;
  const double norm_drift = std::abs(d1.norm - d0.norm) / d0.norm;
  const double r1 = soliton_residual(m, 0.02 * m.l_c);
  const double r2 = soliton_residual(m, 0.01 * m.l_c);
  ctx.results["soliton"] = {{"max_amplitude_deviation", deviation}, {"rms_width_initial", d0.rms_width},
                            {"rms_width_final", d1.rms_width}, {"norm_drift", norm_drift},
                            {"fd_residual_h", r1}, {"fd_residual_h_half", r2}, {"z_end", n.z_end},
                            {"dz", plan_steps(n.z_end, n.dz).dz}, {"steps", plan_steps(n.z_end, n.dz).steps}};

  if (n.model == ControlModel::cubic) {
    ctx.less("soliton_max_amplitude_deviation", deviation, kSolitonAmplitudeTol);
    ctx.less("soliton_rms_width_change", width_change, kSolitonWidthTol);
  }
  ctx.less("soliton_norm_drift", norm_drift, kNormTol);
  ctx.less("soliton_fd_residual_order_error", std::abs(r1 / r2 - 4.0), 0.4, "ratio of residuals at h and h/2 minus 4");
}

// ---------------------------------------------------------------- deflection

BendDirection expected_direction(double a, double delta_c) {
  if (a == 0.0) return BendDirection::straight;
  // Red detuning pulls the probe toward the control centre.
  return (a > 0.0) == (delta_c < 0.0) ? BendDirection::left : BendDirection::right;
}

DeflectionSettings deflection_settings(const ScenarioConfig& c) {
  DeflectionSettings s;
  s.length = c.beam.length;
  s.b_over_lc = c.beam.b / c.coefficients->l_c;
  s.grid_points = c.grid.n;
  s.width_over_lc = c.grid.width_over_lc;
  s.dz = c.numerics.dz;
  s.edge_tolerance = c.numerics.edge_tolerance;
  return s;
}

Table deflection_table(const std::vector<DeflectionRow>& rows) {
  Table t{{"a", "delta", "x_numeric", "x_analytic", "direction"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.a, r.delta, r.x_full, r.x_analytic, r.ok ? std::string(to_string(r.direction)) : "failed"});
  }
  return t;
}

json row_json(const DeflectionRow& r) {
  return {{"a", r.a}, {"delta", r.delta}, {"x_linearized", json_number(r.x_linearized)},
          {"x_full", json_number(r.x_full)}, {"x_analytic", r.x_analytic}, {"eta0", r.eta0},
          {"eta1", r.eta1}, {"l_c", r.l_c}, {"dx", r.dx}, {"norm_drift", r.norm_drift},
          {"direction", r.ok ? std::string(to_string(r.direction)) : "failed"}, {"ok", r.ok},
          {"error", r.error}};
}

struct RowErrors {
  double linearized = 0.0;  // relative to the analytic shift, or |shift| / dx when it is zero
  double full = 0.0;
  bool straight = false;
};

RowErrors row_errors(const DeflectionRow& r) {
  RowErrors e;
  const double s = r.shift_analytic();
  if (s == 0.0) {
    e.straight = true;
    e.linearized = std::abs(r.x_linearized - r.a) / r.dx;
    e.full = std::abs(r.x_full - r.a) / r.dx;
  } else {
    e.linearized = std::abs(r.x_linearized - r.x_analytic) / std::abs(s);
    e.full = std::abs(r.x_full - r.x_analytic) / std::abs(s);
  }
  return e;
}

void run_deflect(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto row = deflection_cell(c.beam.a, c.atom.delta_c, c.medium, deflection_settings(c));
  ctx.csv("deflection.csv", deflection_table({row}));
  ctx.results["deflection"] = row_json(row);
  if (!row.ok) throw Error("deflect: " + row.error);

  const auto e = row_errors(row);
  if (e.straight) {
    ctx.less("straight_linearized_shift_over_dx", e.linearized, 1.0);
    ctx.less("straight_full_shift_over_dx", e.full, 1.0);
  } else {
    ctx.less("linearized_vs_analytic_rel", e.linearized, kLinearizedTol);
    ctx.less("full_vs_analytic_rel", e.full, kFullTol);
  }
  ctx.equal("direction_matches_sign_rule",
            row.direction == expected_direction(row.a, row.delta) ? 1.0 : 0.0, 1.0,
            "expected " + std::string(to_string(expected_direction(row.a, row.delta))));
  ctx.less("norm_drift", row.norm_drift, kNormTol);
}

void run_sweep(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto rows = deflection_experiment(c.sweep.a_values, c.sweep.delta_values, c.medium,
                                          deflection_settings(c), std::max(1u, ctx.opts.jobs));
  ctx.csv("sweep.csv", deflection_table(rows));
  json cells = json::array();
  for (const auto& r : rows) cells.push_back(row_json(r));
  ctx.results["cells"] = cells;

  std::size_t failed = 0;
  std::size_t mismatches = 0;
  double worst_lin = 0.0, worst_full = 0.0, worst_straight = 0.0, worst_mirror = 0.0, worst_norm = 0.0;
  bool any_shifted = false, any_straight = false, any_mirror = false;
  std::map<std::pair<double, double>, const DeflectionRow*> by_cell;
  for (const auto& r : rows) {
    if (!r.ok) {
      ++failed;
      continue;
    }
    by_cell[{r.delta, r.a}] = &r;
    const auto e = row_errors(r);
    if (e.straight) {
      any_straight = true;
      worst_straight = std::max({worst_straight, e.linearized, e.full});
    } else {
      any_shifted = true;
      worst_lin = std::max(worst_lin, e.linearized);
      worst_full = std::max(worst_full, e.full);
    }
    if (r.direction != expected_direction(r.a, r.delta)) ++mismatches;
    worst_norm = std::max(worst_norm, r.norm_drift);
  }
  for (const auto& [key, r] : by_cell) {
    if (key.second <= 0.0) continue;
    const auto it = by_cell.find({key.first, -key.second});
    if (it == by_cell.end()) continue;
    any_mirror = true;
    worst_mirror = std::max(worst_mirror, std::abs(r->shift_numeric() + it->second->shift_numeric()) /
                                              std::abs(r->shift_numeric()));
  }

  if (any_shifted) {
    ctx.less("max_linearized_vs_analytic_rel", worst_lin, kLinearizedTol);
    ctx.less("max_full_vs_analytic_rel", worst_full, kFullTol);
  }
  if (any_straight) ctx.less("max_straight_shift_over_dx", worst_straight, 1.0);
  if (any_mirror) ctx.less("max_mirror_antisymmetry_rel", worst_mirror, kMirrorTol);
  ctx.equal("direction_mismatches", static_cast<double>(mismatches), 0.0);
  ctx.less("max_norm_drift", worst_norm, kNormTol);
  if (failed) throw Error("sweep: " + std::to_string(failed) + " cell(s) failed, see metadata results.cells");
}

// ---------------------------------------------------------------- Wei-Norman

void run_wn_check(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto& m = *c.coefficients;
  const double a = c.beam.a, b = c.beam.b, L = c.beam.length;
  const auto eta = linearized_potential(a, m);
  const double eta0 = eta.eta0 / m.c, eta1 = eta.eta1 / m.c;

  const auto closed = wn_closed_coefficients(L, m.k_p, eta0, eta1, a);
  const auto integrated = wn_integrate_odes(HamiltonianCoefficients::constant_case(m.k_p, eta0, eta1), L, c.numerics.dt, a);
  double coeff_err = 0.0;
  const std::pair<complex, complex> pairs[] = {{closed.g1, integrated.g1}, {closed.g2, integrated.g2},
                                               {closed.g3, integrated.g3}, {closed.g4, integrated.g4}};
  for (const auto& [x, y] : pairs) coeff_err = std::max(coeff_err, std::abs(x - y) / std::max(1.0, std::abs(x)));

  const auto packet = probe_packet(a, b);
  const auto evolved = evolve_gaussian_analytic(packet, closed);
  const auto grid = TransverseGrid::centered(c.grid.n, c.grid.width_over_lc * m.l_c);
  PropagationOptions opts;
  opts.edge_tolerance = c.numerics.edge_tolerance;
  const auto numeric = propagate_probe(sample_packet(grid, packet), PotentialMode::linearized, m, eta, L, c.numerics.dz, opts);
  const auto exact = sample_packet(grid, evolved, L);
  const double l2 = l2_distance(numeric, exact);
  const auto endpoint = trajectory_endpoint(a, eta.eta1, m.k_p, m.c, L);

  ctx.csv("wn_packet.csv", field_table(exact));
  ctx.csv("wn_numeric.csv", field_table(numeric));

  auto coeffs_json = [](const WeiNormanCoeffs& w) {
    return json{{"g1", complex_json(w.g1)}, {"g2", complex_json(w.g2)}, {"g3", complex_json(w.g3)},
                {"g4", complex_json(w.g4)}, {"t", w.t}, {"m", w.m}, {"eta0", w.eta0},
                {"eta1", w.eta1}, {"a", w.a}};
  };
  ctx.results["wei_norman"] = {
      {"closed", coeffs_json(closed)},
      {"integrated", coeffs_json(integrated)},
      {"packet", {{"center", evolved.center}, {"momentum", evolved.momentum},
                  {"complex_width", complex_json(evolved.complex_width)},
                  {"global_phase", complex_json(evolved.global_phase)},
                  {"norm", packet_norm(evolved)}}},
      {"endpoint", {{"x", endpoint.x}, {"z", endpoint.z}}},
      {"numeric_centroid", beam_diagnostics(numeric).centroid},
      {"l2_vs_split_step", l2}};

  ctx.less("wn_integrated_vs_closed_max_rel", coeff_err, kWnCoeffTol);
  ctx.less("wn_l2_vs_split_step", l2, kWnFieldTol);
  ctx.less("wn_endpoint_vs_trajectory_abs", std::abs(evolved.center - endpoint.x), kWnEndpointTol);
  ctx.less("wn_packet_norm_drift", std::abs(packet_norm(evolved) - 1.0), kWnEndpointTol);
}

json libraries() {
  char eigen[32];
  std::snprintf(eigen, sizeof eigen, "%d.%d.%d", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION);
  char nl[32];
  std::snprintf(nl, sizeof nl, "%d.%d.%d", NLOHMANN_JSON_VERSION_MAJOR, NLOHMANN_JSON_VERSION_MINOR,
                NLOHMANN_JSON_VERSION_PATCH);
  return {{"eigen", eigen}, {"fftw", fft_backend_version()}, {"nlohmann_json", nl}};
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  RunResult result;
  Context ctx{config, options, result};
  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + options.out_dir.string() + ": " + ec.message());

  bool complete = true;
  try {
    switch (config.scenario) {
      case Scenario::spectrum:
        run_spectrum(ctx);
        break;
      case Scenario::soliton:
        run_soliton(ctx);
        break;
      case Scenario::deflect:
        run_deflect(ctx);
        break;
      case Scenario::sweep:
        run_sweep(ctx);
        break;
      case Scenario::wn_check:
        run_wn_check(ctx);
        break;
    }
  } catch (const Error& e) {
    complete = false;
    result.error = std::string(to_string(config.scenario)) + ": " + e.what();
  }

  bool passed = complete;
  json checks = json::array();
  for (const auto& ch : result.checks) {
    passed = passed && ch.passed;
    checks.push_back({{"name", ch.name}, {"value", json_number(ch.value)}, {"limit", ch.limit},
                      {"relation", ch.relation}, {"passed", ch.passed}, {"note", ch.note}});
  }
  result.exit_code = !complete ? 1 : (passed ? 0 : 2);

  json meta = {{"scenario", std::string(to_string(config.scenario))},
               {"version", version_string()},
               {"units", "gamma2 = 1, hbar = 1, c = 1 unless overridden"},
               {"inputs", config.inputs},
               {"defaults", config.defaults},
               {"warnings", config.warnings},
               {"libraries", libraries()},
               {"complete", complete},
               {"error", complete ? json(nullptr) : json(result.error)},
               {"results", ctx.results}};
  if (config.coefficients) meta["medium"] = coefficients_json(*config.coefficients);
  if (ctx.results.contains("wei_norman")) meta["wei_norman"] = ctx.results["wei_norman"];

  const json report = {{"scenario", std::string(to_string(config.scenario))},
                       {"passed", passed},
                       {"complete", complete},
                       {"checks", checks}};
  ctx.json_file("report.json", report);
  meta["files"] = result.files;
  meta["files"].push_back("metadata.json");
  write_json(options.out_dir / "metadata.json", meta);
  result.files.push_back("metadata.json");
  result.metadata = std::move(meta);
  return result;
}

}  // namespace cpo
