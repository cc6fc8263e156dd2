// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cpo/bloch.hpp"
#include "cpo/config.hpp"
#include "cpo/deflection.hpp"
#include "cpo/error.hpp"
#include "cpo/medium.hpp"
#include "cpo/output.hpp"
#include "cpo/propagation.hpp"
#include "cpo/scenario.hpp"
#include "cpo/spectrum.hpp"
#include "cpo/wei_norman.hpp"
#include "support/oracles.hpp"

namespace {

namespace fs = std::filesystem;
using cpo::complex;

// Pinned tolerances.
constexpr double kZerothRel = 1e-6;
constexpr double kLinearityRel = 1e-12;
constexpr double kClosedRel = 1e-8;
constexpr double kR2Min = 0.99;
constexpr double kSolitonDeviation = 1e-3;
constexpr double kSolitonWidth = 5e-3;
constexpr double kFdOrder = 2.0;
constexpr double kFdOrderSlack = 0.1;
constexpr double kLinearizedRel = 0.01;
constexpr double kFullRel = 0.05;
constexpr double kMaxShiftOverLc = 0.2;
constexpr double kHalvingRatio = 4.0;
constexpr double kHalvingSlack = 0.4;
constexpr double kWnOde = 1e-8;
constexpr double kWnL2 = 1e-6;
constexpr double kWnEndpoint = 1e-12;
constexpr int kSweepPoints = 100;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct SweepPoint {
  cpo::AtomParams atom;
  double omega_c = 0.0;
};

// gamma2 = 1 sets the unit; the ratios are the sampled quantities.
std::vector<SweepPoint> random_sweep() {
  cpo::testing::Gen gen(20261016);
  std::vector<SweepPoint> pts;
  while (pts.size() < kSweepPoints) {
    SweepPoint p;
    p.atom.gamma2 = 1.0;
    p.atom.gamma1 = gen.uniform(0.01, 1.0);
    p.atom.delta_c = gen.uniform(-20.0, 20.0);
    p.atom.w_eq = -1.0;
    p.omega_c = gen.uniform(0.0, 3.0);
    if (p.atom.delta_c == 0.0) continue;
    pts.push_back(p);
  }
  return pts;
}

// Zeroth-order steady state of the driven two-level atom, written out independently.
std::pair<double, complex> zeroth_oracle(const cpo::AtomParams& p, double omega_c) {
  const double g1 = p.gamma1, g2 = p.gamma2, d = p.delta_c;
  const double den = g1 * (d * d + g2 * g2) + 4.0 * g2 * omega_c * omega_c;
  return {g1 * (d * d + g2 * g2) * p.w_eq / den, g1 * complex(-d, g2) * omega_c * p.w_eq / den};
}

Outcome criterion1() {
  double worst = 0.0;
  for (const auto& pt : random_sweep()) {
    cpo::DriveFields f;
    f.omega_c = pt.omega_c;
    const double t_end = 20.0 / std::min(pt.atom.gamma1, pt.atom.gamma2);
    const double dt = std::min(0.01, 0.05 / cpo::bloch_max_rate(pt.atom, f));
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt));
    const auto end = cpo::integrate_bloch(pt.atom, f, t_end, dt, steps).back();
    const auto [w0, s0] = zeroth_oracle(pt.atom, pt.omega_c);
    const double err = std::hypot(end.w - w0, std::abs(end.sigma_ge() - s0)) / std::hypot(w0, std::abs(s0));
    worst = std::max(worst, err);
  }
  return {worst < kZerothRel, fmt("max rel error %.3e over %d points (limit %.0e)", worst, kSweepPoints, kZerothRel)};
}

Outcome criterion2() {
  cpo::testing::Gen gen(7);
  double worst_lin = 0.0, worst_closed = 0.0;
  int skipped = 0;
  for (const auto& pt : random_sweep()) {
    for (int k = 0; k < 5; ++k) {
      const double delta = gen.uniform(-5.0, 5.0);
      const complex op = std::polar(1e-3, gen.uniform(-3.0, 3.0));
      const complex scale(gen.uniform(0.1, 5.0), gen.uniform(-2.0, 2.0));
      const auto r1 = cpo::floquet_steady_solve(pt.atom, pt.omega_c, op, delta);
      const auto r2 = cpo::floquet_steady_solve(pt.atom, pt.omega_c, scale * op, delta);
      worst_lin = std::max(worst_lin, cpo::testing::rel_err(r2.sigma_ge_minus, scale * r1.sigma_ge_minus));
      try {
        const complex closed = cpo::first_order_closed(pt.atom, pt.omega_c, op, delta);
        worst_closed = std::max(worst_closed, cpo::testing::rel_err(r1.sigma_ge_minus, closed));
      } catch (const cpo::SingularError&) {
        ++skipped;
      }
    }
  }
  return {worst_lin < kLinearityRel && worst_closed < kClosedRel,
          fmt("linearity %.3e (limit %.0e), closed form %.3e (limit %.0e), %d singular skipped", worst_lin,
              kLinearityRel, worst_closed, kClosedRel, skipped)};
}

Outcome criterion3() {
  cpo::AtomParams atom;
  atom.gamma2 = 1.0;
  atom.delta_c = 0.0;
  const auto grid = cpo::linspace(-1.0, 1.0, 4001);
  const double spacing = grid[1] - grid[0];
  std::vector<double> g1s{0.001, 0.002, 0.005, 0.01}, widths;
  double worst_center = 0.0;
  try {
    for (double g1 : g1s) {
      atom.gamma1 = g1;
      const auto m = cpo::dip_metrics(cpo::probe_spectrum(atom, 0.2, grid));
      widths.push_back(m.fwhm);
      worst_center = std::max(worst_center, std::abs(m.center));
    }
  } catch (const cpo::NoDipError& e) {
    return {false, std::string("no dip: ") + e.what()};
  }
  const auto fit = cpo::fit_line(g1s, widths);
  bool vanished = false;
  atom.gamma1 = 0.01;
  try {
    cpo::dip_metrics(cpo::probe_spectrum(atom, 0.0, grid));
  } catch (const cpo::NoDipError&) {
    vanished = true;
  }
  const bool centred = worst_center < 2.0 * spacing;
  return {centred && fit.slope > 0.0 && fit.r_squared > kR2Min && vanished,
          fmt("|center| %.2e (limit %.2e), fwhm slope %.4f, R^2 %.6f (limit %.2f), dip without control %s",
              worst_center, 2.0 * spacing, fit.slope, fit.r_squared, kR2Min, vanished ? "absent" : "present")};
}

// max |residual| / peak of the cubic control equation for the analytic profile.
double fd_residual(const cpo::MediumCoefficients& m, double h) {
  double worst = 0.0;
  for (double xl : {-1.5, -0.3, 0.0, 0.8, 2.2}) {
    const double x = xl * m.l_c, z = 2.0;
    auto u = [&](double xx, double zz) { return cpo::soliton_profile(xx, zz, m); };
    const complex dz = (u(x, z + h) - u(x, z - h)) / (2.0 * h);
    const complex dxx = (u(x + h, z) - 2.0 * u(x, z) + u(x - h, z)) / (h * h);
    const complex here = u(x, z);
    const complex r = complex(0, 1) * dz + dxx / (2.0 * m.k_c) - m.alpha_c * (1.0 - 2.0 * m.beta * std::norm(here)) * here;
    worst = std::max(worst, std::abs(r));
  }
  return worst / m.control_peak();
}

Outcome criterion4() {
  const auto cfg = cpo::parse_config("atom: {}\nmedium: {}\n", cpo::Scenario::soliton);
  const auto& m = *cfg.coefficients;
  const auto grid = cpo::TransverseGrid::centered(1024, 16.0 * m.l_c);
  const auto u0 = cpo::sample_soliton(grid, m);
  cpo::PropagationOptions opts;
  opts.edge_tolerance = cfg.numerics.edge_tolerance;
  const double z_end = 10.0 / std::abs(m.alpha_c);
  const auto u = cpo::propagate_control(u0, m, z_end, cfg.numerics.dz, cpo::ControlModel::cubic, opts);
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) worst = std::max(worst, std::abs(std::abs(u.values[j]) - std::abs(u0.values[j])));
  const double deviation = worst / m.control_peak();
  const double w0 = cpo::beam_diagnostics(u0).rms_width;
  const double width = std::abs(cpo::beam_diagnostics(u).rms_width - w0) / w0;
  std::vector<double> rs;
  for (double h : {0.04, 0.02, 0.01}) rs.push_back(fd_residual(m, h * m.l_c));
  const double order1 = std::log2(rs[0] / rs[1]);
  const double order2 = std::log2(rs[1] / rs[2]);
  const bool order_ok = std::abs(order1 - kFdOrder) < kFdOrderSlack && std::abs(order2 - kFdOrder) < kFdOrderSlack;
  return {deviation < kSolitonDeviation && width < kSolitonWidth && order_ok,
          fmt("max deviation %.3e (limit %.0e), rms width change %.3e (limit %.0e), fd order %.3f, %.3f (2 +- %.1f)",
              deviation, kSolitonDeviation, width, kSolitonWidth, order1, order2, kFdOrderSlack)};
}

Outcome criterion5() {
  const cpo::MediumTemplate medium{};
  cpo::DeflectionSettings s;
  s.b_over_lc = 0.2;
  double worst_lin = 0.0, worst_full = 0.0, max_shift = 0.0;
  for (double delta : {-10.0, 10.0}) {
    const double l_c = medium.at(delta).l_c;
    for (double al : {0.8, 1.0, 1.2}) {
      const auto r = cpo::deflection_cell(al * l_c, delta, medium, s);
      if (!r.ok) return {false, "run error: " + r.error};
      const double want = r.shift_analytic();
      worst_lin = std::max(worst_lin, std::abs((r.x_linearized - r.a) - want) / std::abs(want));
      worst_full = std::max(worst_full, std::abs(r.shift_numeric() - want) / std::abs(want));
      max_shift = std::max(max_shift, std::abs(want) / l_c);
    }
  }

  // Step halving under the linearized potential, measured as the L2 distance of the field
  // to the exact accelerated Gaussian.
  const auto m = medium.at(-10.0);
  const double a = m.l_c, b = 0.2 * m.l_c, L = 10.0;
  const auto grid = cpo::TransverseGrid::centered(1024, 16.0 * m.l_c);
  const auto eta = cpo::linearized_potential(a, m);
  const auto f0 = cpo::make_gaussian(grid, a, b);
  std::vector<double> errs;
  for (std::size_t steps : {1250u, 2500u, 5000u}) {
    const auto f = cpo::propagate_probe(f0, cpo::PotentialMode::linearized, m, eta, L, L / steps);
    double s2 = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      s2 += std::norm(f.values[j] - cpo::testing::gaussian_in_linear_potential(grid.x(j), L, m.k_p, eta.eta0 / m.c,
                                                                              eta.eta1 / m.c, a, b));
    }
    errs.push_back(std::sqrt(s2 * grid.dx()));
  }
  const double q1 = errs[0] / errs[1], q2 = errs[1] / errs[2];
  const bool halving = std::abs(q1 - kHalvingRatio) < kHalvingSlack && std::abs(q2 - kHalvingRatio) < kHalvingSlack;
  return {max_shift <= kMaxShiftOverLc && worst_lin < kLinearizedRel && worst_full < kFullRel && halving,
          fmt("max shift %.3f L_c (limit %.1f), linearized %.3e (limit %.2f), full %.3e (limit %.2f), "
              "halving ratios %.3f, %.3f (4 +- %.1f)",
              max_shift, kMaxShiftOverLc, worst_lin, kLinearizedRel, worst_full, kFullRel, q1, q2, kHalvingSlack)};
}

Outcome criterion6() {
  const cpo::MediumTemplate medium{};
  const double l_c = medium.at(-10.0).l_c;
  const std::vector<double> as{-l_c, 0.0, l_c};
  const std::vector<double> deltas{-10.0, 10.0};
  const auto rows = cpo::deflection_experiment(as, deltas, medium, {}, 2);
  std::string table;
  bool ok = true;
  for (const auto& r : rows) {
    if (!r.ok) return {false, "run error: " + r.error};
    // Toward the control centre for red detuning, away from it for blue.
    cpo::BendDirection want = cpo::BendDirection::straight;
    if (r.a != 0.0) want = ((r.a > 0.0) == (r.delta < 0.0)) ? cpo::BendDirection::left : cpo::BendDirection::right;
    ok = ok && r.direction == want;
    if (r.a == 0.0) {
      ok = ok && std::abs(r.shift_numeric()) < r.dx;
      table += fmt(" a=0,D=%+g:|shift|/dx=%.1e", r.delta, std::abs(r.shift_numeric()) / r.dx);
    } else {
      table += fmt(" a%sD%s:%s", r.a > 0 ? ">0," : "<0,", r.delta > 0 ? ">0" : "<0",
                   std::string(cpo::to_string(r.direction)).c_str());
    }
  }
  return {ok, "directions" + table};
}

Outcome criterion7() {
  const auto cfg = cpo::parse_config("atom: {}\nmedium: {}\nbeam: {}\n", cpo::Scenario::wn_check);
  const auto& m = *cfg.coefficients;
  const double a = cfg.beam.a, b = cfg.beam.b, L = cfg.beam.length;
  const auto eta = cpo::linearized_potential(a, m);
  const double eta0 = eta.eta0 / m.c, eta1 = eta.eta1 / m.c;
  const auto closed = cpo::wn_closed_coefficients(L, m.k_p, eta0, eta1, a);
  const auto ode = cpo::wn_integrate_odes(cpo::HamiltonianCoefficients::constant_case(m.k_p, eta0, eta1), L,
                                          cfg.numerics.dt, a);
  double ode_err = 0.0;
  for (auto [x, y] : {std::pair{closed.g1, ode.g1}, {closed.g2, ode.g2}, {closed.g3, ode.g3}, {closed.g4, ode.g4}}) {
    ode_err = std::max(ode_err, std::abs(x - y) / std::max(1.0, std::abs(x)));
  }
  const auto packet = cpo::probe_packet(a, b);
  const auto evolved = cpo::evolve_gaussian_analytic(packet, closed);
  const auto grid = cpo::TransverseGrid::centered(cfg.grid.n, cfg.grid.width_over_lc * m.l_c);
  const auto numeric =
      cpo::propagate_probe(cpo::sample_packet(grid, packet), cpo::PotentialMode::linearized, m, eta, L, cfg.numerics.dz);
  const auto exact = cpo::sample_packet(grid, evolved, L);
  double s2 = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) s2 += std::norm(numeric.values[j] - exact.values[j]);
  const double l2 = std::sqrt(s2 * grid.dx());
  // Endpoint of the classical trajectory x(L) = a - eta1 L^2 / (2 k_p c).
  const double endpoint = a - eta.eta1 * L * L / (2.0 * m.k_p * m.c);
  const double end_err = std::abs(evolved.center - endpoint);
  return {ode_err < kWnOde && l2 < kWnL2 && end_err < kWnEndpoint,
          fmt("ode %.3e (limit %.0e), L2 vs split-step %.3e (limit %.0e), endpoint %.3e (limit %.0e)", ode_err, kWnOde,
              l2, kWnL2, end_err, kWnEndpoint)};
}

std::map<std::string, std::string> csv_files(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".csv") out[fs::relative(e.path(), dir).string()] = cpo::read_text(e.path());
  }
  return out;
}

Outcome criterion8() {
  const fs::path root = fs::temp_directory_path() / "cpo_acceptance_determinism";
  const std::pair<cpo::Scenario, const char*> runs[] = {
      {cpo::Scenario::spectrum, "atom: {delta_c: 0}\ndrive: {omega_c: 0.2, points: 801, delta_min: -1, delta_max: 1}\n"},
      {cpo::Scenario::soliton, "atom: {}\nmedium: {}\nnumerics: {z_end: 20}\n"},
      {cpo::Scenario::deflect, "atom: {}\nmedium: {}\nbeam: {}\n"},
      {cpo::Scenario::sweep, "atom: {}\nmedium: {}\nbeam: {}\nsweep: {a_values: [-1, 1], delta_values: [-10, 10]}\n"},
      {cpo::Scenario::wn_check, "atom: {}\nmedium: {}\nbeam: {}\n"},
  };
  std::size_t compared = 0;
  std::string mismatch;
  for (const auto& [scenario, text] : runs) {
    const auto cfg = cpo::parse_config(text, scenario);
    std::vector<std::map<std::string, std::string>> outputs;
    for (unsigned rep = 0; rep < 2; ++rep) {
      const fs::path dir = root / (std::string(cpo::to_string(scenario)) + "_" + std::to_string(rep));
      fs::remove_all(dir);
      const auto r = cpo::run_scenario(cfg, {dir, rep + 1});
      if (r.exit_code != 0) return {false, fmt("%s run exited %d: %s", std::string(cpo::to_string(scenario)).c_str(), r.exit_code, r.error.c_str())};
      outputs.push_back(csv_files(dir));
    }
    if (outputs[0].empty() || outputs[0] != outputs[1]) mismatch += " " + std::string(cpo::to_string(scenario));
    compared += outputs[0].size();
  }
  fs::remove_all(root);
  return {mismatch.empty(), fmt("%zu CSV files byte-identical across repeated runs (1 and 2 threads), "
                                "core and runner only%s%s", compared, mismatch.empty() ? "" : "; differs:", mismatch.c_str())};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 steady state vs long-time integration", criterion1},
      {"2 first order linearity and closed form", criterion2},
      {"3 population oscillation hole", criterion3},
      {"4 soliton stationarity", criterion4},
      {"5 deflection law", criterion5},
      {"6 direction table", criterion6},
      {"7 Wei-Norman", criterion7},
      {"8 determinism", criterion8},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
