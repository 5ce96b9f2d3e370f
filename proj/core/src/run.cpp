#include "radialcone/run.hpp"
#include "radialcone/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace radialcone {

namespace {

json lemma_points_json(const std::vector<LemmaBoundPoint>& pts) {
  json arr = json::array();
  for (const auto& p : pts)
    arr.push_back({{"scale", p.scale}, {"lhs", p.lhs}, {"rhs_shape", p.rhs_shape},
                   {"constant", p.constant}});
  return arr;
}

double finite_or(double x, double fallback) { return std::isfinite(x) ? x : fallback; }

} // namespace

json hypothesis_json(const HypothesisReport& rep) {
  json j;
  j["alpha_threshold"] = rep.alpha_threshold_value;
  j["alpha_ok"] = rep.alpha_ok;
  j["f_zero_ok"] = rep.f_zero_ok;
  j["f_prime_zero_ok"] = rep.f_prime_zero_ok;
  j["sign_condition_ok"] = rep.sign_condition_ok;
  j["sign_condition_sampled"] = true;
  if (rep.has_sign_witness) j["sign_witness"] = rep.sign_witness;
  j["i_divergence_ok"] = rep.i_divergence_ok;
  j["i_divergence_sampled"] = true;
  j["i_growth_ratio"] = rep.i_growth_ratio;
  j["exact_ok"] = rep.exact_ok();
  j["all_ok"] = rep.all_ok();
  return j;
}

RunArtifacts run_simulation(const RunConfig& config) {
  config.validate();
  RunArtifacts art;
  art.config = config;

  const NonlinearityProfile profile = make_profile(config.model.profile, config.model.exponent);
  const ModelParams params{config.model.n, config.model.alpha};
  const RadialGrid grid(config.grid.resolved_h(), config.grid.R);

  const double horizon = config.solver.t_end - config.solver.t0;
  double t_diag_max = config.diagnostics.dyadic_t0;
  for (double t : config.diagnostics.region_T) t_diag_max = std::max(t_diag_max, t);
  for (double t : config.diagnostics.lemma_scales) t_diag_max = std::max(t_diag_max, t);
  if (t_diag_max > horizon + 1e-12)
    throw ConfigError("diagnostic times reach past the run window (max " +
                      std::to_string(t_diag_max) + " > " + std::to_string(horizon) + ")");
  grid.require_cone_pad(t_diag_max);

  const HypothesisReport hyp = check_hypotheses(profile, params);

  FieldState data;
  if (config.data.family == "zero") {
    data = zero_state(grid, config.solver.t0);
  } else {
    const VelocityMode mode =
        config.data.v_mode == "outgoing" ? VelocityMode::outgoing : VelocityMode::zero;
    data = make_bump(config.data.amplitude, config.data.center, config.data.width, grid, mode,
                     config.solver.t0);
  }

  double sup0 = 0.0;
  for (double x : data.u) sup0 = std::max(sup0, std::abs(x));
  const double threshold = config.solver.blowup_threshold.value_or(50.0 * sup0 + 10.0);

  SolverConfig scfg;
  scfg.cfl = config.solver.cfl;
  scfg.t0 = config.solver.t0;
  scfg.t_end = config.solver.t_end;
  scfg.snapshot_stride = config.solver.snapshot_stride;
  scfg.blowup_threshold = threshold;
  WaveSolver solver(grid, params, profile, scfg);

  const double apex = config.diagnostics.apex.value_or(config.solver.t_end);
  art.history = solver.evolve(data, nullptr, apex);

  json& rep = art.report;
  rep["schema"] = "radialcone-report-v1";
  rep["config"] = json::parse(json(config.serialize()).dump()); // placeholder, replaced below
  rep["config"] = config.serialize();
  rep["hypotheses"] = hypothesis_json(hyp);

  json run;
  run["outcome"] = art.history.outcome == RunOutcome::completed ? "completed"
                   : art.history.outcome == RunOutcome::blow_up_suspected ? "blow_up_suspected"
                                                                          : "non_finite";
  run["note"] = art.history.outcome_note;
  run["steps"] = art.history.steps;
  run["apex"] = art.history.apex;
  run["blowup_threshold"] = threshold;
  run["initial_energy"] = art.history.series.front().energy;
  run["final_energy"] = art.history.series.back().energy;
  run["final_time"] = art.history.series.back().t;
  run["final_sup_u"] = art.history.series.back().sup_u;
  rep["run"] = std::move(run);

  if (art.history.outcome != RunOutcome::completed) return art;

  const Diagnostics diag(art.history, profile);

  // energy monotonicity ledger over the recorded cone window
  {
    double s_lo = 0.0;
    for (double t : diag.slice_times())
      if (t > 1e-12) { s_lo = t; break; }
    const EnergyLedger led = diag.energy_ledger(s_lo, t_diag_max);
    json j;
    j["times"] = led.times;
    j["energy"] = led.energy;
    j["flux"] = led.flux;
    j["residual"] = led.residual;
    j["worst_energy_decrease"] = led.worst_energy_decrease;
    const double e_top = led.energy.empty() ? 0.0 : led.energy.back();
    j["monotone_within_tol"] = led.worst_energy_decrease >= -1e-8 * std::max(e_top, 1e-300);
    rep["energy_ledger"] = std::move(j);
  }

  // per-region identity checks
  {
    json regions = json::array();
    for (std::size_t i = 0; i < config.diagnostics.region_S.size(); ++i) {
      const double S = config.diagnostics.region_S[i];
      const double T = config.diagnostics.region_T[i];
      json r;
      r["S"] = S;
      r["T"] = T;
      const double ES = diag.cone_energy(S);
      const double ET = diag.cone_energy(T);
      const double F = diag.flux(S, T);
      const double res = ET - ES - F;
      r["E_S"] = ES;
      r["E_T"] = ET;
      r["flux"] = F;
      r["energy_flux_residual"] = res;
      const double rel = ET > 0.0 ? std::abs(res) / ET : std::abs(res);
      r["energy_flux_residual_rel"] = rel;
      r["energy_flux_pass"] = rel <= config.diagnostics.energy_flux_rel_tol;

      const ResidualReport m1 = diag.multiplier_residual(Multiplier::energy(), {S, T});
      const ResidualReport m2 = diag.multiplier_residual(Multiplier::morawetz(params), {S, T});
      r["multiplier_energy_residual"] = m1.residual;
      r["multiplier_morawetz_residual"] = m2.residual;

      const EnergyIntLedger led = diag.energyint_decomposition(S, T);
      r["energyint"] = {{"lhs_volume_uffp", led.lhs_volume_uffp},
                        {"lhs_volume_f2", led.lhs_volume_f2},
                        {"lhs_surface_T", led.lhs_surface_T},
                        {"rhs_surface_S", led.rhs_surface_S},
                        {"rhs_volume_sin2", led.rhs_volume_sin2},
                        {"rhs_volume_usin2", led.rhs_volume_usin2},
                        {"rhs_cone", led.rhs_cone},
                        {"signed_sum", led.signed_sum()}};
      regions.push_back(std::move(r));
    }
    rep["regions"] = std::move(regions);
  }

  {
    const BogomolnyCheck bc = diag.bogomolny_check_all_slices();
    rep["bogomolny"] = {{"max_violation", bc.max_violation}, {"witness_r", bc.witness_r}};
  }

  {
    const LemmaBoundsReport lb = diag.lemma_bounds(config.diagnostics.lemma_scales);
    json j;
    j["surface"] = lemma_points_json(lb.surface);
    j["volume"] = lemma_points_json(lb.volume);
    j["slice_energy"] = lemma_points_json(lb.slice_energy);
    j["slice_uut"] = lemma_points_json(lb.slice_uut);
    j["growth_factors"] = {
        {"surface", finite_or(LemmaBoundsReport::growth_factor(lb.surface), -1.0)},
        {"volume", finite_or(LemmaBoundsReport::growth_factor(lb.volume), -1.0)},
        {"slice_energy", finite_or(LemmaBoundsReport::growth_factor(lb.slice_energy), -1.0)},
        {"slice_uut", finite_or(LemmaBoundsReport::growth_factor(lb.slice_uut), -1.0)}};
    rep["lemma_bounds"] = std::move(j);
  }

  {
    const std::vector<double> times =
        Diagnostics::dyadic_times(config.diagnostics.dyadic_t0, config.diagnostics.dyadic_count);
    json j;
    j["times"] = times;
    json tips = json::array(), sups = json::array(), fdec = json::array();
    for (double t : times) {
      tips.push_back(diag.tip_energy(t));
      sups.push_back(diag.sup_probe(t));
      fdec.push_back(diag.flux_decay(t));
    }
    j["tip_energy"] = std::move(tips);
    j["sup_probe"] = std::move(sups);
    j["flux_decay"] = std::move(fdec);
    rep["probes"] = std::move(j);
  }

  return art;
}

namespace {

void write_series(const std::string& path, const RunHistory& hist) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  long step = 0;
  for (const auto& rec : hist.series) {
    json line;
    line["step"] = step++;
    line["t"] = rec.t;
    line["energy"] = rec.energy;
    line["sup_u"] = rec.sup_u;
    if (rec.cone_valid) {
      line["cone_r"] = rec.cone_r;
      line["cone_u"] = rec.cone_u;
      line["cone_ut"] = rec.cone_v;
      line["cone_ur"] = rec.cone_ur;
    }
    out << line.dump() << "\n";
  }
}

void write_slices_csv(const std::string& path, const RunArtifacts& art) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  out << "t,r,u,ut,ur,e_plus,m\n";
  const RadialGrid& grid = art.history.grid;
  const NonlinearityProfile profile =
      make_profile(art.config.model.profile, art.config.model.exponent);
  char buf[200];
  for (const auto& slice : art.history.slices) {
    const DensitySlice d = compute_densities(slice, grid, art.history.params, profile);
    const std::vector<double> ur = radial_derivative(slice.u, grid.h());
    for (int j = 0; j < grid.cells(); ++j) {
      const std::size_t i = static_cast<std::size_t>(j);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", slice.t,
                    grid.r(j), slice.u[i], slice.v[i], ur[i], d.e_plus[i], d.m[i]);
      out << buf;
    }
  }
}

void write_summary(const std::string& path, const RunArtifacts& art) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  const json& r = art.report;
  out << "radialcone run summary\n";
  out << "profile " << art.config.model.profile << ", n=" << art.config.model.n
      << ", alpha=" << art.config.model.alpha << ", h=" << art.config.grid.resolved_h()
      << ", R=" << art.config.grid.R << "\n";
  out << "outcome: " << r["run"]["outcome"].get<std::string>();
  const std::string note = r["run"]["note"].get<std::string>();
  if (!note.empty()) out << " (" << note << ")";
  out << "\nsteps: " << r["run"]["steps"] << ", final t=" << r["run"]["final_time"] << "\n";
  out << "energy: initial " << r["run"]["initial_energy"] << ", final "
      << r["run"]["final_energy"] << "\n";
  if (r.contains("regions")) {
    for (const auto& reg : r["regions"]) {
      out << "region [" << reg["S"] << ", " << reg["T"]
          << "]: E(T)-E(S)-F = " << reg["energy_flux_residual"]
          << " (rel " << reg["energy_flux_residual_rel"] << ", pass "
          << (reg["energy_flux_pass"].get<bool>() ? "yes" : "no") << ")\n";
      out << "  multiplier residuals: energy " << reg["multiplier_energy_residual"]
          << ", morawetz " << reg["multiplier_morawetz_residual"] << ", energyint sum "
          << reg["energyint"]["signed_sum"] << "\n";
    }
  }
  if (r.contains("bogomolny"))
    out << "bogomolny max violation: " << r["bogomolny"]["max_violation"] << "\n";
  if (r.contains("lemma_bounds"))
    out << "lemma growth factors: surface " << r["lemma_bounds"]["growth_factors"]["surface"]
        << ", volume " << r["lemma_bounds"]["growth_factors"]["volume"] << ", slice_energy "
        << r["lemma_bounds"]["growth_factors"]["slice_energy"] << ", slice_uut "
        << r["lemma_bounds"]["growth_factors"]["slice_uut"] << "\n";
  if (r.contains("probes")) {
    out << "tip_energy probes:";
    for (const auto& v : r["probes"]["tip_energy"]) out << " " << v;
    out << "\nsup probes:";
    for (const auto& v : r["probes"]["sup_probe"]) out << " " << v;
    out << "\n";
  }
}

} // namespace

void write_artifacts(const std::string& dir, const RunArtifacts& art) {
  std::filesystem::create_directories(dir);
  if (art.config.output.write_series) write_series(dir + "/series.ndjson", art.history);
  if (art.config.output.write_slices) write_slices_csv(dir + "/slices.csv", art);
  {
    std::ofstream out(dir + "/report.json");
    if (!out) throw Error("cannot open " + dir + "/report.json");
    out << art.report.dump(2) << "\n";
  }
  write_summary(dir + "/summary.txt", art);
}

} // namespace radialcone
