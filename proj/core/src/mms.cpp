#include "radialcone/mms.hpp"
#include "radialcone/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>

namespace radialcone {

ManufacturedCase default_case(const ModelParams& params, double amplitude, double omega) {
  params.validate();
  ManufacturedCase mc;
  mc.name = "bump_cosine";
  mc.params = params;
  mc.separable = true;
  mc.amplitude = amplitude;
  mc.omega = omega;
  const double A = amplitude, w = omega;
  mc.u = [A, w](double t, double r) { return A * r * std::exp(-r * r) * std::cos(w * t); };
  mc.u_t = [A, w](double t, double r) { return -A * w * r * std::exp(-r * r) * std::sin(w * t); };
  mc.u_tt = [A, w](double t, double r) {
    return -A * w * w * r * std::exp(-r * r) * std::cos(w * t);
  };
  mc.u_r = [A, w](double t, double r) {
    return A * std::exp(-r * r) * (1.0 - 2.0 * r * r) * std::cos(w * t);
  };
  mc.u_rr = [A, w](double t, double r) {
    return A * std::exp(-r * r) * (4.0 * r * r * r - 6.0 * r) * std::cos(w * t);
  };
  return mc;
}

double forcing_value(const ManufacturedCase& mc, const NonlinearityProfile& profile, double t,
                     double r) {
  if (!(r > 0.0)) throw Error("forcing_value: r must be positive");
  const int n = mc.params.n;
  const double us = mc.u(t, r);
  return mc.u_tt(t, r) - mc.u_rr(t, r) - (n - 1) / r * mc.u_r(t, r) +
         0.5 * (n - 1) * std::sin(2.0 * us) / (r * r) +
         profile.ff_prime(us) * std::pow(r, -mc.params.alpha);
}

namespace {

/// Radial factors of the separable default case, rebuilt when the grid changes.
struct SeparableCache {
  const std::vector<double>* key = nullptr;
  std::vector<double> rho, rho_p, rho_pp, coef_ur, inv_r2, inv_ralpha;

  void rebuild(const std::vector<double>& radii, const ModelParams& params) {
    key = &radii;
    const std::size_t J = radii.size();
    rho.resize(J); rho_p.resize(J); rho_pp.resize(J);
    coef_ur.resize(J); inv_r2.resize(J); inv_ralpha.resize(J);
    for (std::size_t j = 0; j < J; ++j) {
      const double r = radii[j];
      const double e = std::exp(-r * r);
      rho[j] = r * e;
      rho_p[j] = e * (1.0 - 2.0 * r * r);
      rho_pp[j] = e * (4.0 * r * r * r - 6.0 * r);
      coef_ur[j] = (params.n - 1) / r;
      inv_r2[j] = 1.0 / (r * r);
      inv_ralpha[j] = std::pow(r, -params.alpha);
    }
  }
};

} // namespace

Forcing make_forcing(const ManufacturedCase& mc, const NonlinearityProfile& profile) {
  if (mc.separable) {
    auto cache = std::make_shared<SeparableCache>();
    const double A = mc.amplitude, w = mc.omega;
    const ModelParams params = mc.params;
    const auto ffp = profile.ff_prime;
    const double half_nm1 = 0.5 * (params.n - 1);
    return [cache, A, w, params, ffp, half_nm1](double t, const std::vector<double>& radii,
                                                std::vector<double>& acc) {
      if (cache->key != &radii) cache->rebuild(radii, params);
      const double c = std::cos(w * t);
      const double Ac = A * c;
      for (std::size_t j = 0; j < radii.size(); ++j) {
        const double us = Ac * cache->rho[j];
        acc[j] += -w * w * us - Ac * cache->rho_pp[j] - cache->coef_ur[j] * Ac * cache->rho_p[j] +
                  half_nm1 * std::sin(2.0 * us) * cache->inv_r2[j] +
                  ffp(us) * cache->inv_ralpha[j];
      }
    };
  }
  const ManufacturedCase copy = mc;
  const NonlinearityProfile prof = profile;
  return [copy, prof](double t, const std::vector<double>& radii, std::vector<double>& acc) {
    for (std::size_t j = 0; j < radii.size(); ++j)
      acc[j] += forcing_value(copy, prof, t, radii[j]);
  };
}

FieldState sample_case(const ManufacturedCase& mc, const RadialGrid& grid, double t) {
  FieldState s = zero_state(grid, t);
  for (int j = 0; j < grid.cells(); ++j) {
    const double r = grid.r(j);
    s.u[static_cast<std::size_t>(j)] = mc.u(t, r);
    s.v[static_cast<std::size_t>(j)] = mc.u_t(t, r);
  }
  return s;
}

namespace {

LevelResult run_level(const ManufacturedCase& mc, const NonlinearityProfile& profile,
                      const StudyConfig& cfg, double h) {
  RadialGrid grid(h, cfg.R);
  SolverConfig scfg;
  scfg.cfl = cfg.cfl;
  scfg.t0 = cfg.t0;
  scfg.t_end = cfg.t_end;
  scfg.snapshot_stride = std::numeric_limits<int>::max();
  const BoundaryValues outer = [mc](double t, double r) { return mc.u(t, r); };
  WaveSolver solver(grid, mc.params, profile, scfg, cfg.origin, outer);
  const Forcing forcing = make_forcing(mc, profile);
  const RunHistory hist = solver.evolve(sample_case(mc, grid, cfg.t0), forcing);
  if (hist.outcome != RunOutcome::completed)
    throw Error("convergence level h=" + std::to_string(h) + " failed: " + hist.outcome_note);

  const FieldState& fin = hist.slices.back();
  const FieldState ref = sample_case(mc, grid, fin.t);
  std::vector<double> du(fin.u.size());
  for (std::size_t i = 0; i < du.size(); ++i) du[i] = fin.u[i] - ref.u[i];
  const std::vector<double> dur = radial_derivative(du, h);

  LevelResult lr;
  lr.h = h;
  lr.steps = hist.steps;
  const double r_interior = cfg.R - (cfg.t_end - cfg.t0) - 4.0 * h;
  double e2 = 0.0;
  for (int j = 0; j < grid.cells(); ++j) {
    const std::size_t i = static_cast<std::size_t>(j);
    const double err = std::abs(du[i]);
    lr.err_max = std::max(lr.err_max, err);
    if (grid.r(j) <= r_interior) lr.err_max_interior = std::max(lr.err_max_interior, err);
    const double dv = fin.v[i] - ref.v[i];
    e2 += 0.5 * (dv * dv + dur[i] * dur[i]) * std::pow(grid.r(j), mc.params.n - 1);
  }
  lr.err_energy = std::sqrt(e2 * h);
  return lr;
}

} // namespace

StudyResult convergence_study(const ManufacturedCase& mc, const NonlinearityProfile& profile,
                              const StudyConfig& cfg) {
  if (cfg.h_levels.size() < 3)
    throw ConfigError("convergence study needs at least 3 grid levels");
  for (std::size_t k = 0; k + 1 < cfg.h_levels.size(); ++k) {
    if (std::abs(cfg.h_levels[k + 1] - 0.5 * cfg.h_levels[k]) > 1e-9 * cfg.h_levels[k])
      throw ConfigError("convergence study levels must halve h");
  }

  StudyResult out;
  out.levels.resize(cfg.h_levels.size());
  unsigned jobs = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(cfg.h_levels.size()));

  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  for (unsigned w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= cfg.h_levels.size()) return;
        try {
          out.levels[k] = run_level(mc, profile, cfg, cfg.h_levels[k]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  out.exact = true;
  for (const auto& lv : out.levels)
    if (lv.err_max > 1e-14) out.exact = false;

  auto orders = [&](auto pick) {
    std::vector<double> o;
    for (std::size_t k = 0; k + 1 < out.levels.size(); ++k) {
      const double a = pick(out.levels[k]), b = pick(out.levels[k + 1]);
      o.push_back(out.exact ? std::numeric_limits<double>::quiet_NaN() : std::log2(a / b));
    }
    return o;
  };
  out.order_max = orders([](const LevelResult& l) { return l.err_max; });
  out.order_interior = orders([](const LevelResult& l) { return l.err_max_interior; });
  out.order_energy = orders([](const LevelResult& l) { return l.err_energy; });
  return out;
}

} // namespace radialcone
