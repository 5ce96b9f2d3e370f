#include "radialcone/solver.hpp"
#include "radialcone/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace radialcone {

struct WaveSolver::Workspace {
  std::vector<double> k1v, k2v, k3v, k4v, ustage;
  explicit Workspace(std::size_t n)
      : k1v(n), k2v(n), k3v(n), k4v(n), ustage(n) {}
};

WaveSolver::WaveSolver(RadialGrid grid, ModelParams params, NonlinearityProfile profile,
                       SolverConfig config, OriginClosure origin, BoundaryValues outer)
    : grid_(std::move(grid)), params_(params), profile_(std::move(profile)),
      config_(config), origin_(origin), outer_(std::move(outer)) {
  params_.validate();
  const int J = grid_.cells();
  inv_r2_.resize(static_cast<std::size_t>(J));
  inv_ralpha_.resize(static_cast<std::size_t>(J));
  coef_ur_.resize(static_cast<std::size_t>(J));
  for (int j = 0; j < J; ++j) {
    const double r = grid_.r(j);
    inv_r2_[static_cast<std::size_t>(j)] = 1.0 / (r * r);
    inv_ralpha_[static_cast<std::size_t>(j)] = std::pow(r, -params_.alpha);
    coef_ur_[static_cast<std::size_t>(j)] = (params_.n - 1) / r;
  }
}

void WaveSolver::acceleration(double t, const std::vector<double>& u,
                              std::vector<double>& acc, const Forcing* forcing) const {
  const int J = grid_.cells();
  const double h = grid_.h();
  const double inv_h2 = 1.0 / (h * h);
  const double inv_2h = 0.5 / h;
  const double half_nm1 = 0.5 * (params_.n - 1);
  const double ghost_in = origin_ == OriginClosure::odd ? -u[0] : u[0];
  const double ghost_out =
      outer_ ? outer_(t, grid_.outer_radius() + 0.5 * h) : -u[static_cast<std::size_t>(J - 1)];

  const auto& ffp = profile_.ff_prime;
  for (int j = 0; j < J; ++j) {
    const std::size_t i = static_cast<std::size_t>(j);
    const double um = j > 0 ? u[i - 1] : ghost_in;
    const double up = j < J - 1 ? u[i + 1] : ghost_out;
    const double urr = (up - 2.0 * u[i] + um) * inv_h2;
    const double ur = (up - um) * inv_2h;
    acc[i] = urr + coef_ur_[i] * ur - half_nm1 * std::sin(2.0 * u[i]) * inv_r2_[i] -
             ffp(u[i]) * inv_ralpha_[i];
  }
  if (forcing && *forcing) (*forcing)(t, grid_.radii(), acc);
}

std::vector<double> WaveSolver::spatial_operator(const FieldState& state) const {
  if (static_cast<int>(state.u.size()) != grid_.cells())
    throw Error("spatial_operator: state not sized to grid");
  std::vector<double> acc(state.u.size());
  acceleration(state.t, state.u, acc, nullptr);
  return acc;
}

double WaveSolver::stable_dt(const FieldState& state) const {
  const double h = grid_.h();
  const int J = grid_.cells();
  const double nm1 = params_.n - 1;
  double pot = 0.0;
  for (int j = 0; j < J; ++j) {
    const std::size_t i = static_cast<std::size_t>(j);
    const double w2 = nm1 * std::abs(std::cos(2.0 * state.u[i])) * inv_r2_[i] +
                      std::abs(profile_.ff_prime_deriv(state.u[i])) * inv_ralpha_[i];
    pot = std::max(pot, w2);
  }
  const double omega = std::sqrt(4.0 / (h * h) + pot);
  return std::min(config_.cfl * h, 2.5 / omega);
}

void WaveSolver::step_into(double t, const std::vector<double>& u, const std::vector<double>& v,
                           double dt, std::vector<double>& u_out, std::vector<double>& v_out,
                           Workspace& ws, const Forcing* forcing) const {
  const std::size_t n = u.size();
  const double half = 0.5 * dt;

  acceleration(t, u, ws.k1v, forcing);
  for (std::size_t i = 0; i < n; ++i) ws.ustage[i] = u[i] + half * v[i];
  acceleration(t + half, ws.ustage, ws.k2v, forcing);
  for (std::size_t i = 0; i < n; ++i) ws.ustage[i] = u[i] + half * v[i] + half * half * ws.k1v[i];
  acceleration(t + half, ws.ustage, ws.k3v, forcing);
  for (std::size_t i = 0; i < n; ++i) ws.ustage[i] = u[i] + dt * v[i] + dt * half * ws.k2v[i];
  acceleration(t + dt, ws.ustage, ws.k4v, forcing);

  // with k1u..k4u = v, v + dt/2 k1v, v + dt/2 k2v, v + dt k3v the u-update collapses
  const double sixth = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    u_out[i] = u[i] + dt * v[i] + dt * sixth * (ws.k1v[i] + ws.k2v[i] + ws.k3v[i]);
    v_out[i] = v[i] + sixth * (ws.k1v[i] + 2.0 * ws.k2v[i] + 2.0 * ws.k3v[i] + ws.k4v[i]);
  }
}

FieldState WaveSolver::step(const FieldState& state, double dt, const Forcing& forcing) const {
  if (dt > config_.cfl * grid_.h() * (1.0 + 1e-12))
    throw CflViolation("dt=" + std::to_string(dt) + " exceeds cfl*h=" +
                       std::to_string(config_.cfl * grid_.h()));
  if (static_cast<int>(state.u.size()) != grid_.cells())
    throw Error("step: state not sized to grid");
  FieldState out;
  out.t = state.t + dt;
  out.u.resize(state.u.size());
  out.v.resize(state.v.size());
  Workspace ws(state.u.size());
  step_into(state.t, state.u, state.v, dt, out.u, out.v, ws, forcing ? &forcing : nullptr);
  if (!out.is_finite()) throw NonFiniteError("step produced non-finite fields at t=" +
                                             std::to_string(out.t));
  return out;
}

double WaveSolver::global_energy(const FieldState& state) const {
  const int J = grid_.cells();
  const std::vector<double> ur = radial_derivative(state.u, grid_.h());
  const double half_nm1 = 0.5 * (params_.n - 1);
  double sum = 0.0;
  for (int j = 0; j < J; ++j) {
    const std::size_t i = static_cast<std::size_t>(j);
    const double fu = profile_.f(state.u[i]);
    const double ep = 0.5 * (state.v[i] * state.v[i] + ur[i] * ur[i]) +
                      half_nm1 * std::sin(state.u[i]) * std::sin(state.u[i]) * inv_r2_[i] +
                      0.5 * fu * fu * inv_ralpha_[i];
    sum += ep * std::pow(grid_.r(j), params_.n - 1);
  }
  return sum * grid_.h();
}

StepRecord WaveSolver::record(const FieldState& state, double apex) const {
  StepRecord rec;
  rec.t = state.t;
  rec.energy = global_energy(state);
  double sup = 0.0;
  for (double x : state.u) sup = std::max(sup, std::abs(x));
  rec.sup_u = sup;
  const double rc = apex - state.t;
  if (rc > 0.0 && rc < grid_.outer_radius()) {
    rec.cone_valid = true;
    rec.cone_r = rc;
    const int j = std::clamp(static_cast<int>(rc / grid_.h() - 0.5), 0, grid_.cells() - 2);
    const std::size_t i = static_cast<std::size_t>(j);
    const double lam = (rc - grid_.r(j)) / grid_.h();
    const std::vector<double> ur = radial_derivative(state.u, grid_.h());
    rec.cone_u = (1.0 - lam) * state.u[i] + lam * state.u[i + 1];
    rec.cone_v = (1.0 - lam) * state.v[i] + lam * state.v[i + 1];
    rec.cone_ur = (1.0 - lam) * ur[i] + lam * ur[i + 1];
  }
  return rec;
}

RunHistory WaveSolver::evolve(const FieldState& data, const Forcing& forcing,
                              std::optional<double> apex_opt) const {
  if (!(config_.cfl > 0.0 && config_.cfl <= 0.9))
    throw CflViolation("Courant factor must satisfy 0 < cfl <= 0.9, got " +
                       std::to_string(config_.cfl));
  if (config_.snapshot_stride < 1) throw ConfigError("snapshot_stride must be >= 1");
  if (!(config_.t_end > config_.t0)) throw ConfigError("t_end must exceed t0");
  if (static_cast<int>(data.u.size()) != grid_.cells())
    throw Error("evolve: data not sized to grid");

  double sup0 = 0.0;
  for (double x : data.u) sup0 = std::max(sup0, std::abs(x));
  // extrapolation through r_0, r_1 picks up an O(h^3 u''') term on smooth data
  const double origin_tol = 0.1 * grid_.h() * grid_.h() * std::max(1.0, sup0) + 1e-12;
  const double ov = origin_value(data);
  if (std::isfinite(ov) && std::abs(ov) > origin_tol)
    throw Error("initial data violates the origin invariant: reconstructed u(t,0)=" +
                std::to_string(ov));

  RunHistory hist;
  hist.grid = grid_;
  hist.params = params_;
  hist.profile_name = profile_.name;
  hist.apex = apex_opt.value_or(config_.t_end);

  const double threshold = config_.blowup_threshold.value_or(50.0 * sup0 + 10.0);
  const Forcing* fptr = forcing ? &forcing : nullptr;

  FieldState cur = data;
  cur.t = config_.t0;
  FieldState prev = cur;
  Workspace ws(cur.u.size());

  hist.series.push_back(record(cur, hist.apex));
  hist.slices.push_back(cur);
  const double e0 = hist.series.front().energy;
  const double jump_floor = 1e-9 * std::max(e0, std::numeric_limits<double>::min());

  long step_index = 0;
  bool failed = false;
  while (cur.t < config_.t_end - 1e-13 && !failed) {
    const double dt = std::min(stable_dt(cur), config_.t_end - cur.t);
    prev = cur;
    step_into(cur.t, prev.u, prev.v, dt, cur.u, cur.v, ws, fptr);
    cur.t = prev.t + dt;
    ++step_index;

    const StepRecord rec = record(cur, hist.apex);
    hist.series.push_back(rec);

    if (!cur.is_finite()) {
      hist.outcome = RunOutcome::non_finite;
      hist.outcome_note = "non-finite fields at step " + std::to_string(step_index);
      failed = true;
    } else if (rec.sup_u > threshold) {
      hist.outcome = RunOutcome::blow_up_suspected;
      hist.outcome_note = "sup|u|=" + std::to_string(rec.sup_u) + " exceeded threshold " +
                          std::to_string(threshold) + " at step " + std::to_string(step_index);
      failed = true;
    } else if (rec.energy > 1.1 * hist.series[hist.series.size() - 2].energy + jump_floor &&
               !forcing) {
      hist.outcome = RunOutcome::blow_up_suspected;
      hist.outcome_note = "energy jumped by more than 10% in one step at step " +
                          std::to_string(step_index);
      failed = true;
    }

    if (failed) {
      hist.slices.push_back(prev); // last good state
    } else if (step_index % config_.snapshot_stride == 0 ||
               cur.t >= config_.t_end - 1e-13) {
      hist.slices.push_back(cur);
    }
  }
  hist.steps = step_index;
  return hist;
}

FieldState make_bump(double amplitude, double center, double width, const RadialGrid& grid,
                     VelocityMode mode, double t0) {
  if (!(width > 0.0)) throw ConfigError("bump width must be positive");
  const double half_support = 4.0 * width;
  if (!(center - half_support > 0.0))
    throw Error("bump support reaches the origin: center - 4*width <= 0");
  if (!(center + half_support <= grid.outer_radius()))
    throw Error("bump support extends past R");

  FieldState s = zero_state(grid, t0);
  for (int j = 0; j < grid.cells(); ++j) {
    const double r = grid.r(j);
    const double q = (r - center) / (4.0 * width);
    if (std::abs(q) >= 1.0) continue;
    const std::size_t i = static_cast<std::size_t>(j);
    const double g = std::exp(-((r - center) / width) * ((r - center) / width));
    const double window = std::exp(-q * q / (1.0 - q * q));
    s.u[i] = amplitude * r * g * window;
    if (mode == VelocityMode::outgoing) {
      const double gp = -2.0 * (r - center) / (width * width) * g;
      const double one_m_q2 = 1.0 - q * q;
      const double wp = window * (-2.0 * q / (one_m_q2 * one_m_q2)) / (4.0 * width);
      const double u_r = amplitude * (g * window + r * gp * window + r * g * wp);
      s.v[i] = -u_r;
    }
  }
  return s;
}

std::vector<double> radial_derivative(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n);
  if (n < 5) throw Error("radial_derivative needs at least 5 points");
  const double c = 1.0 / (12.0 * h);
  for (std::size_t j = 2; j + 2 < n; ++j)
    d[j] = c * (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]);
  // one-sided 4th-order stencils at the edges
  d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  d[n - 2] = -c * (-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] + f[n - 5]);
  d[n - 1] = -c * (-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] -
                   3.0 * f[n - 5]);
  return d;
}

} // namespace radialcone
