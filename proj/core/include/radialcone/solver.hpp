#ifndef RADIALCONE_SOLVER_HPP
#define RADIALCONE_SOLVER_HPP

#include "radialcone/grid.hpp"
#include "radialcone/nonlinearity.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace radialcone {

/// Origin closure for the ghost cell at r = -h/2. The odd extension enforces
/// u(t,0) = 0 to the scheme's order; 'even' is a deliberately broken variant
/// kept as a regression hook for the convergence study.
enum class OriginClosure { odd, even };

/// Exact boundary values u(t, r) for the outer ghost cell. When absent the
/// outer closure is homogeneous Dirichlet at r = R. The domain is sized so
/// that the outer boundary never influences cone diagnostics either way.
using BoundaryValues = std::function<double(double t, double r)>;

/// Adds the forcing F(t, r_j) to the acceleration array (manufactured-solution mode).
using Forcing = std::function<void(double t, const std::vector<double>& radii,
                                   std::vector<double>& acc)>;

struct SolverConfig {
  double cfl = 0.5;        // Courant factor, 0 < cfl <= 0.9
  double t0 = 0.0;
  double t_end = 1.0;
  int snapshot_stride = 8; // steps between retained slices
  std::optional<double> blowup_threshold; // default: 50 sup|u0| + 10
};

enum class RunOutcome { completed, blow_up_suspected, non_finite };

/// Per-step scalars. The cone sample is the slice linearly interpolated onto
/// r = apex - t (the lateral cone boundary in lab time), recorded every step
/// because strided snapshots cannot resolve the flux integrals.
struct StepRecord {
  double t = 0.0;
  double energy = 0.0; // integral of e+ r^{n-1} dr over [0, R]
  double sup_u = 0.0;
  bool cone_valid = false;
  double cone_r = 0.0;
  double cone_u = 0.0;
  double cone_v = 0.0;  // lab-time u_t at the cone point
  double cone_ur = 0.0;
};

struct RunHistory {
  RadialGrid grid{1.0, 8.0};
  ModelParams params;
  std::string profile_name;
  double apex = 0.0; // lab time of the paper-time origin (t_paper = apex - t_lab)
  RunOutcome outcome = RunOutcome::completed;
  std::string outcome_note;
  long steps = 0;
  std::vector<StepRecord> series;  // covers every step, including the initial state
  std::vector<FieldState> slices;  // initial, every snapshot_stride steps, final/last-good
};

/// Method-of-lines solver for
///   u_tt = u_rr + (n-1)/r u_r - (n-1)/2 sin(2u)/r^2 - f(u)f'(u)/r^alpha + F
/// on the staggered grid, with classical 4-stage Runge-Kutta in time.
class WaveSolver {
public:
  WaveSolver(RadialGrid grid, ModelParams params, NonlinearityProfile profile,
             SolverConfig config = {}, OriginClosure origin = OriginClosure::odd,
             BoundaryValues outer = nullptr);

  const RadialGrid& grid() const { return grid_; }
  const SolverConfig& config() const { return config_; }

  /// L[u] so that u_tt = L[u]: centered second-order differences in the
  /// interior, odd extension across r = 0, configured outer closure.
  std::vector<double> spatial_operator(const FieldState& state) const;

  /// Largest stable step: the Courant bound cfl*h, additionally capped by the
  /// oscillation frequency of the zeroth-order terms. The cap only binds for
  /// profiles with f'(0) != 0, where f f'(u)/r^alpha is stiff near the axis
  /// (frequency ~ r^(-alpha/2) at r = h/2, beyond any dt ~ h bound).
  double stable_dt(const FieldState& state) const;

  /// One RK4 step. Throws CflViolation when dt > cfl*h and NonFiniteError
  /// when the result contains NaN/inf.
  FieldState step(const FieldState& state, double dt, const Forcing& forcing = nullptr) const;

  /// Steps from data.t to t_end recording per-step scalars and strided slices.
  /// Blow-up (sup|u| past the threshold, an energy jump > 10% in one step, or
  /// a non-finite field) is reported through the outcome, never "handled";
  /// the history keeps the last good state. apex defaults to t_end.
  RunHistory evolve(const FieldState& data, const Forcing& forcing = nullptr,
                    std::optional<double> apex = std::nullopt) const;

  /// Global energy integral of e+ r^{n-1} dr over the whole grid (midpoint rule).
  double global_energy(const FieldState& state) const;

private:
  struct Workspace;
  void acceleration(double t, const std::vector<double>& u, std::vector<double>& acc,
                    const Forcing* forcing) const;
  void step_into(double t, const std::vector<double>& u, const std::vector<double>& v,
                 double dt, std::vector<double>& u_out, std::vector<double>& v_out,
                 Workspace& ws, const Forcing* forcing) const;
  StepRecord record(const FieldState& state, double apex) const;

  RadialGrid grid_;
  ModelParams params_;
  NonlinearityProfile profile_;
  SolverConfig config_;
  OriginClosure origin_;
  BoundaryValues outer_;
  std::vector<double> inv_r2_, inv_ralpha_, coef_ur_;
};

enum class VelocityMode { zero, outgoing };

/// Smooth compactly supported data u = a r exp(-((r-c)/w)^2) times a C-inf
/// window vanishing outside |r-c| < 4w. v is zero or outgoing (-u_r).
/// The support must stay inside (0, R).
FieldState make_bump(double amplitude, double center, double width, const RadialGrid& grid,
                     VelocityMode mode = VelocityMode::zero, double t0 = 0.0);

/// 4th-order first derivative on cell centers, one-sided at both edges.
std::vector<double> radial_derivative(const std::vector<double>& values, double h);

} // namespace radialcone

#endif
