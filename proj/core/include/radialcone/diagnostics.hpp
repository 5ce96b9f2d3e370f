#ifndef RADIALCONE_DIAGNOSTICS_HPP
#define RADIALCONE_DIAGNOSTICS_HPP

#include "radialcone/grid.hpp"
#include "radialcone/nonlinearity.hpp"
#include "radialcone/solver.hpp"

#include <functional>
#include <string>
#include <vector>

namespace radialcone {

/// Truncated cone K(S,T) = {0 <= r <= t, S <= t <= T} in paper time.
struct ConeRegion {
  double S = 0.0;
  double T = 0.0;
};

/// Energy density e+, its signed counterpart e-, and the momentum density m
/// on one slice:
///   e(+/-) = (u_t^2 + u_r^2)/2 +/- (n-1)/2 sin^2(u)/r^2 +/- f^2(u)/(2 r^alpha)
///   m      = u_t u_r
struct DensitySlice {
  std::vector<double> e_plus, e_minus, m;
};

DensitySlice compute_densities(const FieldState& state, const RadialGrid& grid,
                               const ModelParams& params, const NonlinearityProfile& profile);

/// Cone energy E(T) = integral of e+ r^{n-1} dr over [0, T] on the given slice.
double cone_energy(const FieldState& state, double T, const RadialGrid& grid,
                   const ModelParams& params, const NonlinearityProfile& profile);

/// Midpoint-rule integral of node values over [0, min(upto, R)]; the clipped
/// end cell uses linear interpolation of the integrand.
double integrate_radial(const std::vector<double>& values, const RadialGrid& grid, double upto);

/// Cone energies at the retained slices of [S, T] plus the flux accumulated
/// from the first of them. Residuals discretize E(T) - E(S) = F(S,T).
struct EnergyLedger {
  std::vector<double> times;   // paper times, ascending
  std::vector<double> energy;  // E at each time
  std::vector<double> flux;    // F(times[0], times[k])
  std::vector<double> residual; // E_k - E_0 - flux_k
  double worst_energy_decrease = 0.0; // most negative consecutive E difference (0 if monotone)
};

/// Sharp Bogomolny line: max over grid radii of
///   |I(u(r))| - r^{(alpha-2(n-1))/2} (int_0^r f^2/s^alpha s^{n-1} ds)^{1/2}
///                                    (int_0^r u_r^2 s^{n-1} ds)^{1/2}
/// Nonpositive up to discretization for any slice with u(t,0) = 0.
struct BogomolnyCheck {
  double max_violation = 0.0;
  double witness_r = 0.0;
};

/// Multiplier triple (a, b, c) as smooth callables of paper (t, r).
/// Partial derivatives may be supplied; absent ones are finite-differenced.
struct Multiplier {
  std::string description;
  std::function<double(double, double)> a, b, c;
  std::function<double(double, double)> a_t, a_r, b_t, b_r, c_t, c_r;

  static Multiplier energy();                          // (1, 0, 0)
  static Multiplier morawetz(const ModelParams& params); // (t, r, (n-1)/2)
};

struct ResidualReport {
  std::string multiplier;
  ConeRegion region;
  double residual = 0.0;
  double h = 0.0;
  int slices_used = 0;
};

/// Every named integral of the
///   integrated (t, r, (n-1)/2) identity over K(S,T), reported separately so
/// the individual bounds are checkable. signed_sum() discretizes the identity
/// and vanishes to discretization order.
/// The u f f' volume coefficient is (n-1)/2 (from the differential identity
/// with c = (n-1)/2); lhs/rhs refer to the sides of the integrated identity.
struct EnergyIntLedger {
  double lhs_volume_uffp = 0.0; //  (n-1)/2 u f'(u) f(u) / r^alpha  over K
  double lhs_volume_f2 = 0.0;   //  (alpha-(n+1)) f^2/(2 r^alpha)   over K
  double lhs_surface_T = 0.0;   //  T e+ + r u_t u_r + (n-1)/2 u u_t  on Sigma_T
  double rhs_surface_S = 0.0;   //  same integrand on Sigma_S
  double rhs_volume_sin2 = 0.0; //  (n-1)^2/2 sin^2 u / r^2          over K
  double rhs_volume_usin2 = 0.0;// -(n-1)^2/4 u sin(2u) / r^2        over K (signed as printed)
  double rhs_cone = 0.0;        //  lateral boundary term on C(S,T)

  double signed_sum() const {
    return lhs_volume_uffp + lhs_volume_f2 + lhs_surface_T - rhs_surface_S - rhs_volume_sin2 -
           rhs_volume_usin2 - rhs_cone;
  }
};

struct LemmaBoundPoint {
  double scale = 0.0;
  double lhs = 0.0;
  double rhs_shape = 0.0;
  double constant = 0.0; // lhs / rhs_shape
};

/// Scale-by-scale (LHS, RHS-shape) pairs for the surface, volume and
/// time-slice bounds. The hidden constants are fitted, not asserted a priori;
/// boundedness means no growth as the scale shrinks.
struct LemmaBoundsReport {
  std::vector<LemmaBoundPoint> surface;      // vs T F(T) + T^{n/2} F(T)^{1/2}
  std::vector<LemmaBoundPoint> volume;       // vs T^{alpha/2} (n=2) or T^{n-1} (n>=3)
  std::vector<LemmaBoundPoint> slice_energy; // S e+ + r|u_t u_r| vs S E(S)
  std::vector<LemmaBoundPoint> slice_uut;    // |u u_t| vs S^{(alpha+2)/4} E(S) or S^{n/2} E(S)^{1/2}

  /// max_k constant_k / constant at the coarsest scale (points ordered coarse
  /// to fine). A growth trend as the cone shrinks signals concentration.
  static double growth_factor(const std::vector<LemmaBoundPoint>& points);
};

/// Read-only diagnostics over one RunHistory. Works in paper time throughout:
/// lab time tau maps to t = apex - tau and u_t flips sign, so the apex of the
/// cone sits at the end of the lab run. Every method is a pure function of
/// the history; recomputation is bit-identical.
class Diagnostics {
public:
  Diagnostics(const RunHistory& history, const NonlinearityProfile& profile);

  double apex() const { return apex_; }
  const std::vector<double>& slice_times() const { return slice_t_; } // paper, ascending
  double min_sample_time() const; // earliest paper time with a cone sample

  /// Paper-time slice at t (v already reflected); linear interpolation in time
  /// between retained slices when t is not a slice time. Throws RegionError
  /// outside the recorded window.
  FieldState slice_at(double t_paper) const;

  DensitySlice densities(const FieldState& paper_state) const;
  double cone_energy(double T) const;

  /// F(S,T) = integral over the lateral cone boundary of (e+ + m)(t,t) t^{n-1} dt,
  /// from the per-step samples. The 1/sqrt(2) prefactor cancels against the
  /// sqrt(2) dt line element of C(S,T). Nonnegative by construction.
  double flux(double S, double T) const;
  double energy_flux_residual(double S, double T) const; // E(T) - E(S) - F(S,T)
  double flux_decay(double T) const;                     // F(t_min, T), probing F(T) -> 0
  EnergyLedger energy_ledger(double S, double T) const;

  BogomolnyCheck bogomolny_check(const FieldState& paper_state) const;
  BogomolnyCheck bogomolny_check_all_slices() const;

  /// Integral over K(region) of [d_t P - d_r Q - RHS] dr dt for the multiplier
  /// identity, with discrete time differences across retained slices and
  /// 4th-order radial differences. Shrinks at the scheme's order on smooth runs.
  ResidualReport multiplier_residual(const Multiplier& mult, ConeRegion region) const;

  EnergyIntLedger energyint_decomposition(double S, double T) const;
  LemmaBoundsReport lemma_bounds(const std::vector<double>& scales_desc) const;

  /// Tip-energy integrand, verbatim from the limit statement (no (n-1)/2
  /// weights): (1 - r/t)(u_t - u_r)^2 + (u_t + u_r)^2 + sin^2 u/r^2 + f^2/r^alpha.
  double tip_energy(double T) const;

  /// sup |u| over retained slices and grid points inside K(0, T).
  double sup_probe(double T) const;

  static std::vector<double> dyadic_times(double t0, int count); // t0, t0/2, ...

private:
  double surface_integral(double S, double T, bool abs_u_term) const;
  std::vector<double> paper_P(const Multiplier& m, std::size_t k) const;
  std::vector<double> paper_Q(const Multiplier& m, std::size_t k) const;

  RadialGrid grid_;
  ModelParams params_;
  NonlinearityProfile profile_;
  double apex_ = 0.0;
  std::vector<double> slice_t_;    // ascending paper times
  std::vector<FieldState> slices_; // paper-time states (v negated)
  // per-step cone-boundary samples, ascending paper time; r = t on the cone
  std::vector<double> samp_t_, samp_epm_, samp_empm_, samp_usum_;
};

} // namespace radialcone

#endif
