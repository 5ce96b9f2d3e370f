#include "radialcone/diagnostics.hpp"
#include "radialcone/errors.hpp"
#include "radialcone/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace radialcone {

namespace {

double pow_int_or_real(double r, double p) { return std::pow(r, p); }

/// Derivative weight of a 3-point Lagrange interpolant at 'at'.
void deriv3_weights(double t0, double t1, double t2, double at, double w[3]) {
  w[0] = ((at - t1) + (at - t2)) / ((t0 - t1) * (t0 - t2));
  w[1] = ((at - t0) + (at - t2)) / ((t1 - t0) * (t1 - t2));
  w[2] = ((at - t0) + (at - t1)) / ((t2 - t0) * (t2 - t1));
}

std::function<double(double, double)> partial_or_fd(
    const std::function<double(double, double)>& supplied,
    const std::function<double(double, double)>& base, bool wrt_t) {
  if (supplied) return supplied;
  return [base, wrt_t](double t, double r) {
    const double d = 1e-5 * (1.0 + std::abs(t) + std::abs(r));
    return wrt_t ? (base(t + d, r) - base(t - d, r)) / (2.0 * d)
                 : (base(t, r + d) - base(t, r - d)) / (2.0 * d);
  };
}

} // namespace

DensitySlice compute_densities(const FieldState& state, const RadialGrid& grid,
                               const ModelParams& params, const NonlinearityProfile& profile) {
  const int J = grid.cells();
  const std::vector<double> ur = radial_derivative(state.u, grid.h());
  DensitySlice d;
  d.e_plus.resize(static_cast<std::size_t>(J));
  d.e_minus.resize(static_cast<std::size_t>(J));
  d.m.resize(static_cast<std::size_t>(J));
  const double half_nm1 = 0.5 * (params.n - 1);
  for (int j = 0; j < J; ++j) {
    const std::size_t i = static_cast<std::size_t>(j);
    const double r = grid.r(j);
    const double s = std::sin(state.u[i]);
    const double fu = profile.f(state.u[i]);
    const double kin = 0.5 * (state.v[i] * state.v[i] + ur[i] * ur[i]);
    const double pot = half_nm1 * s * s / (r * r) +
                       0.5 * fu * fu * pow_int_or_real(r, -params.alpha);
    d.e_plus[i] = kin + pot;
    d.e_minus[i] = kin - pot;
    d.m[i] = state.v[i] * ur[i];
  }
  return d;
}

double integrate_radial(const std::vector<double>& values, const RadialGrid& grid, double upto) {
  const double h = grid.h();
  const double hi = std::min(upto, grid.outer_radius());
  if (!(hi > 0.0)) return 0.0;
  const int full = std::min(static_cast<int>(std::floor(hi / h + 1e-12)), grid.cells());
  double s = 0.0;
  for (int j = 0; j < full; ++j) s += values[static_cast<std::size_t>(j)];
  s *= h;
  const double w = hi - full * h;
  if (w > 1e-14 && full < grid.cells()) {
    // midpoint of the clipped cell, integrand linearly interpolated
    const double mid = full * h + 0.5 * w;
    const int j = std::clamp(static_cast<int>(mid / h - 0.5), 0, grid.cells() - 2);
    const double lam = (mid - grid.r(j)) / h;
    s += w * ((1.0 - lam) * values[static_cast<std::size_t>(j)] +
              lam * values[static_cast<std::size_t>(j) + 1]);
  }
  return s;
}

double cone_energy(const FieldState& state, double T, const RadialGrid& grid,
                   const ModelParams& params, const NonlinearityProfile& profile) {
  if (T > grid.outer_radius() + 1e-12) throw RegionError("cone_energy: T beyond the grid");
  const DensitySlice d = compute_densities(state, grid, params, profile);
  std::vector<double> g(d.e_plus.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = d.e_plus[i] * pow_int_or_real(grid.r(static_cast<int>(i)), params.n - 1);
  return integrate_radial(g, grid, T);
}

Multiplier Multiplier::energy() {
  Multiplier m;
  m.description = "(1,0,0)";
  auto one = [](double, double) { return 1.0; };
  auto zero = [](double, double) { return 0.0; };
  m.a = one;
  m.b = zero;
  m.c = zero;
  m.a_t = m.a_r = m.b_t = m.b_r = m.c_t = m.c_r = zero;
  return m;
}

Multiplier Multiplier::morawetz(const ModelParams& params) {
  Multiplier m;
  m.description = "(t,r,(n-1)/2)";
  const double c_val = 0.5 * (params.n - 1);
  auto zero = [](double, double) { return 0.0; };
  auto one = [](double, double) { return 1.0; };
  m.a = [](double t, double) { return t; };
  m.b = [](double, double r) { return r; };
  m.c = [c_val](double, double) { return c_val; };
  m.a_t = one;
  m.b_r = one;
  m.a_r = m.b_t = m.c_t = m.c_r = zero;
  return m;
}

double LemmaBoundsReport::growth_factor(const std::vector<LemmaBoundPoint>& points) {
  if (points.empty()) return 1.0;
  const double c0 = points.front().constant;
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, p.constant);
  if (c0 <= 1e-300) return worst <= 1e-300 ? 1.0 : std::numeric_limits<double>::infinity();
  return worst / c0;
}

Diagnostics::Diagnostics(const RunHistory& history, const NonlinearityProfile& profile)
    : grid_(history.grid), params_(history.params), profile_(profile), apex_(history.apex) {
  // reflect to paper time: t = apex - tau, u_t -> -u_t
  slices_.reserve(history.slices.size());
  for (auto it = history.slices.rbegin(); it != history.slices.rend(); ++it) {
    FieldState s = *it;
    s.t = apex_ - it->t;
    for (double& x : s.v) x = -x;
    slices_.push_back(std::move(s));
  }
  // lab order may contain a duplicated final slice; drop non-increasing times
  std::vector<FieldState> clean;
  for (auto& s : slices_) {
    if (clean.empty() || s.t > clean.back().t + 1e-13) clean.push_back(std::move(s));
  }
  slices_ = std::move(clean);
  slice_t_.reserve(slices_.size());
  for (const auto& s : slices_) slice_t_.push_back(s.t);

  const double half_nm1 = 0.5 * (params_.n - 1);
  for (auto it = history.series.rbegin(); it != history.series.rend(); ++it) {
    if (!it->cone_valid) continue;
    const double t = apex_ - it->t; // = cone radius
    if (!(t > 0.0)) continue;
    const double ut = -it->cone_v;
    const double usum = it->cone_u * (ut + it->cone_ur);
    const double su = std::sin(it->cone_u);
    const double fu = profile_.f(it->cone_u);
    const double pot = half_nm1 * su * su / (t * t) +
                       0.5 * fu * fu * pow_int_or_real(t, -params_.alpha);
    const double out2 = 0.5 * (ut + it->cone_ur) * (ut + it->cone_ur);
    if (!samp_t_.empty() && t <= samp_t_.back() + 1e-15) continue;
    samp_t_.push_back(t);
    samp_epm_.push_back(out2 + pot);
    samp_empm_.push_back(out2 - pot);
    samp_usum_.push_back(usum);
  }
}

double Diagnostics::min_sample_time() const {
  if (samp_t_.empty()) throw RegionError("no cone-boundary samples recorded");
  return samp_t_.front();
}

FieldState Diagnostics::slice_at(double t) const {
  if (slice_t_.empty()) throw RegionError("no retained slices");
  if (t < slice_t_.front() - 1e-9 || t > slice_t_.back() + 1e-9)
    throw RegionError("slice_at: paper time " + std::to_string(t) + " outside [" +
                      std::to_string(slice_t_.front()) + ", " + std::to_string(slice_t_.back()) +
                      "]");
  const auto it = std::lower_bound(slice_t_.begin(), slice_t_.end(), t - 1e-9);
  const std::size_t k = static_cast<std::size_t>(it - slice_t_.begin());
  if (k < slice_t_.size() && std::abs(slice_t_[k] - t) <= 1e-9) return slices_[k];
  // linear interpolation between bracketing slices
  const std::size_t k1 = std::min(k, slice_t_.size() - 1);
  const std::size_t k0 = k1 - 1;
  const double lam = (t - slice_t_[k0]) / (slice_t_[k1] - slice_t_[k0]);
  FieldState s = slices_[k0];
  s.t = t;
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    s.u[i] = (1.0 - lam) * slices_[k0].u[i] + lam * slices_[k1].u[i];
    s.v[i] = (1.0 - lam) * slices_[k0].v[i] + lam * slices_[k1].v[i];
  }
  return s;
}

DensitySlice Diagnostics::densities(const FieldState& paper_state) const {
  return compute_densities(paper_state, grid_, params_, profile_);
}

double Diagnostics::cone_energy(double T) const {
  return radialcone::cone_energy(slice_at(T), T, grid_, params_, profile_);
}

double Diagnostics::flux(double S, double T) const {
  if (!(S <= T)) throw RegionError("flux: need S <= T");
  if (samp_t_.empty()) throw RegionError("flux: no cone-boundary samples");
  if (S < samp_t_.front() - 1e-9 || T > samp_t_.back() + 1e-9)
    throw RegionError("flux: [S,T] outside the recorded window");
  std::vector<double> integrand(samp_t_.size());
  const double nm1 = params_.n - 1;
  for (std::size_t i = 0; i < samp_t_.size(); ++i)
    integrand[i] = samp_epm_[i] * pow_int_or_real(samp_t_[i], nm1);
  return trapezoid_clipped(samp_t_, integrand, S, T);
}

double Diagnostics::energy_flux_residual(double S, double T) const {
  return cone_energy(T) - cone_energy(S) - flux(S, T);
}

double Diagnostics::flux_decay(double T) const { return flux(min_sample_time(), T); }

EnergyLedger Diagnostics::energy_ledger(double S, double T) const {
  EnergyLedger led;
  for (std::size_t k = 0; k < slice_t_.size(); ++k) {
    const double t = slice_t_[k];
    if (t < S - 1e-9 || t > T + 1e-9) continue;
    led.times.push_back(t);
    led.energy.push_back(radialcone::cone_energy(slices_[k], t, grid_, params_, profile_));
  }
  if (led.times.empty()) throw RegionError("energy_ledger: no slices in [S,T]");
  led.flux.resize(led.times.size());
  led.residual.resize(led.times.size());
  for (std::size_t k = 0; k < led.times.size(); ++k) {
    led.flux[k] = flux(led.times.front(), led.times[k]);
    led.residual[k] = led.energy[k] - led.energy.front() - led.flux[k];
  }
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < led.energy.size(); ++k)
    worst = std::min(worst, led.energy[k + 1] - led.energy[k]);
  led.worst_energy_decrease = worst;
  return led;
}

BogomolnyCheck Diagnostics::bogomolny_check(const FieldState& paper_state) const {
  if (params_.alpha < 2.0 * (params_.n - 1) - 1e-12)
    throw Error("bogomolny_check: inequality not claimed for alpha < 2(n-1)");
  const int J = grid_.cells();
  const double h = grid_.h();
  const std::vector<double> ur = radial_derivative(paper_state.u, h);
  const double expo = 0.5 * (params_.alpha - 2.0 * (params_.n - 1));

  BogomolnyCheck out;
  out.max_violation = -std::numeric_limits<double>::infinity();
  double A = 0.0, B = 0.0; // running integrals up to the current cell center
  double gA_prev = 0.0, gB_prev = 0.0;
  for (int j = 0; j < J; ++j) {
    const std::size_t i = static_cast<std::size_t>(j);
    const double r = grid_.r(j);
    const double rn = pow_int_or_real(r, params_.n - 1);
    const double fu = profile_.f(paper_state.u[i]);
    const double gA = fu * fu * pow_int_or_real(r, -params_.alpha) * rn;
    const double gB = ur[i] * ur[i] * rn;
    if (j == 0) {
      A = 0.5 * h * gA; // [0, r_0] cell half, constant extrapolation
      B = 0.5 * h * gB;
    } else {
      A += 0.5 * h * (gA_prev + gA);
      B += 0.5 * h * (gB_prev + gB);
    }
    gA_prev = gA;
    gB_prev = gB;
    const double lhs = std::abs(bogomolny(profile_, paper_state.u[i]));
    const double rhs = pow_int_or_real(r, expo) * std::sqrt(A * B);
    const double viol = lhs - rhs;
    if (viol > out.max_violation) {
      out.max_violation = viol;
      out.witness_r = r;
    }
  }
  return out;
}

BogomolnyCheck Diagnostics::bogomolny_check_all_slices() const {
  BogomolnyCheck worst;
  worst.max_violation = -std::numeric_limits<double>::infinity();
  for (const auto& s : slices_) {
    const BogomolnyCheck c = bogomolny_check(s);
    if (c.max_violation > worst.max_violation) worst = c;
  }
  return worst;
}

std::vector<double> Diagnostics::paper_P(const Multiplier& m, std::size_t k) const {
  const FieldState& s = slices_[k];
  const DensitySlice d = densities(s);
  std::vector<double> P(s.u.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    const double r = grid_.r(static_cast<int>(i));
    const double rn = pow_int_or_real(r, params_.n - 1);
    P[i] = rn * (m.a(s.t, r) * d.e_plus[i] + m.b(s.t, r) * d.m[i] +
                 m.c(s.t, r) * s.u[i] * s.v[i]);
  }
  return P;
}

std::vector<double> Diagnostics::paper_Q(const Multiplier& m, std::size_t k) const {
  const FieldState& s = slices_[k];
  const DensitySlice d = densities(s);
  const std::vector<double> ur = radial_derivative(s.u, grid_.h());
  std::vector<double> Q(s.u.size());
  for (std::size_t i = 0; i < Q.size(); ++i) {
    const double r = grid_.r(static_cast<int>(i));
    const double rn = pow_int_or_real(r, params_.n - 1);
    Q[i] = rn * (m.a(s.t, r) * d.m[i] + m.b(s.t, r) * d.e_minus[i] +
                 m.c(s.t, r) * s.u[i] * ur[i]);
  }
  return Q;
}

ResidualReport Diagnostics::multiplier_residual(const Multiplier& mult, ConeRegion region) const {
  if (!(region.S > 0.0 && region.S <= region.T))
    throw RegionError("multiplier_residual: need 0 < S <= T");
  if (region.S < slice_t_.front() - 1e-9 || region.T > slice_t_.back() + 1e-9)
    throw RegionError("multiplier_residual: region outside the recorded window");
  const std::size_t K = slices_.size();
  if (K < 3) throw RegionError("multiplier_residual: needs at least 3 retained slices");

  const auto a_t = partial_or_fd(mult.a_t, mult.a, true);
  const auto a_r = partial_or_fd(mult.a_r, mult.a, false);
  const auto b_t = partial_or_fd(mult.b_t, mult.b, true);
  const auto b_r = partial_or_fd(mult.b_r, mult.b, false);
  const auto c_t = partial_or_fd(mult.c_t, mult.c, true);
  const auto c_r = partial_or_fd(mult.c_r, mult.c, false);

  std::vector<std::vector<double>> P(K);
  for (std::size_t k = 0; k < K; ++k) P[k] = paper_P(mult, k);

  const double nm1 = params_.n - 1;
  const double half_nm1 = 0.5 * nm1;
  std::vector<double> inner(K, 0.0);
  std::vector<double> defect(static_cast<std::size_t>(grid_.cells()));
  for (std::size_t k = 0; k < K; ++k) {
    // 3-point time derivative of P (centered in the interior)
    const std::size_t ka = k == 0 ? 0 : (k == K - 1 ? K - 3 : k - 1);
    double w[3];
    deriv3_weights(slice_t_[ka], slice_t_[ka + 1], slice_t_[ka + 2], slice_t_[k], w);

    const FieldState& s = slices_[k];
    const DensitySlice d = densities(s);
    const std::vector<double> ur = radial_derivative(s.u, grid_.h());
    const std::vector<double> Q = paper_Q(mult, k);
    const std::vector<double> drQ = radial_derivative(Q, grid_.h());
    const double t = s.t;

    for (std::size_t i = 0; i < defect.size(); ++i) {
      const double r = grid_.r(static_cast<int>(i));
      const double rn = pow_int_or_real(r, nm1);
      const double inv_r2 = 1.0 / (r * r);
      const double inv_ralpha = pow_int_or_real(r, -params_.alpha);
      const double at = a_t(t, r), ar = a_r(t, r);
      const double bt = b_t(t, r), br = b_r(t, r);
      const double ct = c_t(t, r), cr = c_r(t, r);
      const double b = mult.b(t, r), c = mult.c(t, r);
      const double su = std::sin(s.u[i]);
      const double fu = profile_.f(s.u[i]);
      const double dtP = w[0] * P[ka][i] + w[1] * P[ka + 1][i] + w[2] * P[ka + 2][i];

      const double rhs =
          0.5 * rn * (at - br - nm1 * b / r + 2.0 * c) * s.v[i] * s.v[i] +
          0.5 * rn * (at - br + nm1 * b / r - 2.0 * c) * ur[i] * ur[i] +
          rn * (at + br + (params_.n - 3) * b / r) * half_nm1 * su * su * inv_r2 +
          rn * (at + br + (nm1 - params_.alpha) * b / r) * 0.5 * fu * fu * inv_ralpha +
          rn * (bt - ar) * s.v[i] * ur[i] + rn * s.u[i] * (ct * s.v[i] - cr * ur[i]) -
          rn * c * s.u[i] *
              (half_nm1 * std::sin(2.0 * s.u[i]) * inv_r2 + profile_.ff_prime(s.u[i]) * inv_ralpha);

      defect[i] = dtP - drQ[i] - rhs;
    }
    inner[k] = integrate_radial(defect, grid_, t);
  }

  ResidualReport rep;
  rep.multiplier = mult.description;
  rep.region = region;
  rep.h = grid_.h();
  rep.residual = trapezoid_clipped(slice_t_, inner, region.S, region.T);
  int used = 0;
  for (double t : slice_t_)
    if (t >= region.S - 1e-9 && t <= region.T + 1e-9) ++used;
  rep.slices_used = used;
  return rep;
}

double Diagnostics::surface_integral(double S, double T, bool abs_u_term) const {
  const double half_nm1 = 0.5 * (params_.n - 1);
  std::vector<double> integrand(samp_t_.size());
  for (std::size_t i = 0; i < samp_t_.size(); ++i) {
    const double t = samp_t_[i];
    const double uterm = abs_u_term ? std::abs(samp_usum_[i]) : samp_usum_[i];
    integrand[i] = (t * samp_epm_[i] + t * samp_empm_[i] + half_nm1 * uterm) *
                   pow_int_or_real(t, params_.n - 1);
  }
  return trapezoid_clipped(samp_t_, integrand, S, T);
}

EnergyIntLedger Diagnostics::energyint_decomposition(double S, double T) const {
  if (!(S > 0.0 && S <= T)) throw RegionError("energyint_decomposition: need 0 < S <= T");
  if (S < slice_t_.front() - 1e-9 || T > slice_t_.back() + 1e-9)
    throw RegionError("energyint_decomposition: region outside the recorded window");

  const double nm1 = params_.n - 1;
  const double half_nm1 = 0.5 * nm1;
  const std::size_t K = slices_.size();
  std::vector<double> in_uffp(K), in_f2(K), in_sin2(K), in_usin2(K);
  std::vector<double> row(static_cast<std::size_t>(grid_.cells()));
  for (std::size_t k = 0; k < K; ++k) {
    const FieldState& s = slices_[k];
    for (int pass = 0; pass < 4; ++pass) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        const double r = grid_.r(static_cast<int>(i));
        const double rn = pow_int_or_real(r, nm1);
        const double u = s.u[i];
        switch (pass) {
          case 0:
            row[i] = half_nm1 * u * profile_.ff_prime(u) * pow_int_or_real(r, -params_.alpha) * rn;
            break;
          case 1: {
            const double fu = profile_.f(u);
            row[i] = (params_.alpha - (params_.n + 1)) * 0.5 * fu * fu *
                     pow_int_or_real(r, -params_.alpha) * rn;
            break;
          }
          case 2: {
            const double su = std::sin(u);
            row[i] = 0.5 * nm1 * nm1 * su * su / (r * r) * rn;
            break;
          }
          case 3:
            row[i] = -0.25 * nm1 * nm1 * u * std::sin(2.0 * u) / (r * r) * rn;
            break;
        }
      }
      const double val = integrate_radial(row, grid_, s.t);
      (pass == 0 ? in_uffp : pass == 1 ? in_f2 : pass == 2 ? in_sin2 : in_usin2)[k] = val;
    }
  }

  auto surface_term = [&](double t) {
    const FieldState s = slice_at(t);
    const std::vector<double> ur = radial_derivative(s.u, grid_.h());
    const DensitySlice d = compute_densities(s, grid_, params_, profile_);
    std::vector<double> g(s.u.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double r = grid_.r(static_cast<int>(i));
      g[i] = (t * d.e_plus[i] + r * s.v[i] * ur[i] + half_nm1 * s.u[i] * s.v[i]) *
             pow_int_or_real(r, nm1);
    }
    return integrate_radial(g, grid_, t);
  };

  EnergyIntLedger led;
  led.lhs_volume_uffp = trapezoid_clipped(slice_t_, in_uffp, S, T);
  led.lhs_volume_f2 = trapezoid_clipped(slice_t_, in_f2, S, T);
  led.rhs_volume_sin2 = trapezoid_clipped(slice_t_, in_sin2, S, T);
  led.rhs_volume_usin2 = trapezoid_clipped(slice_t_, in_usin2, S, T);
  led.lhs_surface_T = surface_term(T);
  led.rhs_surface_S = surface_term(S);
  led.rhs_cone = surface_integral(S, T, /*abs_u_term=*/false);
  return led;
}

LemmaBoundsReport Diagnostics::lemma_bounds(const std::vector<double>& scales_desc) const {
  if (scales_desc.empty()) throw RegionError("lemma_bounds: no scales");
  std::vector<double> scales = scales_desc;
  std::sort(scales.begin(), scales.end(), std::greater<double>());
  const double tmin_s = min_sample_time();
  const double tmin_k = slice_t_.front();

  // volume integrand rows once per slice
  const std::size_t K = slices_.size();
  std::vector<double> in_vol(K);
  std::vector<double> row(static_cast<std::size_t>(grid_.cells()));
  for (std::size_t k = 0; k < K; ++k) {
    const FieldState& s = slices_[k];
    for (std::size_t i = 0; i < row.size(); ++i) {
      const double r = grid_.r(static_cast<int>(i));
      const double su = std::sin(s.u[i]);
      row[i] = (su * su + std::abs(s.u[i] * std::sin(2.0 * s.u[i]))) / (r * r) *
               pow_int_or_real(r, params_.n - 1);
    }
    in_vol[k] = integrate_radial(row, grid_, s.t);
  }

  LemmaBoundsReport rep;
  for (double X : scales) {
    if (X > slice_t_.back() + 1e-9)
      throw RegionError("lemma_bounds: scale beyond the recorded window");
    LemmaBoundPoint p;
    p.scale = X;

    // (surfint): lateral boundary with |u (u_t + u_r)|, S -> 0
    p.lhs = surface_integral(tmin_s, X, /*abs_u_term=*/true);
    const double FX = flux(tmin_s, X);
    p.rhs_shape = X * FX + pow_int_or_real(X, 0.5 * params_.n) * std::sqrt(std::max(FX, 0.0));
    p.constant = p.rhs_shape > 1e-300 ? p.lhs / p.rhs_shape : 0.0;
    rep.surface.push_back(p);

    // (volint)
    p = LemmaBoundPoint{};
    p.scale = X;
    p.lhs = trapezoid_clipped(slice_t_, in_vol, tmin_k, X);
    p.rhs_shape = params_.n == 2 ? pow_int_or_real(X, 0.5 * params_.alpha)
                                 : pow_int_or_real(X, params_.n - 1);
    p.constant = p.rhs_shape > 1e-300 ? p.lhs / p.rhs_shape : 0.0;
    rep.volume.push_back(p);

    // time-slice bounds at S = X
    const FieldState s = slice_at(X);
    const std::vector<double> ur = radial_derivative(s.u, grid_.h());
    const DensitySlice d = compute_densities(s, grid_, params_, profile_);
    const double EX = integrate_radial([&] {
      std::vector<double> g(s.u.size());
      for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = d.e_plus[i] * pow_int_or_real(grid_.r(static_cast<int>(i)), params_.n - 1);
      return g;
    }(), grid_, X);

    p = LemmaBoundPoint{};
    p.scale = X;
    {
      std::vector<double> g(s.u.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = grid_.r(static_cast<int>(i));
        g[i] = (X * d.e_plus[i] + r * std::abs(s.v[i] * ur[i])) *
               pow_int_or_real(r, params_.n - 1);
      }
      p.lhs = integrate_radial(g, grid_, X);
    }
    p.rhs_shape = X * EX;
    p.constant = p.rhs_shape > 1e-300 ? p.lhs / p.rhs_shape : 0.0;
    rep.slice_energy.push_back(p);

    p = LemmaBoundPoint{};
    p.scale = X;
    {
      std::vector<double> g(s.u.size());
      for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = std::abs(s.u[i] * s.v[i]) *
               pow_int_or_real(grid_.r(static_cast<int>(i)), params_.n - 1);
      p.lhs = integrate_radial(g, grid_, X);
    }
    p.rhs_shape = params_.n == 2
                      ? pow_int_or_real(X, 0.25 * (params_.alpha + 2.0)) * EX
                      : pow_int_or_real(X, 0.5 * params_.n) * std::sqrt(std::max(EX, 0.0));
    p.constant = p.rhs_shape > 1e-300 ? p.lhs / p.rhs_shape : 0.0;
    rep.slice_uut.push_back(p);
  }
  return rep;
}

double Diagnostics::tip_energy(double T) const {
  const FieldState s = slice_at(T);
  const std::vector<double> ur = radial_derivative(s.u, grid_.h());
  std::vector<double> g(s.u.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = grid_.r(static_cast<int>(i));
    if (r > T) break;
    const double su = std::sin(s.u[i]);
    const double fu = profile_.f(s.u[i]);
    const double in2 = (s.v[i] - ur[i]) * (s.v[i] - ur[i]);
    const double out2 = (s.v[i] + ur[i]) * (s.v[i] + ur[i]);
    g[i] = ((1.0 - r / T) * in2 + out2 + su * su / (r * r) +
            fu * fu * pow_int_or_real(r, -params_.alpha)) *
           pow_int_or_real(r, params_.n - 1);
  }
  return integrate_radial(g, grid_, T);
}

double Diagnostics::sup_probe(double T) const {
  double sup = 0.0;
  for (std::size_t k = 0; k < slices_.size(); ++k) {
    const double t = slice_t_[k];
    if (t <= 0.0 || t > T + 1e-12) continue;
    const int jmax = std::min(grid_.cells(), static_cast<int>(std::floor(t / grid_.h() + 0.5)));
    for (int j = 0; j < jmax; ++j)
      if (grid_.r(j) <= t) sup = std::max(sup, std::abs(slices_[k].u[static_cast<std::size_t>(j)]));
  }
  return sup;
}

std::vector<double> Diagnostics::dyadic_times(double t0, int count) {
  std::vector<double> out;
  double t = t0;
  for (int k = 0; k < count; ++k, t *= 0.5) out.push_back(t);
  return out;
}

} // namespace radialcone
