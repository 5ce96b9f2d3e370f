#include "radialcone/grid.hpp"
#include "radialcone/errors.hpp"

#include <algorithm>
#include <cmath>

namespace radialcone {

RadialGrid::RadialGrid(double h, double R) : h_(h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("grid spacing h must be positive");
  if (!(R > 0.0) || !std::isfinite(R)) throw ConfigError("outer radius R must be positive");
  J_ = static_cast<int>(std::lround(R / h));
  if (J_ < 8) throw ConfigError("grid too coarse: needs at least 8 cells, got " + std::to_string(J_));
  R_ = J_ * h_;
  radii_.resize(static_cast<std::size_t>(J_));
  for (int j = 0; j < J_; ++j) radii_[static_cast<std::size_t>(j)] = r(j);
}

int RadialGrid::nearest(double rr) const {
  const int j = static_cast<int>(std::lround(rr / h_ - 0.5));
  return std::clamp(j, 0, J_ - 1);
}

void RadialGrid::require_cone_pad(double t_diag_max) const {
  if (!(R_ > 2.0 * t_diag_max))
    throw ConfigError("outer radius R=" + std::to_string(R_) +
                      " does not clear the diagnostic cone: need R > " +
                      std::to_string(2.0 * t_diag_max) +
                      " (final diagnostic time plus one cone width)");
}

bool FieldState::is_finite() const {
  for (double x : u)
    if (!std::isfinite(x)) return false;
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

double origin_value(const FieldState& state) {
  // r_0 = h/2, r_1 = 3h/2: extrapolation to r = 0 gives 1.5 u_0 - 0.5 u_1
  return 1.5 * state.u[0] - 0.5 * state.u[1];
}

FieldState zero_state(const RadialGrid& grid, double t) {
  FieldState s;
  s.t = t;
  s.u.assign(static_cast<std::size_t>(grid.cells()), 0.0);
  s.v.assign(static_cast<std::size_t>(grid.cells()), 0.0);
  return s;
}

} // namespace radialcone
