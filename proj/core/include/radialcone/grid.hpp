#ifndef RADIALCONE_GRID_HPP
#define RADIALCONE_GRID_HPP

#include <cstddef>
#include <vector>

namespace radialcone {

/// Staggered radial mesh on [0, R]: cell centers r_j = (j + 1/2) h for
/// j = 0..J-1, so no point ever sits on the singular axis r = 0
/// (min r_j = h/2). R is snapped to J*h exactly.
class RadialGrid {
public:
  RadialGrid(double h, double R); // throws ConfigError on invalid sizes

  double h() const { return h_; }
  int cells() const { return J_; }
  double outer_radius() const { return R_; }
  double r(int j) const { return (j + 0.5) * h_; }
  const std::vector<double>& radii() const { return radii_; }

  /// Index of the cell center nearest to radius r, clamped to the grid.
  int nearest(double r) const;

  /// Finite-speed-of-propagation pad: the outer boundary must not influence
  /// any diagnostic cone, i.e. R > t_diag_max + cone width (= 2 t_diag_max).
  /// Throws ConfigError when violated.
  void require_cone_pad(double t_diag_max) const;

private:
  double h_;
  int J_;
  double R_;
  std::vector<double> radii_;
};

/// One time slice: u and v = u_t on the grid.
struct FieldState {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;

  bool is_finite() const;
};

/// Boundary value u(t, 0) reconstructed by linear extrapolation through the
/// first two cell centers. Vanishes (to the scheme's order) when the odd
/// origin closure is doing its job.
double origin_value(const FieldState& state);

FieldState zero_state(const RadialGrid& grid, double t = 0.0);

} // namespace radialcone

#endif
