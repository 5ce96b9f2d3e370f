#ifndef RADIALCONE_QUADRATURE_HPP
#define RADIALCONE_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace radialcone {

/// Adaptive Simpson quadrature of f over [a, b].
/// Tolerances are tight (abs 1e-10, rel 1e-8) so that quadrature error stays
/// negligible against the 1e-6 tolerances of the inequality checks it feeds.
/// Throws QuadratureError if the recursion depth limit is hit before convergence.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10, double rel_tol = 1e-8, int max_depth = 48);

/// Trapezoid rule over the samples (x[i], y[i]) restricted to [lo, hi].
/// x must be strictly increasing; partial end intervals use linear interpolation.
/// Returns 0 when the overlap of [lo, hi] with the sampled range is empty.
double trapezoid_clipped(const std::vector<double>& x, const std::vector<double>& y,
                         double lo, double hi);

} // namespace radialcone

#endif
