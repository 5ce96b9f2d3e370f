#include "radialcone/quadrature.hpp"
#include "radialcone/errors.hpp"

#include <algorithm>
#include <cmath>

namespace radialcone {

namespace {

double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double abs_tol, double rel_tol,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  const double tol = std::max(abs_tol, rel_tol * std::abs(left + right));
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) throw QuadratureError("adaptive Simpson: depth limit reached");
  return simpson_rec(f, a, m, fa, flm, fm, left, abs_tol / 2, rel_tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, abs_tol / 2, rel_tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb))
    throw QuadratureError("adaptive Simpson: non-finite integrand");
  const double whole = simpson(fa, fm, fb, a, b);
  return simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, rel_tol, max_depth);
}

double trapezoid_clipped(const std::vector<double>& x, const std::vector<double>& y,
                         double lo, double hi) {
  if (x.size() < 2 || lo >= hi) return 0.0;
  const double a = std::max(lo, x.front());
  const double b = std::min(hi, x.back());
  if (a >= b) return 0.0;

  auto value_at = [&](double t, std::size_t i) {
    // linear interpolation on segment [x[i], x[i+1]]
    const double lam = (t - x[i]) / (x[i + 1] - x[i]);
    return (1.0 - lam) * y[i] + lam * y[i + 1];
  };

  const std::size_t i0 =
      static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), a) - x.begin()) - 1;
  std::size_t i1 =
      static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), b) - x.begin());
  if (i1 == 0) return 0.0;
  --i1; // segment index containing b

  if (i0 == i1)
    return 0.5 * (value_at(a, i0) + value_at(b, i0)) * (b - a);

  double s = 0.5 * (value_at(a, i0) + y[i0 + 1]) * (x[i0 + 1] - a);
  for (std::size_t i = i0 + 1; i < i1; ++i)
    s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  s += 0.5 * (y[i1] + value_at(b, i1)) * (b - x[i1]);
  return s;
}

} // namespace radialcone
