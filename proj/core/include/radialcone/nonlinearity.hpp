#ifndef RADIALCONE_NONLINEARITY_HPP
#define RADIALCONE_NONLINEARITY_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace radialcone {

/// Spatial dimension n >= 2 and singularity exponent alpha > 0 of the
/// f(u)f'(u)/r^alpha term.
struct ModelParams {
  int n = 3;
  double alpha = 4.0;

  void validate() const; // throws ConfigError on n < 2 or alpha <= 0
};

/// A nonlinearity f together with the derived quantities the solver and the
/// diagnostics need. ff_prime is the fused product f*f' (the combination the
/// equation actually uses); ff_prime_deriv is (f f')' = f'^2 + f f'', used to
/// bound the stiffness of the zeroth-order term near the origin.
struct NonlinearityProfile {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> f_prime;
  std::function<double(double)> ff_prime;
  std::function<double(double)> ff_prime_deriv;
  std::function<double(double)> closed_form_I; // empty when no antiderivative of |f| is known
};

/// Returns (f(u), f'(u)). Throws NonFiniteError when the profile produces a
/// non-finite value (malformed profile), Error when u itself is not finite.
std::pair<double, double> eval_pair(const NonlinearityProfile& profile, double u);

/// Bogomolny functional I(w) = oriented integral of |f| from 0 to w
/// (negative for w < 0). Uses closed_form_I when present, otherwise adaptive
/// Simpson quadrature of |f|.
double bogomolny(const NonlinearityProfile& profile, double w);

struct Interval {
  double lo = -10.0;
  double hi = 10.0;
};

/// alpha admissibility threshold max{2(n-1), n+1}.
double alpha_threshold(int n);

/// Outcome of checking the structural hypotheses on (f, n, alpha).
/// alpha_ok, f_zero_ok and f_prime_zero_ok are exact checks; the sign
/// condition and the divergence of I are sampled, never proven.
struct HypothesisReport {
  double alpha_threshold_value = 0.0;
  bool alpha_ok = false;       // alpha >= max{2(n-1), n+1}
  bool f_zero_ok = false;      // f(0) == 0
  bool f_prime_zero_ok = false; // f'(0) != 0
  bool sign_condition_ok = false; // sampled: u f(u) f'(u) >= 0
  bool has_sign_witness = false;
  double sign_witness = 0.0;   // first violating sample (smallest |u|), if any
  bool i_divergence_ok = false; // sampled heuristic: I(W)/I(W/2) > 1.2
  double i_growth_ratio = 0.0;

  bool exact_ok() const { return alpha_ok && f_zero_ok && f_prime_zero_ok; }
  bool all_ok() const { return exact_ok() && sign_condition_ok && i_divergence_ok; }
};

/// Samples are taken on a uniform grid over sample_range and visited in order
/// of increasing |u|, so the recorded witness is the smallest-magnitude
/// violating sample. sample_range must contain 0 and samples must be >= 100.
HypothesisReport check_hypotheses(const NonlinearityProfile& profile, const ModelParams& params,
                                  Interval sample_range = {}, int samples = 1001);

/// Built-in profiles: adkins_nappi (u - sin u cos u), linear (u), cubic (u^3),
/// sine (sin u), power (sign(u)|u|^p, needs the exponent parameter).
NonlinearityProfile make_profile(const std::string& name,
                                 std::optional<double> exponent = std::nullopt);
std::vector<std::string> builtin_profile_names();

/// Worst deviations of the profile's supplied derivatives/antiderivative from
/// independent reconstructions (central differences for f', quadrature for I),
/// sampled uniformly. Used by the profile consistency tests.
struct ProfileConsistency {
  double max_fprime_deviation = 0.0; // |f' - centered FD| with step 1e-4
  double max_I_deviation = 0.0;      // |closed_form_I - quadrature|, 0 when no closed form
};
ProfileConsistency validate_profile(const NonlinearityProfile& profile,
                                    Interval range = {}, int samples = 257);

} // namespace radialcone

#endif
