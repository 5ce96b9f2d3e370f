#include "radialcone/nonlinearity.hpp"
#include "radialcone/errors.hpp"
#include "radialcone/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace radialcone {

void ModelParams::validate() const {
  if (n < 2) throw ConfigError("model dimension n must be >= 2, got " + std::to_string(n));
  if (!(alpha > 0.0)) throw ConfigError("alpha must be > 0, got " + std::to_string(alpha));
}

std::pair<double, double> eval_pair(const NonlinearityProfile& profile, double u) {
  if (!std::isfinite(u)) throw Error("eval_pair: non-finite argument");
  const double fu = profile.f(u);
  const double fpu = profile.f_prime(u);
  if (!std::isfinite(fu) || !std::isfinite(fpu))
    throw NonFiniteError("profile '" + profile.name + "' produced a non-finite value at u=" +
                         std::to_string(u));
  return {fu, fpu};
}

double bogomolny(const NonlinearityProfile& profile, double w) {
  if (!std::isfinite(w)) throw Error("bogomolny: non-finite argument");
  if (w == 0.0) return 0.0;
  if (profile.closed_form_I) {
    const double v = profile.closed_form_I(w);
    if (!std::isfinite(v)) throw NonFiniteError("closed-form I non-finite for '" + profile.name + "'");
    return v;
  }
  auto abs_f = [&](double v) { return std::abs(profile.f(v)); };
  return w > 0.0 ? adaptive_simpson(abs_f, 0.0, w) : -adaptive_simpson(abs_f, w, 0.0);
}

double alpha_threshold(int n) {
  return std::max(2.0 * (n - 1), static_cast<double>(n + 1));
}

HypothesisReport check_hypotheses(const NonlinearityProfile& profile, const ModelParams& params,
                                  Interval sample_range, int samples) {
  params.validate();
  if (samples < 100) throw ConfigError("check_hypotheses needs at least 100 samples");
  if (!(sample_range.lo <= 0.0 && sample_range.hi >= 0.0))
    throw ConfigError("sample_range must contain 0");

  HypothesisReport rep;
  rep.alpha_threshold_value = alpha_threshold(params.n);
  rep.alpha_ok = params.alpha >= rep.alpha_threshold_value;
  rep.f_zero_ok = profile.f(0.0) == 0.0;
  rep.f_prime_zero_ok = profile.f_prime(0.0) != 0.0;

  // Sampled sign condition, visited by increasing |u| so the witness is the
  // smallest-magnitude violating sample.
  std::vector<double> us(static_cast<std::size_t>(samples));
  const double span = sample_range.hi - sample_range.lo;
  for (int k = 0; k < samples; ++k)
    us[static_cast<std::size_t>(k)] = sample_range.lo + span * k / (samples - 1);
  std::sort(us.begin(), us.end(),
            [](double a, double b) { return std::abs(a) < std::abs(b); });
  rep.sign_condition_ok = true;
  for (double u : us) {
    const double val = u * profile.ff_prime(u);
    if (val < -1e-12) {
      rep.sign_condition_ok = false;
      rep.has_sign_witness = true;
      rep.sign_witness = u;
      break;
    }
  }

  // Divergence of I: cheap growth probe I(W)/I(W/2) > 1.2, labeled heuristic.
  const double W = sample_range.hi;
  const double IW = bogomolny(profile, W);
  const double IW2 = bogomolny(profile, W / 2.0);
  if (IW2 > 1e-300) {
    rep.i_growth_ratio = IW / IW2;
    rep.i_divergence_ok = rep.i_growth_ratio > 1.2;
  } else {
    rep.i_growth_ratio = 0.0;
    rep.i_divergence_ok = false;
  }
  return rep;
}

namespace {

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

NonlinearityProfile adkins_nappi_profile() {
  NonlinearityProfile p;
  p.name = "adkins_nappi";
  p.f = [](double u) { return u - std::sin(u) * std::cos(u); };
  p.f_prime = [](double u) { return 1.0 - std::cos(2.0 * u); };
  p.ff_prime = [](double u) {
    const double s = std::sin(2.0 * u);
    const double c = std::cos(2.0 * u);
    return (u - 0.5 * s) * (1.0 - c);
  };
  p.ff_prime_deriv = [](double u) {
    const double s = std::sin(2.0 * u);
    const double c = std::cos(2.0 * u);
    const double fp = 1.0 - c;
    return fp * fp + (u - 0.5 * s) * 2.0 * s;
  };
  // I(w) = sign(w) (w^2 - sin^2 w)/2; integrand |f| is even and nonnegative
  p.closed_form_I = [](double w) {
    const double s = std::sin(w);
    return sign(w) * 0.5 * (w * w - s * s);
  };
  return p;
}

NonlinearityProfile linear_profile() {
  NonlinearityProfile p;
  p.name = "linear";
  p.f = [](double u) { return u; };
  p.f_prime = [](double) { return 1.0; };
  p.ff_prime = [](double u) { return u; };
  p.ff_prime_deriv = [](double) { return 1.0; };
  p.closed_form_I = [](double w) { return 0.5 * w * std::abs(w); };
  return p;
}

NonlinearityProfile cubic_profile() {
  NonlinearityProfile p;
  p.name = "cubic";
  p.f = [](double u) { return u * u * u; };
  p.f_prime = [](double u) { return 3.0 * u * u; };
  p.ff_prime = [](double u) { return 3.0 * u * u * u * u * u; };
  p.ff_prime_deriv = [](double u) { return 15.0 * u * u * u * u; };
  p.closed_form_I = [](double w) { return 0.25 * w * w * w * std::abs(w); };
  return p;
}

NonlinearityProfile sine_profile() {
  NonlinearityProfile p;
  p.name = "sine";
  p.f = [](double u) { return std::sin(u); };
  p.f_prime = [](double u) { return std::cos(u); };
  p.ff_prime = [](double u) { return 0.5 * std::sin(2.0 * u); };
  p.ff_prime_deriv = [](double u) { return std::cos(2.0 * u); };
  // no closed-form antiderivative of |sin| supplied; exercises the quadrature path
  return p;
}

NonlinearityProfile power_profile(double exponent) {
  if (!(exponent >= 1.0))
    throw ConfigError("power profile needs exponent >= 1, got " + std::to_string(exponent));
  NonlinearityProfile p;
  p.name = "power";
  const double q = exponent;
  p.f = [q](double u) { return sign(u) * std::pow(std::abs(u), q); };
  p.f_prime = [q](double u) { return q * std::pow(std::abs(u), q - 1.0); };
  p.ff_prime = [q](double u) { return sign(u) * q * std::pow(std::abs(u), 2.0 * q - 1.0); };
  p.ff_prime_deriv = [q](double u) {
    return q * (2.0 * q - 1.0) * std::pow(std::abs(u), 2.0 * q - 2.0);
  };
  p.closed_form_I = [q](double w) {
    return sign(w) * std::pow(std::abs(w), q + 1.0) / (q + 1.0);
  };
  return p;
}

} // namespace

NonlinearityProfile make_profile(const std::string& name, std::optional<double> exponent) {
  if (name == "adkins_nappi") return adkins_nappi_profile();
  if (name == "linear") return linear_profile();
  if (name == "cubic") return cubic_profile();
  if (name == "sine") return sine_profile();
  if (name == "power") {
    if (!exponent) throw ConfigError("power profile requires the 'exponent' parameter");
    return power_profile(*exponent);
  }
  throw ConfigError("unknown profile '" + name + "'");
}

std::vector<std::string> builtin_profile_names() {
  return {"adkins_nappi", "linear", "cubic", "sine", "power"};
}

ProfileConsistency validate_profile(const NonlinearityProfile& profile, Interval range,
                                    int samples) {
  ProfileConsistency out;
  const double h = 1e-4;
  for (int k = 0; k < samples; ++k) {
    const double u = range.lo + (range.hi - range.lo) * k / (samples - 1);
    const double fd = (profile.f(u + h) - profile.f(u - h)) / (2.0 * h);
    out.max_fprime_deviation =
        std::max(out.max_fprime_deviation, std::abs(profile.f_prime(u) - fd));
    if (profile.closed_form_I) {
      auto abs_f = [&](double v) { return std::abs(profile.f(v)); };
      const double quad = u >= 0.0 ? adaptive_simpson(abs_f, 0.0, u)
                                   : -adaptive_simpson(abs_f, u, 0.0);
      out.max_I_deviation =
          std::max(out.max_I_deviation, std::abs(profile.closed_form_I(u) - quad));
    }
  }
  return out;
}

} // namespace radialcone
