#include "impactsim/discrimination.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "impactsim/probability.hpp"

namespace impactsim {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::FavorsQM: return "FavorsQM";
    case Verdict::FavorsMC: return "FavorsMC";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  throw std::logic_error("bad Verdict");
}

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// Acklam's rational approximation to the inverse normal CDF (~1.15e-9
// relative error on its own).
double acklam(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile needs p in (0,1)");
  double x = acklam(p);
  for (int i = 0; i < 2; ++i) {
    const double err = normal_cdf(x) - p;
    const double pdf = normal_pdf(x);
    if (pdf <= 0.0) break;
    x -= err / pdf;
  }
  return x;
}

double two_sided_sigma_alpha(double n_sigma) {
  if (!(n_sigma > 0.0)) throw std::invalid_argument("n_sigma must be positive");
  return std::erfc(n_sigma / std::numbers::sqrt2);
}

bool on_special_surface(const PhaseSettings& phases, double tol) {
  const double pi = std::numbers::pi;
  const double d1 = std::remainder(phases.alpha() + phases.beta(), pi);
  const double d2 = std::remainder(phases.beta() - phases.gamma(), pi);
  return std::abs(d1) <= tol && std::abs(d2) <= tol;
}

DecisionReport decide(const EstimateSummary& summary, const PhaseSettings& phases,
                      double alpha_level) {
  if (!on_special_surface(phases, 1e-9)) {
    throw std::invalid_argument(
        "decide: phases must satisfy alpha+beta = n*pi and beta-gamma = m*pi within 1e-9");
  }
  if (summary.n_class_long < 30) {
    throw std::invalid_argument("decide: needs at least 30 long-class coincidences");
  }
  if (!(alpha_level > 0.0 && alpha_level < 1.0)) {
    throw std::invalid_argument("decide: alpha_level must lie in (0,1)");
  }

  DecisionReport r;
  r.e_hat = summary.e_hat;
  r.std_err = summary.std_err_e;
  r.n_class_long = summary.n_class_long;
  r.alpha_level = alpha_level;
  r.z_threshold = normal_quantile(1.0 - alpha_level / 2.0);

  const ProbabilityTable qm = qm_joint(phases);
  const ProbabilityTable mc = mc_joint(phases);
  r.e_qm_predicted = correlation_E(qm);
  r.e_mc_predicted = correlation_E(mc);

  auto z_against = [&r](double mu) {
    const double dist = std::abs(r.e_hat - mu);
    if (r.std_err > 0.0) return dist / r.std_err;
    return dist == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  r.z_qm = z_against(r.e_qm_predicted);
  r.z_mc = z_against(r.e_mc_predicted);

  double llr = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (summary.counts[i] == 0) continue;
    llr += static_cast<double>(summary.counts[i]) *
           (std::log(qm.at_index(i)) - std::log(mc.at_index(i)));
  }
  r.log_likelihood_ratio = llr;

  const bool rejects_qm = r.z_qm > r.z_threshold;
  const bool rejects_mc = r.z_mc > r.z_threshold;
  if (rejects_mc && !rejects_qm) {
    r.verdict = Verdict::FavorsQM;
  } else if (rejects_qm && !rejects_mc) {
    r.verdict = Verdict::FavorsMC;
  } else {
    r.verdict = Verdict::Inconclusive;
  }
  return r;
}

std::uint64_t required_sample_size(double confidence_sigmas) {
  if (!(confidence_sigmas > 0.0)) {
    throw std::invalid_argument("confidence_sigmas must be positive");
  }
  const double se_qm = std::sqrt(1.0 - (2.0 / 3.0) * (2.0 / 3.0));
  const double se_mc = std::sqrt(1.0 - (1.0 / 3.0) * (1.0 / 3.0));
  const double root = confidence_sigmas * (se_qm + se_mc) / (1.0 / 3.0);
  return static_cast<std::uint64_t>(std::ceil(root * root));
}

}  // namespace impactsim
