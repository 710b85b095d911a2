#pragma once

// Decision machinery: given an estimate from coincidence counts taken at
// special phase settings, test the two point hypotheses E = 2/3 (quantum)
// and E = 1/3 (pairwise-causal) and report a verdict.

#include <cstdint>
#include <string>

#include "impactsim/core_model.hpp"
#include "impactsim/montecarlo.hpp"

namespace impactsim {

enum class Verdict { FavorsQM, FavorsMC, Inconclusive };

std::string to_string(Verdict v);

struct DecisionReport {
  double e_hat = 0.0;
  double std_err = 0.0;
  double e_qm_predicted = 0.0;  // model predictions at the given phases
  double e_mc_predicted = 0.0;
  double z_qm = 0.0;  // |e_hat - e_qm_predicted| / std_err
  double z_mc = 0.0;
  // Multinomial log-likelihood ratio of the quantum over the pairwise-causal
  // outcome tables at the given phases; positive favors quantum.
  double log_likelihood_ratio = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  double alpha_level = 0.0;
  double z_threshold = 0.0;  // two-sided critical value for alpha_level
  std::uint64_t n_class_long = 0;
};

// Inverse standard normal CDF (Acklam's rational approximation refined with
// Newton steps on erfc; accurate to ~1e-15 over (0,1)).
double normal_quantile(double p);

// Two-sided tail probability of an n-sigma normal deviation, erfc(n/sqrt(2)).
double two_sided_sigma_alpha(double n_sigma);

// True when alpha+beta and beta-gamma are both integer multiples of pi
// within tol; the 2/3-vs-1/3 predictions hold only there.
bool on_special_surface(const PhaseSettings& phases, double tol = 1e-9);

// Requires on_special_surface(phases, 1e-9) and n_class_long >= 30; throws
// std::invalid_argument otherwise.  The verdict favors one model exactly when
// the other model's z-score exceeds the two-sided threshold while its own
// does not.
DecisionReport decide(const EstimateSummary& summary, const PhaseSettings& phases,
                      double alpha_level = two_sided_sigma_alpha(5.0));

// Smallest number of long-class coincidences for which the two hypotheses sit
// at least confidence_sigmas standard errors apart on each side under the
// normal approximation:
//   n >= [confidence_sigmas * (sqrt(1-(2/3)^2) + sqrt(1-(1/3)^2)) / (1/3)]^2
std::uint64_t required_sample_size(double confidence_sigmas);

}  // namespace impactsim
