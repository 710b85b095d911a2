#pragma once

// Closed-form joint probabilities for the long-difference subensemble under
// the two competing outcome models, the generic causal-model mixture, and the
// derived observables (marginals, singles visibilities, correlation E).

#include <utility>
#include <vector>

#include "impactsim/core_model.hpp"
#include "impactsim/probability_table.hpp"

namespace impactsim {

// Standard quantum superposition over all three long-class path pairs:
//   P(sigma,omega) = [3 - 2 sigma cos(alpha+beta) - 2 sigma omega cos(alpha+gamma)
//                       + 2 omega cos(gamma-beta)] / 12
ProbabilityTable qm_joint(const PhaseSettings& phases);

// Pairwise-superposition causal model: same structure with the three cosine
// coefficients halved,
//   P(sigma,omega) = [3 - sigma cos(alpha+beta) - sigma omega cos(alpha+gamma)
//                       + omega cos(gamma-beta)] / 12
ProbabilityTable mc_joint(const PhaseSettings& phases);

// One coherently superposing subset of long-class path pairs with its weight.
struct ModelComponent {
  std::vector<PathPair> subset;
  double weight;
};

// Weighted mixture over subsets of the long class that superpose coherently.
// The quantum model is the full three-pair subset with weight 1; the pairwise
// causal model is the three two-pair subsets with weight 1/3 each.
class CausalModelSpec {
 public:
  // Validates: weights positive summing to 1 within 1e-12, subsets nonempty,
  // duplicate-free, and within the long class.  Throws std::invalid_argument.
  explicit CausalModelSpec(std::vector<ModelComponent> components);

  static const CausalModelSpec& quantum();
  static const CausalModelSpec& multisimultaneous();

  const std::vector<ModelComponent>& components() const { return components_; }

 private:
  std::vector<ModelComponent> components_;
};

// Weighted sum of the amplitude-level superposition tables of spec's subsets.
// With the quantum preset this reproduces qm_joint; with the multisimultaneous
// preset it reproduces mc_joint (a tested reduction, not an assumption).
ProbabilityTable model_joint(const CausalModelSpec& spec, const PhaseSettings& phases);

// Side-1 singles: (P(+,.), P(-,.)) = row sums over omega.
std::pair<double, double> marginal_side1(const ProbabilityTable& t);
// Side-2 singles: (P(.,+), P(.,-)) = column sums over sigma.
std::pair<double, double> marginal_side2(const ProbabilityTable& t);

// E = sum over outcomes of (-sigma*omega) P(sigma,omega).
// Analytically (2/3)cos(alpha+gamma) for qm_joint, (1/3)cos(alpha+gamma) for mc_joint.
double correlation_E(const ProbabilityTable& t);

// |difference of the two singles probabilities| on side 1 or 2.
double singles_visibility(const ProbabilityTable& t, int side);

// Phase constraints alpha+beta = n*pi and beta-gamma = m*pi.  With n == m the
// correlation predictions become phase-independent: E = 2/3 vs 1/3.
struct SpecialSettings {
  int n = 0;
  int m = 0;
};

// The one-parameter solution (alpha = n*pi - beta, beta, gamma = beta - m*pi).
PhaseSettings special_settings(SpecialSettings s, double beta);

}  // namespace impactsim
