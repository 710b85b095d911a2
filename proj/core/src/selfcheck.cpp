#include "impactsim/selfcheck.hpp"

#include <cmath>
#include <numbers>

#include "impactsim/amplitude.hpp"
#include "impactsim/probability.hpp"
#include "impactsim/rng.hpp"

namespace impactsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Tracker {
  double max_dev = 0.0;
  void update(double dev) { max_dev = std::max(max_dev, std::abs(dev)); }
};

}  // namespace

std::vector<CheckResult> run_selfcheck(const SelfCheckOptions& options) {
  const auto members = long_class_members();

  AmplitudeFn amp = amplitude;
  if (options.corrupt_sign) {
    // Flip the sign of the (l,lL) contribution; all superposition-vs-closed-form
    // identities must then fail.
    amp = [](PathPair p, OutcomePair o, const PhaseSettings& ph) {
      OutcomeAmplitude a = amplitude(p, o, ph);
      if (p == long_class_members()[2]) a.sign = -a.sign;
      return a;
    };
  }
  auto sup = [&amp](std::span<const PathPair> subset, const PhaseSettings& ph) {
    return superpose(subset, ph, amp);
  };

  Tracker full_vs_closed, mixture_vs_closed, qm_preset, norm_full, norm_pairs, sum_to_one,
      marginals, closed_E, strength_ratio, periodicity, special;

  SplitMix64 rng(options.seed);
  auto random_phases = [&rng]() {
    return PhaseSettings(rng.next_double() * kTwoPi, rng.next_double() * kTwoPi,
                         rng.next_double() * kTwoPi);
  };

  const std::array<std::array<PathPair, 2>, 3> pair_subsets{
      std::array<PathPair, 2>{members[0], members[1]},
      std::array<PathPair, 2>{members[0], members[2]},
      std::array<PathPair, 2>{members[1], members[2]}};

  for (int t = 0; t < options.trials; ++t) {
    const PhaseSettings ph = random_phases();
    const ProbabilityTable qm = qm_joint(ph);
    const ProbabilityTable mc = mc_joint(ph);

    // amplitude superposition over the full subset vs the quantum closed form
    const ProbabilityTable full = sup(members, ph);
    for (int i = 0; i < 4; ++i) full_vs_closed.update(full.at_index(i) - qm.at_index(i));

    // uniform mixture of the three pairwise superpositions vs the causal closed form
    std::array<double, 4> mix{};
    for (const auto& subset : pair_subsets) {
      const ProbabilityTable t2 = sup(subset, ph);
      for (int i = 0; i < 4; ++i) mix[i] += t2.at_index(i) / 3.0;
    }
    for (int i = 0; i < 4; ++i) mixture_vs_closed.update(mix[i] - mc.at_index(i));

    // mixture presets through model_joint (always the public amplitude path)
    const ProbabilityTable mq = model_joint(CausalModelSpec::quantum(), ph);
    const ProbabilityTable mm = model_joint(CausalModelSpec::multisimultaneous(), ph);
    for (int i = 0; i < 4; ++i) {
      qm_preset.update(mq.at_index(i) - qm.at_index(i));
      qm_preset.update(mm.at_index(i) - mc.at_index(i));
    }

    // normalization denominators: 12 for the full subset, 8 for each pair
    norm_full.update(superposition_norm(members, ph) - 12.0);
    for (const auto& subset : pair_subsets) {
      norm_pairs.update(superposition_norm(subset, ph) - 8.0);
    }

    // closed forms sum to one
    double sq = 0.0, sm = 0.0;
    for (int i = 0; i < 4; ++i) {
      sq += qm.at_index(i);
      sm += mc.at_index(i);
    }
    sum_to_one.update(sq - 1.0);
    sum_to_one.update(sm - 1.0);

    // marginals vs their cosine forms
    const double cab = std::cos(ph.alpha() + ph.beta());
    const double cbg = std::cos(ph.beta() - ph.gamma());
    marginals.update(marginal_side1(qm).first - (0.5 - cab / 3.0));
    marginals.update(marginal_side1(qm).second - (0.5 + cab / 3.0));
    marginals.update(marginal_side2(qm).first - (0.5 + cbg / 3.0));
    marginals.update(marginal_side2(qm).second - (0.5 - cbg / 3.0));
    marginals.update(marginal_side1(mc).first - (0.5 - cab / 6.0));
    marginals.update(marginal_side1(mc).second - (0.5 + cab / 6.0));
    marginals.update(marginal_side2(mc).first - (0.5 + cbg / 6.0));
    marginals.update(marginal_side2(mc).second - (0.5 - cbg / 6.0));

    // correlation closed forms
    const double cag = std::cos(ph.alpha() + ph.gamma());
    closed_E.update(correlation_E(qm) - (2.0 / 3.0) * cag);
    closed_E.update(correlation_E(mc) - (1.0 / 3.0) * cag);

    // interference strength: quantum deviations from 1/4 are twice the causal ones
    for (int i = 0; i < 4; ++i) {
      strength_ratio.update((qm.at_index(i) - 0.25) - 2.0 * (mc.at_index(i) - 0.25));
    }

    // 2*pi periodicity of the superposition in each phase argument
    const PhaseSettings shifted(ph.alpha() + kTwoPi, ph.beta() - kTwoPi, ph.gamma() + kTwoPi);
    const ProbabilityTable full_shifted = sup(members, shifted);
    for (int i = 0; i < 4; ++i) {
      periodicity.update(full_shifted.at_index(i) - full.at_index(i));
    }
  }

  // special settings: with n == m the correlations are 2/3 and 1/3 for any beta
  for (int t = 0; t < options.trials; ++t) {
    const double beta = rng.next_double() * kTwoPi;
    const int n = static_cast<int>(rng.next() & 3) - 1;
    const PhaseSettings ph = special_settings(SpecialSettings{n, n}, beta);
    special.update(correlation_E(qm_joint(ph)) - 2.0 / 3.0);
    special.update(correlation_E(mc_joint(ph)) - 1.0 / 3.0);
    special.update(singles_visibility(qm_joint(ph), 1) - 2.0 / 3.0);
    special.update(singles_visibility(qm_joint(ph), 2) - 2.0 / 3.0);
    special.update(singles_visibility(mc_joint(ph), 1) - 1.0 / 3.0);
    special.update(singles_visibility(mc_joint(ph), 2) - 1.0 / 3.0);
  }

  const double tol = options.tolerance;
  auto result = [tol](std::string name, const Tracker& tr) {
    return CheckResult{std::move(name), tr.max_dev, tol, tr.max_dev <= tol};
  };

  std::vector<CheckResult> results{
      result("superpose(full) == quantum closed form", full_vs_closed),
      result("uniform pair mixture == causal closed form", mixture_vs_closed),
      result("model_joint presets == closed forms", qm_preset),
      result("full-subset normalization == 12", norm_full),
      result("pair-subset normalization == 8", norm_pairs),
      result("closed forms sum to 1", sum_to_one),
      result("marginals match cosine forms", marginals),
      result("correlation E closed forms", closed_E),
      result("quantum interference strength doubles causal", strength_ratio),
      result("2*pi periodicity", periodicity),
      result("special settings give E = 2/3 and 1/3", special),
  };
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace impactsim
