#include "impactsim/amplitude.hpp"

#include <stdexcept>

namespace impactsim {

namespace {

void validate_subset(std::span<const PathPair> subset) {
  if (subset.empty()) throw std::invalid_argument("superpose: empty subset");
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (!in_long_class(subset[i])) {
      throw std::invalid_argument("superpose: " + label(subset[i]) +
                                  " is not in the long-difference class");
    }
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      if (subset[i] == subset[j]) {
        throw std::invalid_argument("superpose: duplicate path pair " + label(subset[i]));
      }
    }
  }
}

std::array<double, 4> intensities(std::span<const PathPair> subset, const PhaseSettings& phases,
                                  const AmplitudeFn& amp) {
  std::array<double, 4> out{};
  for (OutcomePair o : all_outcomes()) {
    std::complex<double> sum{0.0, 0.0};
    for (PathPair p : subset) sum += amp(p, o, phases).value();
    out[o.index()] = std::norm(sum);
  }
  return out;
}

}  // namespace

OutcomeAmplitude amplitude(PathPair p, OutcomePair o, const PhaseSettings& phases) {
  constexpr PathPair kLLL{Arm::Long, Arm::Long, Arm::Long};
  constexpr PathPair kLl{Arm::Short, Arm::Long, Arm::Short};
  constexpr PathPair klL{Arm::Short, Arm::Short, Arm::Long};
  if (p == kLLL) return OutcomeAmplitude{-static_cast<double>(o.sigma), phases.alpha()};
  if (p == kLl) return OutcomeAmplitude{1.0, -phases.beta()};
  if (p == klL) return OutcomeAmplitude{static_cast<double>(o.omega), -phases.gamma()};
  throw std::invalid_argument("amplitude: " + label(p) +
                              " is not in the long-difference class");
}

ProbabilityTable superpose(std::span<const PathPair> subset, const PhaseSettings& phases) {
  return superpose(subset, phases, amplitude);
}

ProbabilityTable superpose(std::span<const PathPair> subset, const PhaseSettings& phases,
                           const AmplitudeFn& amp) {
  validate_subset(subset);
  std::array<double, 4> w = intensities(subset, phases, amp);
  const double norm = w[0] + w[1] + w[2] + w[3];
  for (double& v : w) v /= norm;
  return ProbabilityTable::from_array(w);
}

double superposition_norm(std::span<const PathPair> subset, const PhaseSettings& phases) {
  validate_subset(subset);
  std::array<double, 4> w = intensities(subset, phases, amplitude);
  return w[0] + w[1] + w[2] + w[3];
}

}  // namespace impactsim
