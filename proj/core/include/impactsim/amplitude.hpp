#pragma once

// Brute-force amplitude engine for the long-difference subensemble.  Each of
// its three path pairs contributes one unit-modulus amplitude per outcome
// pair; squared-modulus superposition over a subset, normalized over the four
// outcomes, gives that subset's joint probability table.  This is the
// independent route against which the closed-form engine is checked.
//
// Amplitude convention (see docs/derivations.md for how it is pinned down):
//   (L,LL) -> sign -sigma, phase  alpha
//   (l,Ll) -> sign +1,     phase -beta
//   (l,lL) -> sign  omega, phase -gamma
// Global beam-splitter factors are absorbed into the normalization.

#include <complex>
#include <functional>
#include <span>

#include "impactsim/core_model.hpp"
#include "impactsim/probability_table.hpp"

namespace impactsim {

// One path pair's contribution to one outcome: sign * exp(i * phase).
struct OutcomeAmplitude {
  double sign;   // +1 or -1
  double phase;  // radians

  std::complex<double> value() const { return sign * std::polar(1.0, phase); }
};

// Amplitude of a long-class path pair for outcome o under the fixed
// convention above. Throws std::invalid_argument for other path pairs.
OutcomeAmplitude amplitude(PathPair p, OutcomePair o, const PhaseSettings& phases);

using AmplitudeFn =
    std::function<OutcomeAmplitude(PathPair, OutcomePair, const PhaseSettings&)>;

// P[o] = |sum of subset amplitudes|^2 / (sum over all four outcomes).
// subset must be a nonempty duplicate-free subset of the long class.
ProbabilityTable superpose(std::span<const PathPair> subset, const PhaseSettings& phases);

// Same, with a caller-supplied amplitude function (used by the self-check's
// corrupted-convention fixture).
ProbabilityTable superpose(std::span<const PathPair> subset, const PhaseSettings& phases,
                           const AmplitudeFn& amp);

// The normalization denominator sum_{o} |sum of amplitudes|^2; analytically 12
// for the full three-pair subset and 8 for any two-pair subset.
double superposition_norm(std::span<const PathPair> subset, const PhaseSettings& phases);

}  // namespace impactsim
