#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "impactsim/amplitude.hpp"
#include "impactsim/probability.hpp"
#include "impactsim/rng.hpp"

using namespace impactsim;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PhaseSettings random_phases(SplitMix64& rng) {
  return PhaseSettings(rng.next_double() * kTwoPi, rng.next_double() * kTwoPi,
                       rng.next_double() * kTwoPi);
}

const PathPair kLLL = *parse_path_pair("(L,LL)");
const PathPair kLl = *parse_path_pair("(l,Ll)");
const PathPair klL = *parse_path_pair("(l,lL)");

}  // namespace

TEST_CASE("amplitude convention: signs and phase selectors per path pair") {
  SplitMix64 rng(0x7001);
  for (int t = 0; t < 50; ++t) {
    const PhaseSettings ph = random_phases(rng);
    for (OutcomePair o : all_outcomes()) {
      const OutcomeAmplitude a1 = amplitude(kLLL, o, ph);
      CHECK(a1.sign == -static_cast<double>(o.sigma));
      CHECK(a1.phase == ph.alpha());

      const OutcomeAmplitude a2 = amplitude(kLl, o, ph);
      CHECK(a2.sign == 1.0);
      CHECK(a2.phase == -ph.beta());

      const OutcomeAmplitude a3 = amplitude(klL, o, ph);
      CHECK(a3.sign == static_cast<double>(o.omega));
      CHECK(a3.phase == -ph.gamma());

      CHECK(std::abs(std::abs(a1.value()) - 1.0) < 1e-15);  // unit modulus
    }
  }
  // spot checks from the convention table
  const PhaseSettings ph(0.3, 0.5, 0.7);
  CHECK(amplitude(kLLL, OutcomePair{1, 1}, ph).sign == -1.0);
  CHECK(amplitude(klL, OutcomePair{-1, -1}, ph).sign == -1.0);
  CHECK(amplitude(klL, OutcomePair{-1, -1}, ph).phase == -0.7);
}

TEST_CASE("amplitude rejects path pairs outside the long class") {
  const PhaseSettings ph;
  for (PathPair p : enumerate_path_pairs()) {
    if (in_long_class(p)) {
      CHECK_NOTHROW(amplitude(p, OutcomePair{1, 1}, ph));
    } else {
      CHECK_THROWS_AS(amplitude(p, OutcomePair{1, 1}, ph), std::invalid_argument);
    }
  }
}

TEST_CASE("superpose: full subset at zero phases gives (1/12, 1/12, 9/12, 1/12)") {
  const auto t = superpose(long_class_members(), PhaseSettings(0, 0, 0));
  CHECK(t.at_index(0) == doctest::Approx(1.0 / 12).epsilon(1e-14));
  CHECK(t.at_index(1) == doctest::Approx(1.0 / 12).epsilon(1e-14));
  CHECK(t.at_index(2) == doctest::Approx(9.0 / 12).epsilon(1e-14));
  CHECK(t.at_index(3) == doctest::Approx(1.0 / 12).epsilon(1e-14));
}

TEST_CASE("superpose: singleton subset has no interference") {
  SplitMix64 rng(0x7002);
  for (int t = 0; t < 20; ++t) {
    const PhaseSettings ph = random_phases(rng);
    const std::vector<PathPair> single{kLLL};
    const auto table = superpose(single, ph);
    for (int i = 0; i < 4; ++i) CHECK(table.at_index(i) == doctest::Approx(0.25).epsilon(1e-14));
  }
}

TEST_CASE("superpose: pair {(L,LL),(l,Ll)} at zero phases gives (0, 0, 1/2, 1/2)") {
  const std::vector<PathPair> subset{kLLL, kLl};
  const auto t = superpose(subset, PhaseSettings(0, 0, 0));
  CHECK(t.at_index(0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(t.at_index(1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(t.at_index(2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(t.at_index(3) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("property: full superposition equals the closed form over random phases") {
  SplitMix64 rng(0x7003);
  double max_dev = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const PhaseSettings ph = random_phases(rng);
    const auto oracle = superpose(long_class_members(), ph);
    const auto closed = qm_joint(ph);
    for (int i = 0; i < 4; ++i) {
      max_dev = std::max(max_dev, std::abs(oracle.at_index(i) - closed.at_index(i)));
    }
  }
  CHECK(max_dev <= 1e-12);
}

TEST_CASE("property: every pair subset sums to 1 with entries in [0, 1/2]") {
  SplitMix64 rng(0x7004);
  const auto m = long_class_members();
  const std::array<std::array<PathPair, 2>, 3> subsets{
      std::array<PathPair, 2>{m[0], m[1]}, std::array<PathPair, 2>{m[0], m[2]},
      std::array<PathPair, 2>{m[1], m[2]}};
  for (int t = 0; t < 1000; ++t) {
    const PhaseSettings ph = random_phases(rng);
    for (const auto& subset : subsets) {
      const auto table = superpose(subset, ph);
      double sum = 0.0;
      for (int i = 0; i < 4; ++i) {
        const double p = table.at_index(i);
        CHECK(p >= -1e-13);
        CHECK(p <= 0.5 + 1e-13);
        sum += p;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("normalization denominators: 12 for the full subset, 8 for pairs") {
  SplitMix64 rng(0x7005);
  const auto m = long_class_members();
  for (int t = 0; t < 1000; ++t) {
    const PhaseSettings ph = random_phases(rng);
    CHECK(std::abs(superposition_norm(m, ph) - 12.0) <= 1e-12);
    const std::array<PathPair, 2> p01{m[0], m[1]};
    const std::array<PathPair, 2> p02{m[0], m[2]};
    const std::array<PathPair, 2> p12{m[1], m[2]};
    CHECK(std::abs(superposition_norm(p01, ph) - 8.0) <= 1e-12);
    CHECK(std::abs(superposition_norm(p02, ph) - 8.0) <= 1e-12);
    CHECK(std::abs(superposition_norm(p12, ph) - 8.0) <= 1e-12);
  }
}

TEST_CASE("property: superpose is 2*pi periodic in each phase") {
  SplitMix64 rng(0x7006);
  for (int t = 0; t < 200; ++t) {
    const PhaseSettings ph = random_phases(rng);
    const auto base = superpose(long_class_members(), ph);
    const std::array<PhaseSettings, 3> shifted{
        PhaseSettings(ph.alpha() + kTwoPi, ph.beta(), ph.gamma()),
        PhaseSettings(ph.alpha(), ph.beta() - kTwoPi, ph.gamma()),
        PhaseSettings(ph.alpha(), ph.beta(), ph.gamma() + kTwoPi)};
    for (const auto& s : shifted) {
      const auto table = superpose(long_class_members(), s);
      for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(table.at_index(i) - base.at_index(i)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("superpose rejects bad subsets") {
  const PhaseSettings ph;
  CHECK_THROWS_AS(superpose(std::vector<PathPair>{}, ph), std::invalid_argument);
  CHECK_THROWS_AS(superpose(std::vector<PathPair>{kLLL, kLLL}, ph), std::invalid_argument);
  CHECK_THROWS_AS(superpose(std::vector<PathPair>{*parse_path_pair("(l,ll)")}, ph),
                  std::invalid_argument);
  CHECK_THROWS_AS(superposition_norm(std::vector<PathPair>{}, ph), std::invalid_argument);
}
