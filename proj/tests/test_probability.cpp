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

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

PhaseSettings random_phases(SplitMix64& rng) {
  return PhaseSettings(rng.next_double() * kTwoPi, rng.next_double() * kTwoPi,
                       rng.next_double() * kTwoPi);
}

}  // namespace

TEST_CASE("qm_joint frozen values") {
  const auto zeros = qm_joint(PhaseSettings(0, 0, 0));
  CHECK(zeros.at_index(0) == doctest::Approx(1.0 / 12).epsilon(1e-14));
  CHECK(zeros.at_index(1) == doctest::Approx(1.0 / 12).epsilon(1e-14));
  CHECK(zeros.at_index(2) == doctest::Approx(9.0 / 12).epsilon(1e-14));
  CHECK(zeros.at_index(3) == doctest::Approx(1.0 / 12).epsilon(1e-14));

  const auto quarter = qm_joint(PhaseSettings(kPi / 2, 0, 0));
  CHECK(quarter.at_index(0) == doctest::Approx(5.0 / 12).epsilon(1e-14));
  CHECK(quarter.at_index(1) == doctest::Approx(1.0 / 12).epsilon(1e-14));
  CHECK(quarter.at_index(2) == doctest::Approx(5.0 / 12).epsilon(1e-14));
  CHECK(quarter.at_index(3) == doctest::Approx(1.0 / 12).epsilon(1e-14));
}

TEST_CASE("mc_joint frozen values and mixture equivalence at zero phases") {
  const auto zeros = mc_joint(PhaseSettings(0, 0, 0));
  CHECK(zeros.at_index(0) == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(zeros.at_index(1) == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(zeros.at_index(2) == doctest::Approx(1.0 / 2).epsilon(1e-14));
  CHECK(zeros.at_index(3) == doctest::Approx(1.0 / 6).epsilon(1e-14));

  // uniform mixture of the three pairwise superpositions
  const auto m = long_class_members();
  const PhaseSettings ph(0, 0, 0);
  const std::array<std::array<PathPair, 2>, 3> subsets{
      std::array<PathPair, 2>{m[0], m[1]}, std::array<PathPair, 2>{m[0], m[2]},
      std::array<PathPair, 2>{m[1], m[2]}};
  std::array<double, 4> mix{};
  for (const auto& s : subsets) {
    const auto t = superpose(s, ph);
    for (int i = 0; i < 4; ++i) mix[i] += t.at_index(i) / 3.0;
  }
  for (int i = 0; i < 4; ++i) CHECK(mix[i] == doctest::Approx(zeros.at_index(i)).epsilon(1e-13));
}

TEST_CASE("property: both closed forms are normalized over random phases") {
  SplitMix64 rng(0x8001);
  for (int t = 0; t < 1000; ++t) {
    const PhaseSettings ph = random_phases(rng);
    double sq = 0.0, sm = 0.0;
    for (int i = 0; i < 4; ++i) {
      sq += qm_joint(ph).at_index(i);
      sm += mc_joint(ph).at_index(i);
    }
    CHECK(std::abs(sq - 1.0) <= 1e-12);
    CHECK(std::abs(sm - 1.0) <= 1e-12);
  }
}

TEST_CASE("model_joint: presets reduce to the closed forms") {
  SplitMix64 rng(0x8002);
  double max_qm = 0.0, max_mc = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const PhaseSettings ph = random_phases(rng);
    const auto from_qm_preset = model_joint(CausalModelSpec::quantum(), ph);
    const auto from_mc_preset = model_joint(CausalModelSpec::multisimultaneous(), ph);
    const auto qm = qm_joint(ph);
    const auto mc = mc_joint(ph);
    for (int i = 0; i < 4; ++i) {
      max_qm = std::max(max_qm, std::abs(from_qm_preset.at_index(i) - qm.at_index(i)));
      max_mc = std::max(max_mc, std::abs(from_mc_preset.at_index(i) - mc.at_index(i)));
    }
  }
  CHECK(max_qm <= 1e-12);
  CHECK(max_mc <= 1e-12);
}

TEST_CASE("model_joint: a single singleton component gives the uniform table") {
  const CausalModelSpec spec{{ModelComponent{{long_class_members()[0]}, 1.0}}};
  SplitMix64 rng(0x8003);
  for (int t = 0; t < 20; ++t) {
    const auto table = model_joint(spec, random_phases(rng));
    for (int i = 0; i < 4; ++i) CHECK(table.at_index(i) == doctest::Approx(0.25).epsilon(1e-14));
  }
}

TEST_CASE("CausalModelSpec validation") {
  const auto m = long_class_members();
  CHECK_THROWS_AS(CausalModelSpec({}), std::invalid_argument);
  CHECK_THROWS_AS(CausalModelSpec({ModelComponent{{m[0]}, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(CausalModelSpec({ModelComponent{{m[0]}, -1.0}, ModelComponent{{m[1]}, 2.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CausalModelSpec({ModelComponent{{}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(CausalModelSpec({ModelComponent{{m[0], m[0]}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(CausalModelSpec({ModelComponent{{*parse_path_pair("(l,ll)")}, 1.0}}),
                  std::invalid_argument);
  CHECK_NOTHROW(CausalModelSpec({ModelComponent{{m[0], m[1]}, 0.5}, ModelComponent{{m[2]}, 0.5}}));
}

TEST_CASE("marginals: frozen values at zero phases and closed-form identities") {
  const auto qm0 = qm_joint(PhaseSettings(0, 0, 0));
  const auto mc0 = mc_joint(PhaseSettings(0, 0, 0));
  CHECK(marginal_side1(qm0).first == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(marginal_side1(qm0).second == doctest::Approx(5.0 / 6).epsilon(1e-14));
  CHECK(marginal_side2(qm0).first == doctest::Approx(5.0 / 6).epsilon(1e-14));
  CHECK(marginal_side2(qm0).second == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(marginal_side1(mc0).first == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(marginal_side1(mc0).second == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(marginal_side2(mc0).first == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(marginal_side2(mc0).second == doctest::Approx(1.0 / 3).epsilon(1e-14));

  SplitMix64 rng(0x8004);
  for (int t = 0; t < 1000; ++t) {
    const PhaseSettings ph = random_phases(rng);
    const double cab = std::cos(ph.alpha() + ph.beta());
    const double cbg = std::cos(ph.beta() - ph.gamma());
    const auto qm = qm_joint(ph);
    const auto mc = mc_joint(ph);
    CHECK(std::abs(marginal_side1(qm).first - (0.5 - cab / 3.0)) <= 1e-12);
    CHECK(std::abs(marginal_side1(qm).second - (0.5 + cab / 3.0)) <= 1e-12);
    CHECK(std::abs(marginal_side2(qm).first - (0.5 + cbg / 3.0)) <= 1e-12);
    CHECK(std::abs(marginal_side2(qm).second - (0.5 - cbg / 3.0)) <= 1e-12);
    CHECK(std::abs(marginal_side1(mc).first - (0.5 - cab / 6.0)) <= 1e-12);
    CHECK(std::abs(marginal_side1(mc).second - (0.5 + cab / 6.0)) <= 1e-12);
    CHECK(std::abs(marginal_side2(mc).first - (0.5 + cbg / 6.0)) <= 1e-12);
    CHECK(std::abs(marginal_side2(mc).second - (0.5 - cbg / 6.0)) <= 1e-12);
    CHECK(std::abs(marginal_side1(qm).first + marginal_side1(qm).second - 1.0) <= 1e-12);
    CHECK(std::abs(marginal_side2(mc).first + marginal_side2(mc).second - 1.0) <= 1e-12);
  }
}

TEST_CASE("correlation_E: frozen values and closed forms") {
  CHECK(correlation_E(qm_joint(PhaseSettings(0, 0, 0))) ==
        doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(correlation_E(mc_joint(PhaseSettings(0, 0, 0))) ==
        doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(correlation_E(ProbabilityTable::uniform()) == doctest::Approx(0.0).epsilon(1e-15));

  SplitMix64 rng(0x8005);
  for (int t = 0; t < 1000; ++t) {
    const PhaseSettings ph = random_phases(rng);
    const double cag = std::cos(ph.alpha() + ph.gamma());
    CHECK(std::abs(correlation_E(qm_joint(ph)) - (2.0 / 3.0) * cag) <= 1e-12);
    CHECK(std::abs(correlation_E(mc_joint(ph)) - (1.0 / 3.0) * cag) <= 1e-12);
  }
}

TEST_CASE("singles_visibility: frozen values, uniform table, bad side") {
  const auto qm0 = qm_joint(PhaseSettings(0, 0, 0));
  const auto mc0 = mc_joint(PhaseSettings(0, 0, 0));
  CHECK(singles_visibility(qm0, 1) == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(singles_visibility(qm0, 2) == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(singles_visibility(mc0, 1) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(singles_visibility(mc0, 2) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(singles_visibility(ProbabilityTable::uniform(), 1) == 0.0);
  CHECK_THROWS_AS(singles_visibility(qm0, 3), std::invalid_argument);
}

TEST_CASE("property: quantum deviations from 1/4 are exactly twice the causal ones") {
  SplitMix64 rng(0x8006);
  for (int t = 0; t < 1000; ++t) {
    const PhaseSettings ph = random_phases(rng);
    const auto qm = qm_joint(ph);
    const auto mc = mc_joint(ph);
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs((qm.at_index(i) - 0.25) - 2.0 * (mc.at_index(i) - 0.25)) <= 1e-12);
    }
  }
}

TEST_CASE("special_settings: explicit solutions and constraint checks") {
  const PhaseSettings zero = special_settings(SpecialSettings{0, 0}, 0.0);
  CHECK(zero.alpha() == 0.0);
  CHECK(zero.beta() == 0.0);
  CHECK(zero.gamma() == 0.0);

  const PhaseSettings s11 = special_settings(SpecialSettings{1, 1}, kPi / 4);
  CHECK(s11.alpha() == doctest::Approx(3 * kPi / 4).epsilon(1e-15));
  CHECK(s11.beta() == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(s11.gamma() == doctest::Approx(kPi / 4 - kPi).epsilon(1e-15));
  CHECK(std::cos(s11.alpha() + s11.beta()) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::cos(s11.beta() - s11.gamma()) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("property: special settings with n == m pin E to 2/3 and 1/3 for any beta") {
  SplitMix64 rng(0x8007);
  for (int t = 0; t < 300; ++t) {
    const double beta = (rng.next_double() - 0.5) * 4 * kTwoPi;
    const int n = static_cast<int>(rng.next() % 7) - 3;
    const PhaseSettings ph = special_settings(SpecialSettings{n, n}, beta);
    CHECK(std::abs(correlation_E(qm_joint(ph)) - 2.0 / 3.0) <= 1e-12);
    CHECK(std::abs(correlation_E(mc_joint(ph)) - 1.0 / 3.0) <= 1e-12);
  }
}

TEST_CASE("special settings with n != m flip the sign of E by (-1)^(n+m)") {
  SplitMix64 rng(0x8008);
  for (int t = 0; t < 100; ++t) {
    const double beta = rng.next_double() * kTwoPi;
    const int n = static_cast<int>(rng.next() % 5) - 2;
    const int m = static_cast<int>(rng.next() % 5) - 2;
    const PhaseSettings ph = special_settings(SpecialSettings{n, m}, beta);
    const double sign = ((n + m) % 2 == 0) ? 1.0 : -1.0;
    CHECK(std::abs(correlation_E(qm_joint(ph)) - sign * 2.0 / 3.0) <= 1e-12);
    CHECK(std::abs(correlation_E(mc_joint(ph)) - sign * 1.0 / 3.0) <= 1e-12);
  }
}

TEST_CASE("ProbabilityTable::from_array validation") {
  CHECK_THROWS_AS(ProbabilityTable::from_array({0.5, 0.5, 0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(ProbabilityTable::from_array({-0.1, 0.5, 0.3, 0.3}), std::invalid_argument);
  CHECK_THROWS_AS(ProbabilityTable::from_array({0.25, 0.25, 0.25, 0.2500001}),
                  std::invalid_argument);
  CHECK_NOTHROW(ProbabilityTable::from_array({0.1, 0.2, 0.3, 0.4}));
  const auto t = ProbabilityTable::from_array({0.1, 0.2, 0.3, 0.4});
  CHECK(t[OutcomePair{1, 1}] == 0.1);
  CHECK(t[OutcomePair{-1, -1}] == 0.4);
}
