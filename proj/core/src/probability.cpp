#include "impactsim/probability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "impactsim/amplitude.hpp"

namespace impactsim {

namespace {

ProbabilityTable cosine_table(const PhaseSettings& ph, double coeff) {
  const double cab = std::cos(ph.alpha() + ph.beta());
  const double cag = std::cos(ph.alpha() + ph.gamma());
  const double cgb = std::cos(ph.gamma() - ph.beta());
  std::array<double, 4> p{};
  for (OutcomePair o : all_outcomes()) {
    const double s = o.sigma;
    const double w = o.omega;
    p[o.index()] = (3.0 - coeff * s * cab - coeff * s * w * cag + coeff * w * cgb) / 12.0;
  }
  return ProbabilityTable::from_array(p);
}

}  // namespace

ProbabilityTable qm_joint(const PhaseSettings& phases) { return cosine_table(phases, 2.0); }

ProbabilityTable mc_joint(const PhaseSettings& phases) { return cosine_table(phases, 1.0); }

CausalModelSpec::CausalModelSpec(std::vector<ModelComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("causal model spec needs at least one component");
  }
  double weight_sum = 0.0;
  for (const ModelComponent& c : components_) {
    if (!(c.weight > 0.0) || !std::isfinite(c.weight)) {
      throw std::invalid_argument("component weights must be positive and finite");
    }
    weight_sum += c.weight;
    if (c.subset.empty()) throw std::invalid_argument("component subset must be nonempty");
    for (std::size_t i = 0; i < c.subset.size(); ++i) {
      if (!in_long_class(c.subset[i])) {
        throw std::invalid_argument("component path pair " + label(c.subset[i]) +
                                    " is not in the long-difference class");
      }
      for (std::size_t j = i + 1; j < c.subset.size(); ++j) {
        if (c.subset[i] == c.subset[j]) {
          throw std::invalid_argument("duplicate path pair " + label(c.subset[i]) +
                                      " in component subset");
        }
      }
    }
  }
  if (std::abs(weight_sum - 1.0) > 1e-12) {
    throw std::invalid_argument("component weights must sum to 1 within 1e-12");
  }
}

const CausalModelSpec& CausalModelSpec::quantum() {
  static const CausalModelSpec spec{{ModelComponent{
      {long_class_members()[0], long_class_members()[1], long_class_members()[2]}, 1.0}}};
  return spec;
}

const CausalModelSpec& CausalModelSpec::multisimultaneous() {
  const auto m = long_class_members();
  static const CausalModelSpec spec{{ModelComponent{{m[0], m[1]}, 1.0 / 3.0},
                                     ModelComponent{{m[0], m[2]}, 1.0 / 3.0},
                                     ModelComponent{{m[1], m[2]}, 1.0 / 3.0}}};
  return spec;
}

ProbabilityTable model_joint(const CausalModelSpec& spec, const PhaseSettings& phases) {
  std::array<double, 4> p{};
  for (const ModelComponent& c : spec.components()) {
    const ProbabilityTable t = superpose(c.subset, phases);
    for (int i = 0; i < 4; ++i) p[i] += c.weight * t.at_index(i);
  }
  return ProbabilityTable::from_array(p);
}

std::pair<double, double> marginal_side1(const ProbabilityTable& t) {
  return {t.at_index(0) + t.at_index(1), t.at_index(2) + t.at_index(3)};
}

std::pair<double, double> marginal_side2(const ProbabilityTable& t) {
  return {t.at_index(0) + t.at_index(2), t.at_index(1) + t.at_index(3)};
}

double correlation_E(const ProbabilityTable& t) {
  double e = 0.0;
  for (OutcomePair o : all_outcomes()) {
    e += -static_cast<double>(o.sigma) * static_cast<double>(o.omega) * t[o];
  }
  return e;
}

double singles_visibility(const ProbabilityTable& t, int side) {
  if (side == 1) {
    auto [plus, minus] = marginal_side1(t);
    return std::abs(plus - minus);
  }
  if (side == 2) {
    auto [plus, minus] = marginal_side2(t);
    return std::abs(plus - minus);
  }
  throw std::invalid_argument("side must be 1 or 2");
}

PhaseSettings special_settings(SpecialSettings s, double beta) {
  const double pi = std::numbers::pi;
  return PhaseSettings(s.n * pi - beta, beta, beta - s.m * pi);
}

}  // namespace impactsim
