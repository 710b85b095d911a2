#pragma once

#include <array>

#include "impactsim/core_model.hpp"

namespace impactsim {

// Joint probabilities over the four detector outcome pairs, indexed
// canonically (+,+), (+,-), (-,+), (-,-).  Entries lie in [0,1] and sum to 1
// within 1e-12; from_array enforces this.
class ProbabilityTable {
 public:
  ProbabilityTable() : p_{0.25, 0.25, 0.25, 0.25} {}

  static ProbabilityTable uniform() { return ProbabilityTable{}; }
  // Throws std::invalid_argument if entries are out of range or do not sum to 1.
  static ProbabilityTable from_array(const std::array<double, 4>& p);

  double operator[](OutcomePair o) const { return p_[o.index()]; }
  double at_index(int i) const { return p_.at(i); }
  const std::array<double, 4>& values() const { return p_; }

  bool operator==(const ProbabilityTable&) const = default;

 private:
  std::array<double, 4> p_;
};

}  // namespace impactsim
