#include "impactsim/probability_table.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace impactsim {

ProbabilityTable ProbabilityTable::from_array(const std::array<double, 4>& p) {
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < -1e-12 || v > 1.0 + 1e-12) {
      throw std::invalid_argument("probability entry out of [0,1]: " + std::to_string(v));
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("probabilities sum to " + std::to_string(sum) + ", not 1");
  }
  ProbabilityTable t;
  t.p_ = p;
  return t;
}

}  // namespace impactsim
