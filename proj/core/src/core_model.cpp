#include "impactsim/core_model.hpp"

#include <cmath>
#include <stdexcept>

namespace impactsim {

namespace {

char arm_char(Arm a) { return a == Arm::Short ? 'l' : 'L'; }

std::optional<Arm> arm_from_char(char c) {
  if (c == 'l') return Arm::Short;
  if (c == 'L') return Arm::Long;
  return std::nullopt;
}

}  // namespace

std::string label(PathPair p) {
  std::string s = "(";
  s += arm_char(p.photon1);
  s += ',';
  s += arm_char(p.photon2_first);
  s += arm_char(p.photon2_second);
  s += ')';
  return s;
}

std::string compact_label(PathPair p) {
  std::string s;
  s += arm_char(p.photon1);
  s += '-';
  s += arm_char(p.photon2_first);
  s += arm_char(p.photon2_second);
  return s;
}

std::optional<PathPair> parse_path_pair(std::string_view s) {
  // "(x,yz)" or "x-yz"
  if (s.size() == 6 && s.front() == '(' && s[2] == ',' && s.back() == ')') {
    s = s.substr(1, 4);  // "x,yz" -> treated below with separator at 1
  } else if (s.size() == 4 && (s[1] == '-' || s[1] == ',')) {
    // fall through
  } else {
    return std::nullopt;
  }
  auto p1 = arm_from_char(s[0]);
  auto p2a = arm_from_char(s[2]);
  auto p2b = arm_from_char(s[3]);
  if (!p1 || !p2a || !p2b) return std::nullopt;
  return PathPair{*p1, *p2a, *p2b};
}

ArmLengths::ArmLengths(double short_arm, double long_arm)
    : short_l_(short_arm), long_L_(long_arm) {
  if (!std::isfinite(short_arm) || !std::isfinite(long_arm)) {
    throw std::invalid_argument("arm lengths must be finite");
  }
  if (!(short_arm > 0.0) || !(long_arm > short_arm)) {
    throw std::invalid_argument("arm lengths require 0 < short < long");
  }
  // The four subensemble differences must stay pairwise distinct.
  const double d[4] = {2.0 * short_arm - long_arm, short_arm, long_arm,
                       2.0 * long_arm - short_arm};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (d[i] == d[j]) {
        throw std::invalid_argument("arm lengths give coinciding subensemble path differences");
      }
    }
  }
}

PhaseSettings::PhaseSettings(double alpha, double beta, double gamma)
    : alpha_(alpha), beta_(beta), gamma_(gamma) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma)) {
    throw std::invalid_argument("phases must be finite");
  }
}

std::string to_string(Subensemble tag) {
  switch (tag) {
    case Subensemble::TwoLongMinusShort: return "2L-l";
    case Subensemble::Long: return "L";
    case Subensemble::Short: return "l";
    case Subensemble::TwoShortMinusLong: return "2l-L";
  }
  throw std::logic_error("bad Subensemble tag");
}

std::optional<Subensemble> parse_subensemble(std::string_view s) {
  if (s == "2L-l") return Subensemble::TwoLongMinusShort;
  if (s == "L") return Subensemble::Long;
  if (s == "l") return Subensemble::Short;
  if (s == "2l-L") return Subensemble::TwoShortMinusLong;
  return std::nullopt;
}

std::string label(OutcomePair o) {
  std::string s = "(";
  s += o.sigma > 0 ? '+' : '-';
  s += ',';
  s += o.omega > 0 ? '+' : '-';
  s += ')';
  return s;
}

std::array<PathPair, 8> enumerate_path_pairs() {
  std::array<PathPair, 8> out{};
  for (int i = 0; i < 8; ++i) out[i] = PathPair::from_index(i);
  return out;
}

double path_length(PathPair p, const ArmLengths& arms, int photon) {
  auto len = [&arms](Arm a) { return a == Arm::Short ? arms.short_l() : arms.long_L(); };
  if (photon == 1) return len(p.photon1);
  if (photon == 2) return len(p.photon2_first) + len(p.photon2_second);
  throw std::invalid_argument("photon must be 1 or 2");
}

SubensembleClass classify_subensemble(PathPair p, const ArmLengths& arms) {
  const int longs = static_cast<int>(p.photon2_first == Arm::Long) +
                    static_cast<int>(p.photon2_second == Arm::Long) -
                    static_cast<int>(p.photon1 == Arm::Long);
  // longs counts net Long arms in the difference: 2 -> 2L-l, 1 -> L, 0 -> l, -1 -> 2l-L.
  Subensemble tag;
  switch (longs) {
    case 2: tag = Subensemble::TwoLongMinusShort; break;
    case 1: tag = Subensemble::Long; break;
    case 0: tag = Subensemble::Short; break;
    case -1: tag = Subensemble::TwoShortMinusLong; break;
    default: throw std::logic_error("unreachable path-pair arm count");
  }
  // The difference is evaluated in its canonical per-class form so that all
  // members of a class carry the bit-identical value exact coincidence
  // filtering relies on ((L+l)-l need not equal L in floating point).
  return SubensembleClass{tag, path_difference(tag, arms)};
}

double path_difference(Subensemble tag, const ArmLengths& arms) {
  const double l = arms.short_l();
  const double L = arms.long_L();
  switch (tag) {
    case Subensemble::TwoLongMinusShort: return 2.0 * L - l;
    case Subensemble::Long: return L;
    case Subensemble::Short: return l;
    case Subensemble::TwoShortMinusLong: return 2.0 * l - L;
  }
  throw std::logic_error("bad Subensemble tag");
}

}  // namespace impactsim
