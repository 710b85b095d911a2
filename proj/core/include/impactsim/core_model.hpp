#pragma once

// Geometry of the two-photon impact-series setup: photon 1 crosses one
// unbalanced interferometer (arms l < L), photon 2 crosses two of them in
// series.  A PathPair is the joint route of both photons; pairs sharing the
// same photon-2-minus-photon-1 path difference form one subensemble and are
// indistinguishable by arrival timing.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace impactsim {

enum class Arm : std::uint8_t { Short = 0, Long = 1 };

// Joint route of a detected pair. Photon 2 traverses two interferometers,
// in order of impact.
struct PathPair {
  Arm photon1 = Arm::Short;
  Arm photon2_first = Arm::Short;
  Arm photon2_second = Arm::Short;

  auto operator<=>(const PathPair&) const = default;

  // Canonical index 0..7: photon1 varies slowest, photon2_second fastest,
  // Short before Long.
  constexpr int index() const {
    return (static_cast<int>(photon1) << 2) | (static_cast<int>(photon2_first) << 1) |
           static_cast<int>(photon2_second);
  }
  static constexpr PathPair from_index(int i) {
    return PathPair{static_cast<Arm>((i >> 2) & 1), static_cast<Arm>((i >> 1) & 1),
                    static_cast<Arm>(i & 1)};
  }
};

// Swap Short and Long in every slot, e.g. (l,Ll) -> (L,lL).
constexpr PathPair flip_arms(PathPair p) {
  auto flip = [](Arm a) { return a == Arm::Short ? Arm::Long : Arm::Short; };
  return PathPair{flip(p.photon1), flip(p.photon2_first), flip(p.photon2_second)};
}

// Display label "(l,Ll)": photon-1 arm, then photon-2 arms in impact order.
std::string label(PathPair p);
// Delimiter-safe form "l-Ll" used in CSV fields.
std::string compact_label(PathPair p);
// Accepts both label forms; nullopt on malformed input.
std::optional<PathPair> parse_path_pair(std::string_view s);

// Interferometer arm lengths, dimensionless. Only orderings and differences
// matter to the simulation.
class ArmLengths {
 public:
  // Requires 0 < short_arm < long_arm (finite) and pairwise-distinct
  // subensemble differences 2l-L < l < L < 2L-l; throws std::invalid_argument.
  ArmLengths(double short_arm, double long_arm);

  static ArmLengths defaults() { return ArmLengths(1.0, 2.0); }

  double short_l() const { return short_l_; }
  double long_L() const { return long_L_; }

  bool operator==(const ArmLengths&) const = default;

 private:
  double short_l_;
  double long_L_;
};

// The three interferometer phases, radians, stored without range reduction.
class PhaseSettings {
 public:
  PhaseSettings() : PhaseSettings(0.0, 0.0, 0.0) {}
  // Throws std::invalid_argument on non-finite values.
  PhaseSettings(double alpha, double beta, double gamma);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }

  bool operator==(const PhaseSettings&) const = default;

 private:
  double alpha_;  // photon-1 interferometer
  double beta_;   // photon-2 first interferometer
  double gamma_;  // photon-2 second interferometer
};

// Subensembles keyed by photon-2-minus-photon-1 path difference.
enum class Subensemble : std::uint8_t {
  TwoLongMinusShort,  // difference 2L-l, only (l,LL)
  Long,               // difference L: (L,LL), (l,Ll), (l,lL)
  Short,              // difference l: (l,ll), (L,Ll), (L,lL)
  TwoShortMinusLong,  // difference 2l-L, only (L,ll)
};

std::string to_string(Subensemble tag);
std::optional<Subensemble> parse_subensemble(std::string_view s);

struct SubensembleClass {
  Subensemble tag;
  double path_difference;

  bool operator==(const SubensembleClass&) const = default;
};

// Joint detector outcome: sigma for side 1, omega for side 2, each +1 or -1.
struct OutcomePair {
  int sigma = 1;
  int omega = 1;

  auto operator<=>(const OutcomePair&) const = default;

  // Canonical index: 0 (+,+), 1 (+,-), 2 (-,+), 3 (-,-).
  constexpr int index() const { return (sigma < 0 ? 2 : 0) + (omega < 0 ? 1 : 0); }
  static constexpr OutcomePair from_index(int i) {
    return OutcomePair{(i & 2) ? -1 : 1, (i & 1) ? -1 : 1};
  }
};

constexpr std::array<OutcomePair, 4> all_outcomes() {
  return {OutcomePair{1, 1}, OutcomePair{1, -1}, OutcomePair{-1, 1}, OutcomePair{-1, -1}};
}

std::string label(OutcomePair o);  // "(+,+)"

// All 8 path pairs in canonical order, (l,ll) first, (L,LL) last.
std::array<PathPair, 8> enumerate_path_pairs();

// Members of the long-difference subensemble, in the order used throughout:
// (L,LL), (l,Ll), (l,lL).  This is also the amplitude listing order.
constexpr std::array<PathPair, 3> long_class_members() {
  return {PathPair{Arm::Long, Arm::Long, Arm::Long}, PathPair{Arm::Short, Arm::Long, Arm::Short},
          PathPair{Arm::Short, Arm::Short, Arm::Long}};
}

constexpr bool in_long_class(PathPair p) {
  for (PathPair q : long_class_members()) {
    if (q == p) return true;
  }
  return false;
}

// Total optical path of one photon: photon 1 has a single arm, photon 2 the
// sum of its two arms.  `photon` is 1 or 2.
double path_length(PathPair p, const ArmLengths& arms, int photon);

// Subensemble of a path pair; path_difference = photon-2 total minus photon-1.
SubensembleClass classify_subensemble(PathPair p, const ArmLengths& arms);

// Path difference characterizing a subensemble for the given arms.
double path_difference(Subensemble tag, const ArmLengths& arms);

}  // namespace impactsim
