#pragma once

// Seeded generation of photon-pair event streams, coincidence-window
// filtering, and estimation of the observables from coincidence counts.
//
// Draw discipline (fixed; every event is a pure function of the run seed and
// its trial index, via rng.hpp substreams):
//   1. one 64-bit word; its low three bits select the path pair by canonical
//      index (two fair beam-splitter entries per photon, 8 equiprobable pairs)
//   2. pairwise-causal runs only, when the event's class superposes: one
//      64-bit word; bit 0 is the fair coin choosing the superposition partner
//      (0 -> first, 1 -> second of the other two class members in listing
//      order)
//   3. one 53-bit uniform double; inverse-CDF lookup over the applicable
//      outcome table in canonical outcome order
//      (custom-spec runs use two such doubles: component, then outcome)

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "impactsim/core_model.hpp"
#include "impactsim/probability.hpp"

namespace impactsim {

// One generated photon pair.  time_tag_delta is the photon-2 minus photon-1
// arrival difference in arm-length units; with idealized detectors it equals
// the class path difference exactly.  hidden_path/hidden_partner expose the
// causal model's internal variables for auditing: hidden_path is present in
// pairwise-causal runs and for singleton classes (where the path is implied),
// hidden_partner only in pairwise-causal runs for the long class.
struct EventRecord {
  std::uint64_t trial_id = 0;
  Subensemble subensemble = Subensemble::Long;
  double time_tag_delta = 0.0;
  OutcomePair outcome{};
  std::optional<PathPair> hidden_path;
  std::optional<PathPair> hidden_partner;

  bool operator==(const EventRecord&) const = default;
};

enum class ModelKind {
  Quantum,            // long-class outcomes from the full three-pair superposition
  Multisimultaneous,  // literal pairwise rules: drawn path, fair-coin partner,
                      // two-pair superposition
  Custom,             // component drawn by weight, outcome from its subset table
};

class SimulationModel {
 public:
  static SimulationModel quantum() { return SimulationModel(ModelKind::Quantum); }
  static SimulationModel multisimultaneous() {
    return SimulationModel(ModelKind::Multisimultaneous);
  }
  static SimulationModel custom(CausalModelSpec spec);

  ModelKind kind() const { return kind_; }
  // Non-null for Custom.
  const CausalModelSpec* spec() const { return spec_ ? &*spec_ : nullptr; }
  std::string name() const;

 private:
  explicit SimulationModel(ModelKind kind) : kind_(kind) {}
  ModelKind kind_;
  std::optional<CausalModelSpec> spec_;
};

struct GeneratorConfig {
  SimulationModel model = SimulationModel::quantum();
  PhaseSettings phases{};
  ArmLengths arms = ArmLengths::defaults();
  std::uint64_t seed = 0;
  // Off (default): short-class outcomes are uniform, like the singleton
  // classes.  On: the short class interferes like the long class with every
  // arm flipped, its tables built through the amplitude engine.
  bool short_class_interference = false;
};

// Precomputes all outcome tables at construction; event_at(i) is O(1) and
// independent of call order.
class EventGenerator {
 public:
  explicit EventGenerator(GeneratorConfig config);

  EventRecord event_at(std::uint64_t trial) const;

  // Sequential convenience: events for trials 0..n-1 in order.
  EventRecord next() { return event_at(next_trial_++); }

  const GeneratorConfig& config() const { return config_; }

 private:
  struct Cdf {
    std::array<double, 4> c{};
    OutcomePair sample(double u) const;
  };

  GeneratorConfig config_;
  std::uint64_t next_trial_ = 0;

  Cdf uniform_cdf_;
  Cdf long_cdf_;                      // Quantum: full-superposition table
  std::array<Cdf, 6> pair_cdf_;       // Multisimultaneous: [member][coin]
  std::vector<double> component_cdf_; // Custom: cumulative weights
  std::vector<Cdf> component_out_;    // Custom: per-component outcome tables
  Cdf short_cdf_;                     // short class when interference enabled
  std::array<Cdf, 6> short_pair_cdf_;
};

// Events for trials 0..n_pairs-1. n_pairs >= 1.
std::vector<EventRecord> generate_events(const GeneratorConfig& config, std::uint64_t n_pairs);

// Keeps exactly the events whose time tag equals the selected class's path
// difference (idealized coincidence electronics: exact match).
std::vector<EventRecord> coincidence_filter(std::span<const EventRecord> events,
                                            const ArmLengths& arms, Subensemble window);

// Copy with hidden variables removed: what a real experiment records.
std::vector<EventRecord> blinded(std::span<const EventRecord> events);

// Observables estimated from the long-class coincidence counts R[outcome].
struct EstimateSummary {
  std::array<std::uint64_t, 4> counts{};  // canonical outcome order
  std::uint64_t n_total = 0;
  std::uint64_t n_class_long = 0;
  ProbabilityTable p_hat;
  double e_hat = 0.0;
  double singles_vis1 = 0.0;
  double singles_vis2 = 0.0;
  double std_err_e = 0.0;  // sqrt((1 - e_hat^2) / n_class_long)
};

// Counts long-class events in `events` (other classes only contribute to
// n_total).  Throws std::invalid_argument when no long-class event is present.
EstimateSummary estimate(std::span<const EventRecord> events);

// Summary built directly from the four coincidence counts.
EstimateSummary estimate_from_counts(const std::array<std::uint64_t, 4>& counts);

}  // namespace impactsim
