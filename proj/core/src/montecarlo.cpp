#include "impactsim/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#include "impactsim/amplitude.hpp"
#include "impactsim/rng.hpp"

namespace impactsim {

namespace {

int long_class_index(PathPair p) {
  const auto members = long_class_members();
  for (int i = 0; i < 3; ++i) {
    if (members[i] == p) return i;
  }
  return -1;
}

// The two possible superposition partners of long-class member k, in listing
// order; the fair coin picks between them.
std::array<PathPair, 2> partners_of(int k) {
  const auto m = long_class_members();
  switch (k) {
    case 0: return {m[1], m[2]};
    case 1: return {m[0], m[2]};
    case 2: return {m[0], m[1]};
    default: throw std::logic_error("bad long-class member index");
  }
}

}  // namespace

SimulationModel SimulationModel::custom(CausalModelSpec spec) {
  SimulationModel m(ModelKind::Custom);
  m.spec_ = std::move(spec);
  return m;
}

std::string SimulationModel::name() const {
  switch (kind_) {
    case ModelKind::Quantum: return "qm";
    case ModelKind::Multisimultaneous: return "mc";
    case ModelKind::Custom: return "custom";
  }
  throw std::logic_error("bad ModelKind");
}

OutcomePair EventGenerator::Cdf::sample(double u) const {
  for (int i = 0; i < 3; ++i) {
    if (u < c[i]) return OutcomePair::from_index(i);
  }
  return OutcomePair::from_index(3);
}

EventGenerator::EventGenerator(GeneratorConfig config) : config_(std::move(config)) {
  auto to_cdf = [](const ProbabilityTable& t) {
    Cdf cdf;
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      acc += t.at_index(i);
      cdf.c[i] = acc;
    }
    cdf.c[3] = 1.0;  // guard against rounding dust at the top
    return cdf;
  };

  uniform_cdf_ = to_cdf(ProbabilityTable::uniform());

  const auto members = long_class_members();
  switch (config_.model.kind()) {
    case ModelKind::Quantum:
      long_cdf_ = to_cdf(qm_joint(config_.phases));
      if (config_.short_class_interference) {
        // Mirrored short class: every arm flipped maps it onto the long
        // class, so its table is the full superposition via the amplitude
        // engine.
        short_cdf_ = to_cdf(superpose(members, config_.phases));
      }
      break;
    case ModelKind::Multisimultaneous:
      for (int k = 0; k < 3; ++k) {
        const auto partners = partners_of(k);
        for (int coin = 0; coin < 2; ++coin) {
          const std::array<PathPair, 2> subset{members[k], partners[coin]};
          pair_cdf_[k * 2 + coin] = to_cdf(superpose(subset, config_.phases));
        }
      }
      if (config_.short_class_interference) short_pair_cdf_ = pair_cdf_;
      break;
    case ModelKind::Custom: {
      const CausalModelSpec& spec = *config_.model.spec();
      double acc = 0.0;
      for (const ModelComponent& c : spec.components()) {
        acc += c.weight;
        component_cdf_.push_back(acc);
        component_out_.push_back(to_cdf(superpose(c.subset, config_.phases)));
      }
      component_cdf_.back() = 1.0;
      break;
    }
  }
}

EventRecord EventGenerator::event_at(std::uint64_t trial) const {
  SplitMix64 rng = trial_substream(config_.seed, trial);

  const PathPair path = PathPair::from_index(static_cast<int>(rng.next() & 7));
  const SubensembleClass cls = classify_subensemble(path, config_.arms);

  EventRecord ev;
  ev.trial_id = trial;
  ev.subensemble = cls.tag;
  ev.time_tag_delta = cls.path_difference;

  const ModelKind kind = config_.model.kind();
  const bool interfering =
      cls.tag == Subensemble::Long ||
      (cls.tag == Subensemble::Short && config_.short_class_interference);

  if (!interfering) {
    ev.outcome = uniform_cdf_.sample(rng.next_double());
  } else {
    switch (kind) {
      case ModelKind::Quantum: {
        const Cdf& cdf = cls.tag == Subensemble::Long ? long_cdf_ : short_cdf_;
        ev.outcome = cdf.sample(rng.next_double());
        break;
      }
      case ModelKind::Multisimultaneous: {
        // Short-class events interfere through their arm-flipped mirror.
        const PathPair member = cls.tag == Subensemble::Long ? path : flip_arms(path);
        const int k = long_class_index(member);
        const int coin = static_cast<int>(rng.next() & 1);
        const auto& cdfs = cls.tag == Subensemble::Long ? pair_cdf_ : short_pair_cdf_;
        ev.outcome = cdfs[k * 2 + coin].sample(rng.next_double());
        if (cls.tag == Subensemble::Long) ev.hidden_partner = partners_of(k)[coin];
        break;
      }
      case ModelKind::Custom: {
        const double u = rng.next_double();
        std::size_t comp = 0;
        while (comp + 1 < component_cdf_.size() && u >= component_cdf_[comp]) ++comp;
        ev.outcome = component_out_[comp].sample(rng.next_double());
        break;
      }
    }
  }

  const bool singleton_class = cls.tag == Subensemble::TwoLongMinusShort ||
                               cls.tag == Subensemble::TwoShortMinusLong;
  if (kind == ModelKind::Multisimultaneous || singleton_class) ev.hidden_path = path;

  return ev;
}

std::vector<EventRecord> generate_events(const GeneratorConfig& config, std::uint64_t n_pairs) {
  if (n_pairs < 1) throw std::invalid_argument("n_pairs must be at least 1");
  EventGenerator gen(config);
  std::vector<EventRecord> events;
  events.reserve(n_pairs);
  for (std::uint64_t i = 0; i < n_pairs; ++i) events.push_back(gen.next());
  return events;
}

std::vector<EventRecord> coincidence_filter(std::span<const EventRecord> events,
                                            const ArmLengths& arms, Subensemble window) {
  const double target = path_difference(window, arms);
  std::vector<EventRecord> kept;
  for (const EventRecord& ev : events) {
    if (ev.time_tag_delta == target) kept.push_back(ev);
  }
  return kept;
}

std::vector<EventRecord> blinded(std::span<const EventRecord> events) {
  std::vector<EventRecord> out(events.begin(), events.end());
  for (EventRecord& ev : out) {
    ev.hidden_path.reset();
    ev.hidden_partner.reset();
  }
  return out;
}

namespace {

EstimateSummary summarize(const std::array<std::uint64_t, 4>& counts, std::uint64_t n_total) {
  const std::uint64_t n = counts[0] + counts[1] + counts[2] + counts[3];
  if (n == 0) throw std::invalid_argument("estimate requires at least one long-class coincidence");

  EstimateSummary s;
  s.counts = counts;
  s.n_total = n_total;
  s.n_class_long = n;

  std::array<double, 4> p{};
  for (int i = 0; i < 4; ++i) p[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  s.p_hat = ProbabilityTable::from_array(p);

  s.e_hat = (static_cast<double>(counts[1] + counts[2]) - static_cast<double>(counts[0] + counts[3])) /
            static_cast<double>(n);
  s.singles_vis1 = singles_visibility(s.p_hat, 1);
  s.singles_vis2 = singles_visibility(s.p_hat, 2);
  s.std_err_e = std::sqrt(std::max(0.0, 1.0 - s.e_hat * s.e_hat) / static_cast<double>(n));
  return s;
}

}  // namespace

EstimateSummary estimate(std::span<const EventRecord> events) {
  if (events.empty()) throw std::invalid_argument("estimate requires a nonempty event stream");
  std::array<std::uint64_t, 4> counts{};
  for (const EventRecord& ev : events) {
    if (ev.subensemble == Subensemble::Long) ++counts[ev.outcome.index()];
  }
  return summarize(counts, events.size());
}

EstimateSummary estimate_from_counts(const std::array<std::uint64_t, 4>& counts) {
  return summarize(counts, counts[0] + counts[1] + counts[2] + counts[3]);
}

}  // namespace impactsim
