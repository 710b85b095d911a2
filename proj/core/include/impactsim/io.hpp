#pragma once

// Serialization surfaces.
//
// Event streams come in two self-describing forms:
//   csv    '#'-prefixed comment lines (version, command, seed), then a header
//          row, then one record per line with fields in fixed order:
//          trial_id,class,time_tag_delta,sigma,omega,hidden_path,hidden_partner
//          (blinded streams drop the two hidden columns)
//   jsonl  a metadata object on the first line, then one object per record
//
// Path pairs serialize as "l-Ll" (photon-1 arm, then photon-2 arms in impact
// order); classes as 2L-l, L, l, 2l-L; sigma/omega as +1/-1.  Doubles are
// written with 17 significant digits so round-trips are exact.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "impactsim/discrimination.hpp"
#include "impactsim/montecarlo.hpp"

namespace impactsim {

enum class StreamFormat { Csv, JsonLines };

struct StreamMeta {
  std::string command_line;
  std::uint64_t seed = 0;
};

void write_event_stream(std::ostream& out, std::span<const EventRecord> events,
                        const StreamMeta& meta, StreamFormat format, bool blind = false);

// Reads either format (sniffed from the first line). Throws std::runtime_error
// on malformed input.
std::vector<EventRecord> read_event_stream(std::istream& in);

// JSON documents (single object, 2-space indent, trailing newline).
std::string summary_json(const EstimateSummary& summary, const StreamMeta& meta);
// Summary for a stream without long-class coincidences: zero counts, null
// estimates.
std::string empty_summary_json(std::uint64_t n_total, const StreamMeta& meta);
std::string decision_report_json(std::span<const std::pair<std::string, DecisionReport>> reports,
                                 const StreamMeta& meta);

// Declarative causal-model file: one component per non-comment line, weight
// first (decimal or "p/q" fraction), then the subset's path-pair labels:
//   1/3  (L,LL) (l,Ll)
// Throws std::runtime_error with a line number on parse errors and
// std::invalid_argument when the parsed spec violates its invariants.
CausalModelSpec parse_model_spec(std::istream& in);
CausalModelSpec load_model_spec(const std::string& path);
std::string format_model_spec(const CausalModelSpec& spec);

}  // namespace impactsim
