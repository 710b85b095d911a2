#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "impactsim/io.hpp"
#include "impactsim/version.hpp"

using namespace impactsim;
using nlohmann::json;

namespace {

std::vector<EventRecord> sample_events(SimulationModel model, std::uint64_t n) {
  GeneratorConfig cfg;
  cfg.model = std::move(model);
  cfg.phases = PhaseSettings(0.4, -0.9, 2.2);
  cfg.seed = 1234;
  return generate_events(cfg, n);
}

}  // namespace

TEST_CASE("csv round-trip preserves every field including hidden variables") {
  const auto events = sample_events(SimulationModel::multisimultaneous(), 500);
  std::stringstream buf;
  write_event_stream(buf, events, StreamMeta{"simulate --model mc", 1234}, StreamFormat::Csv);
  const auto back = read_event_stream(buf);
  CHECK(back == events);
}

TEST_CASE("jsonl round-trip preserves every field") {
  const auto events = sample_events(SimulationModel::multisimultaneous(), 500);
  std::stringstream buf;
  write_event_stream(buf, events, StreamMeta{"simulate --model mc", 1234},
                     StreamFormat::JsonLines);
  const auto back = read_event_stream(buf);
  CHECK(back == events);
}

TEST_CASE("blinded streams carry no hidden fields in either format") {
  const auto events = sample_events(SimulationModel::multisimultaneous(), 200);
  for (StreamFormat format : {StreamFormat::Csv, StreamFormat::JsonLines}) {
    std::stringstream buf;
    write_event_stream(buf, events, StreamMeta{"x", 1}, format, /*blind=*/true);
    const auto back = read_event_stream(buf);
    REQUIRE(back.size() == events.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      CHECK_FALSE(back[i].hidden_path.has_value());
      CHECK_FALSE(back[i].hidden_partner.has_value());
      CHECK(back[i].outcome == events[i].outcome);
      CHECK(back[i].subensemble == events[i].subensemble);
    }
  }
}

TEST_CASE("csv header carries version, command and seed as comments") {
  const auto events = sample_events(SimulationModel::quantum(), 3);
  std::stringstream buf;
  write_event_stream(buf, events, StreamMeta{"simulate --seed 77", 77}, StreamFormat::Csv);
  std::string line;
  std::getline(buf, line);
  CHECK(line.find(kVersion) != std::string::npos);
  std::getline(buf, line);
  CHECK(line == "# command: simulate --seed 77");
  std::getline(buf, line);
  CHECK(line == "# seed: 77");
  std::getline(buf, line);
  CHECK(line == "trial_id,class,time_tag_delta,sigma,omega,hidden_path,hidden_partner");
}

TEST_CASE("jsonl first line is a parseable metadata object") {
  const auto events = sample_events(SimulationModel::quantum(), 3);
  std::stringstream buf;
  write_event_stream(buf, events, StreamMeta{"simulate --seed 9", 9}, StreamFormat::JsonLines);
  std::string line;
  std::getline(buf, line);
  const json header = json::parse(line);
  CHECK(header["format"] == "impactsim-events");
  CHECK(header["version"] == kVersion);
  CHECK(header["seed"] == 9);
  // every remaining line parses and round-trips the canonical fields
  while (std::getline(buf, line)) {
    const json rec = json::parse(line);
    CHECK(rec.contains("trial_id"));
    CHECK((rec["sigma"] == 1 || rec["sigma"] == -1));
  }
}

TEST_CASE("read_event_stream rejects malformed input with a line number") {
  std::stringstream bad1("trial_id,class,time_tag_delta,sigma,omega\n0,XYZ,2,+1,-1\n");
  CHECK_THROWS_WITH_AS(read_event_stream(bad1), doctest::Contains("line 2"),
                       std::runtime_error);
  std::stringstream bad2("trial_id,class,time_tag_delta,sigma,omega\n0,L,2,+1\n");
  CHECK_THROWS_AS(read_event_stream(bad2), std::runtime_error);
  std::stringstream bad3("no header here\n");
  CHECK_THROWS_AS(read_event_stream(bad3), std::runtime_error);
  std::stringstream bad_num("trial_id,class,time_tag_delta,sigma,omega\nxx,L,2,+1,-1\n");
  CHECK_THROWS_WITH_AS(read_event_stream(bad_num), doctest::Contains("line 2"),
                       std::runtime_error);
  std::stringstream bad4("{\"format\":\"impactsim-events\"}\n{\"trial_id\":0}\n");
  CHECK_THROWS_AS(read_event_stream(bad4), std::runtime_error);
}

TEST_CASE("summary json exposes the counts and derived quantities") {
  const auto events = sample_events(SimulationModel::quantum(), 4000);
  const auto summary = estimate(events);
  const json j = json::parse(summary_json(summary, StreamMeta{"cmd", 55}));
  CHECK(j["meta"]["version"] == kVersion);
  CHECK(j["meta"]["seed"] == 55);
  CHECK(j["n_total"] == 4000);
  CHECK(j["n_class_L"] == summary.n_class_long);
  CHECK(j["counts"]["++"] == summary.counts[0]);
  CHECK(j["counts"]["--"] == summary.counts[3]);
  CHECK(j["E_hat"].get<double>() == doctest::Approx(summary.e_hat).epsilon(1e-15));
  CHECK(j["std_err_E"].get<double>() == doctest::Approx(summary.std_err_e).epsilon(1e-15));
}

TEST_CASE("decision report json carries one entry per source") {
  GeneratorConfig cfg;
  cfg.phases = PhaseSettings(0, 0, 0);
  cfg.seed = 404;
  const auto zero_events = generate_events(cfg, 30000);
  const auto report = decide(estimate(zero_events), PhaseSettings(0, 0, 0));
  std::vector<std::pair<std::string, DecisionReport>> reports{{"qm", report}};
  const json j = json::parse(decision_report_json(reports, StreamMeta{"cmd", 404}));
  REQUIRE(j["reports"].size() == 1);
  CHECK(j["reports"][0]["source"] == "qm");
  CHECK(j["reports"][0]["verdict"] == "FavorsQM");
  CHECK(j["reports"][0]["n_class_L"] == report.n_class_long);
  CHECK(j["reports"][0]["z_threshold"].get<double>() ==
        doctest::Approx(report.z_threshold).epsilon(1e-15));
}

TEST_CASE("model spec files: parse, format, round-trip") {
  std::stringstream mc_text(
      "# pairwise causal model\n"
      "1/3 (L,LL) (l,Ll)\n"
      "1/3 (L,LL) (l,lL)\n"
      "1/3 (l,Ll) (l,lL)\n");
  const auto spec = parse_model_spec(mc_text);
  REQUIRE(spec.components().size() == 3);
  const auto& preset = CausalModelSpec::multisimultaneous();
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(spec.components()[i].subset == preset.components()[i].subset);
    CHECK(spec.components()[i].weight ==
          doctest::Approx(preset.components()[i].weight).epsilon(1e-15));
  }

  // compact labels and plain decimals are accepted too
  std::stringstream alt("0.5 L-LL l-Ll\n0.5 l-lL\n");
  CHECK_NOTHROW(parse_model_spec(alt));

  // a formatted spec parses back to itself
  std::stringstream rt(format_model_spec(preset));
  const auto again = parse_model_spec(rt);
  REQUIRE(again.components().size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(again.components()[i].subset == preset.components()[i].subset);
    CHECK(again.components()[i].weight == preset.components()[i].weight);
  }
}

TEST_CASE("model spec files: errors") {
  std::stringstream bad_label("1.0 (L,XX)\n");
  CHECK_THROWS_AS(parse_model_spec(bad_label), std::runtime_error);
  std::stringstream bad_weight("w (L,LL)\n");
  CHECK_THROWS_AS(parse_model_spec(bad_weight), std::runtime_error);
  std::stringstream no_pairs("1.0\n");
  CHECK_THROWS_AS(parse_model_spec(no_pairs), std::runtime_error);
  std::stringstream bad_sum("0.5 (L,LL)\n0.4 (l,Ll)\n");
  CHECK_THROWS_AS(parse_model_spec(bad_sum), std::invalid_argument);
  std::stringstream not_long_class("1.0 (l,ll)\n");
  CHECK_THROWS_AS(parse_model_spec(not_long_class), std::invalid_argument);
  std::stringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_model_spec(empty), std::invalid_argument);
  CHECK_THROWS_AS(load_model_spec("/nonexistent/model.spec"), std::runtime_error);
}
