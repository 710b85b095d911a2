#include "impactsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "impactsim/version.hpp"

namespace impactsim {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_record(const EventRecord& ev, bool blind) {
  std::string line = std::to_string(ev.trial_id);
  line += ',';
  line += to_string(ev.subensemble);
  line += ',';
  line += fmt_double(ev.time_tag_delta);
  line += ',';
  line += ev.outcome.sigma > 0 ? "+1" : "-1";
  line += ',';
  line += ev.outcome.omega > 0 ? "+1" : "-1";
  if (!blind) {
    line += ',';
    if (ev.hidden_path) line += compact_label(*ev.hidden_path);
    line += ',';
    if (ev.hidden_partner) line += compact_label(*ev.hidden_partner);
  }
  return line;
}

std::string jsonl_record(const EventRecord& ev, bool blind) {
  std::string line = "{\"trial_id\":" + std::to_string(ev.trial_id);
  line += ",\"class\":\"" + to_string(ev.subensemble) + '"';
  line += ",\"time_tag_delta\":" + fmt_double(ev.time_tag_delta);
  line += ",\"sigma\":" + std::to_string(ev.outcome.sigma);
  line += ",\"omega\":" + std::to_string(ev.outcome.omega);
  if (!blind && ev.hidden_path) {
    line += ",\"hidden_path\":\"" + compact_label(*ev.hidden_path) + '"';
  }
  if (!blind && ev.hidden_partner) {
    line += ",\"hidden_partner\":\"" + compact_label(*ev.hidden_partner) + '"';
  }
  line += '}';
  return line;
}

json meta_json(const StreamMeta& meta) {
  return json{{"version", kVersion}, {"command", meta.command_line}, {"seed", meta.seed}};
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_pm1(const std::string& s, std::size_t line_no) {
  if (s == "+1" || s == "1") return 1;
  if (s == "-1") return -1;
  parse_fail(line_no, "expected +1 or -1, got '" + s + "'");
}

EventRecord csv_to_record(const std::string& line, std::size_t n_cols, std::size_t line_no) {
  const auto fields = split(line, ',');
  if (fields.size() != n_cols) {
    parse_fail(line_no, "expected " + std::to_string(n_cols) + " fields, got " +
                            std::to_string(fields.size()));
  }
  EventRecord ev;
  try {
    ev.trial_id = std::stoull(fields[0]);
    ev.time_tag_delta = std::stod(fields[2]);
  } catch (const std::exception&) {
    parse_fail(line_no, "bad numeric field");
  }
  const auto tag = parse_subensemble(fields[1]);
  if (!tag) parse_fail(line_no, "unknown class tag '" + fields[1] + "'");
  ev.subensemble = *tag;
  ev.outcome.sigma = parse_pm1(fields[3], line_no);
  ev.outcome.omega = parse_pm1(fields[4], line_no);
  if (n_cols == 7) {
    if (!fields[5].empty()) {
      const auto p = parse_path_pair(fields[5]);
      if (!p) parse_fail(line_no, "bad path pair '" + fields[5] + "'");
      ev.hidden_path = p;
    }
    if (!fields[6].empty()) {
      const auto p = parse_path_pair(fields[6]);
      if (!p) parse_fail(line_no, "bad path pair '" + fields[6] + "'");
      ev.hidden_partner = p;
    }
  }
  return ev;
}

EventRecord json_to_record(const std::string& line, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    parse_fail(line_no, e.what());
  }
  EventRecord ev;
  try {
    ev.trial_id = j.at("trial_id").get<std::uint64_t>();
    const auto tag = parse_subensemble(j.at("class").get<std::string>());
    if (!tag) parse_fail(line_no, "unknown class tag");
    ev.subensemble = *tag;
    ev.time_tag_delta = j.at("time_tag_delta").get<double>();
    ev.outcome.sigma = j.at("sigma").get<int>();
    ev.outcome.omega = j.at("omega").get<int>();
    if (j.contains("hidden_path")) {
      ev.hidden_path = parse_path_pair(j["hidden_path"].get<std::string>());
      if (!ev.hidden_path) parse_fail(line_no, "bad hidden_path");
    }
    if (j.contains("hidden_partner")) {
      ev.hidden_partner = parse_path_pair(j["hidden_partner"].get<std::string>());
      if (!ev.hidden_partner) parse_fail(line_no, "bad hidden_partner");
    }
  } catch (const json::exception& e) {
    parse_fail(line_no, e.what());
  }
  if ((ev.outcome.sigma != 1 && ev.outcome.sigma != -1) ||
      (ev.outcome.omega != 1 && ev.outcome.omega != -1)) {
    parse_fail(line_no, "sigma/omega must be +1 or -1");
  }
  return ev;
}

}  // namespace

void write_event_stream(std::ostream& out, std::span<const EventRecord> events,
                        const StreamMeta& meta, StreamFormat format, bool blind) {
  if (format == StreamFormat::Csv) {
    out << "# impactsim " << kVersion << " event stream\n";
    out << "# command: " << meta.command_line << "\n";
    out << "# seed: " << meta.seed << "\n";
    out << (blind ? "trial_id,class,time_tag_delta,sigma,omega"
                  : "trial_id,class,time_tag_delta,sigma,omega,hidden_path,hidden_partner")
        << "\n";
    for (const EventRecord& ev : events) out << csv_record(ev, blind) << "\n";
  } else {
    json header = meta_json(meta);
    header["format"] = "impactsim-events";
    out << header.dump() << "\n";
    for (const EventRecord& ev : events) out << jsonl_record(ev, blind) << "\n";
  }
}

std::vector<EventRecord> read_event_stream(std::istream& in) {
  std::vector<EventRecord> events;
  std::string line;
  std::size_t line_no = 0;
  std::size_t n_cols = 0;  // 0 until the csv header row is seen
  bool jsonl = false;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (first_content_line) {
      first_content_line = false;
      if (line[0] == '{') {
        jsonl = true;
        json header = json::parse(line, nullptr, false);
        if (header.is_discarded()) parse_fail(line_no, "bad stream header");
        continue;  // metadata object
      }
      const auto cols = split(line, ',');
      if (cols.empty() || cols[0] != "trial_id") parse_fail(line_no, "missing csv header row");
      n_cols = cols.size();
      if (n_cols != 5 && n_cols != 7) parse_fail(line_no, "unexpected csv column count");
      continue;
    }
    events.push_back(jsonl ? json_to_record(line, line_no) : csv_to_record(line, n_cols, line_no));
  }
  return events;
}

std::string summary_json(const EstimateSummary& summary, const StreamMeta& meta) {
  json j;
  j["meta"] = meta_json(meta);
  j["counts"] = {{"++", summary.counts[0]},
                 {"+-", summary.counts[1]},
                 {"-+", summary.counts[2]},
                 {"--", summary.counts[3]}};
  j["n_total"] = summary.n_total;
  j["n_class_L"] = summary.n_class_long;
  j["p_hat"] = {{"++", summary.p_hat.at_index(0)},
                {"+-", summary.p_hat.at_index(1)},
                {"-+", summary.p_hat.at_index(2)},
                {"--", summary.p_hat.at_index(3)}};
  j["E_hat"] = summary.e_hat;
  j["singles_visibility_side1"] = summary.singles_vis1;
  j["singles_visibility_side2"] = summary.singles_vis2;
  j["std_err_E"] = summary.std_err_e;
  return j.dump(2) + "\n";
}

std::string empty_summary_json(std::uint64_t n_total, const StreamMeta& meta) {
  json j;
  j["meta"] = meta_json(meta);
  j["counts"] = {{"++", 0}, {"+-", 0}, {"-+", 0}, {"--", 0}};
  j["n_total"] = n_total;
  j["n_class_L"] = 0;
  j["p_hat"] = nullptr;
  j["E_hat"] = nullptr;
  j["singles_visibility_side1"] = nullptr;
  j["singles_visibility_side2"] = nullptr;
  j["std_err_E"] = nullptr;
  return j.dump(2) + "\n";
}

std::string decision_report_json(std::span<const std::pair<std::string, DecisionReport>> reports,
                                 const StreamMeta& meta) {
  json arr = json::array();
  for (const auto& [source, r] : reports) {
    arr.push_back(json{{"source", source},
                       {"E_hat", r.e_hat},
                       {"std_err", r.std_err},
                       {"E_qm_predicted", r.e_qm_predicted},
                       {"E_mc_predicted", r.e_mc_predicted},
                       {"z_qm", r.z_qm},
                       {"z_mc", r.z_mc},
                       {"log_likelihood_ratio", r.log_likelihood_ratio},
                       {"verdict", to_string(r.verdict)},
                       {"alpha_level", r.alpha_level},
                       {"z_threshold", r.z_threshold},
                       {"n_class_L", r.n_class_long}});
  }
  json j;
  j["meta"] = meta_json(meta);
  j["reports"] = arr;
  return j.dump(2) + "\n";
}

namespace {

double parse_weight(const std::string& tok, std::size_t line_no) {
  const std::size_t slash = tok.find('/');
  try {
    if (slash == std::string::npos) return std::stod(tok);
    const double num = std::stod(tok.substr(0, slash));
    const double den = std::stod(tok.substr(slash + 1));
    return num / den;
  } catch (const std::exception&) {
    parse_fail(line_no, "bad weight '" + tok + "'");
  }
}

}  // namespace

CausalModelSpec parse_model_spec(std::istream& in) {
  std::vector<ModelComponent> components;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string tok;
    ModelComponent comp{};
    bool have_weight = false;
    while (tokens >> tok) {
      if (tok[0] == '#') break;
      if (!have_weight) {
        comp.weight = parse_weight(tok, line_no);
        have_weight = true;
        continue;
      }
      const auto p = parse_path_pair(tok);
      if (!p) parse_fail(line_no, "bad path-pair label '" + tok + "'");
      comp.subset.push_back(*p);
    }
    if (!have_weight) continue;  // blank or comment-only line
    if (comp.subset.empty()) parse_fail(line_no, "component has no path pairs");
    components.push_back(std::move(comp));
  }
  return CausalModelSpec(std::move(components));
}

CausalModelSpec load_model_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model spec file: " + path);
  try {
    return parse_model_spec(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string format_model_spec(const CausalModelSpec& spec) {
  std::string out = "# causal model: weight then superposing path pairs, one component per line\n";
  for (const ModelComponent& c : spec.components()) {
    out += fmt_double(c.weight);
    for (PathPair p : c.subset) {
      out += ' ';
      out += label(p);
    }
    out += '\n';
  }
  return out;
}

}  // namespace impactsim
