// impactsim command-line interface.
//
// Subcommands: analytic, scan, simulate, discriminate, selfcheck.
// Exit status: 0 success, 1 usage or input error, 2 invariant/self-check failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "impactsim/discrimination.hpp"
#include "impactsim/io.hpp"
#include "impactsim/montecarlo.hpp"
#include "impactsim/probability.hpp"
#include "impactsim/selfcheck.hpp"
#include "impactsim/version.hpp"

namespace {

using namespace impactsim;
using nlohmann::json;

std::string g_command_line;

constexpr double kDegToRad = std::numbers::pi / 180.0;

// ---------------------------------------------------------------------------
// shared flag groups

struct PhaseArgs {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  int special_n = 0, special_m = 0;
  bool degrees = false;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* m_opt = nullptr;
};

void add_phase_flags(CLI::App* cmd, PhaseArgs& args) {
  args.alpha_opt = cmd->add_option("--alpha", args.alpha, "Photon-1 interferometer phase");
  args.beta_opt = cmd->add_option("--beta", args.beta, "Photon-2 first interferometer phase");
  args.gamma_opt = cmd->add_option("--gamma", args.gamma, "Photon-2 second interferometer phase");
  args.n_opt = cmd->add_option("--special-n", args.special_n,
                               "Special settings: alpha+beta = n*pi (beta stays free)");
  args.m_opt = cmd->add_option("--special-m", args.special_m,
                               "Special settings: beta-gamma = m*pi (defaults to n)");
  cmd->add_flag("--degrees", args.degrees, "Interpret angles in degrees instead of radians");
  args.n_opt->excludes(args.alpha_opt)->excludes(args.gamma_opt);
  args.m_opt->needs(args.n_opt);
}

PhaseSettings resolve_phases(const PhaseArgs& args) {
  const double scale = args.degrees ? kDegToRad : 1.0;
  if (*args.n_opt) {
    if (!*args.beta_opt) {
      throw CLI::ValidationError("--special-n requires --beta (the free parameter)");
    }
    const int m = *args.m_opt ? args.special_m : args.special_n;
    return special_settings(SpecialSettings{args.special_n, m}, args.beta * scale);
  }
  if (!*args.alpha_opt || !*args.beta_opt || !*args.gamma_opt) {
    throw CLI::ValidationError(
        "provide either --alpha/--beta/--gamma or --special-n with --beta");
  }
  return PhaseSettings(args.alpha * scale, args.beta * scale, args.gamma * scale);
}

struct ModelArgs {
  std::string name = "qm";
  std::string spec_path;
  CLI::Option* name_opt = nullptr;
  CLI::Option* spec_opt = nullptr;
};

void add_model_flags(CLI::App* cmd, ModelArgs& args) {
  args.name_opt = cmd->add_option("--model", args.name, "Outcome model (qm or mc)")
                      ->check(CLI::IsMember({"qm", "mc"}));
  args.spec_opt =
      cmd->add_option("--model-spec", args.spec_path, "Custom causal-model spec file");
  args.name_opt->excludes(args.spec_opt);
}

SimulationModel resolve_model(const ModelArgs& args) {
  if (*args.spec_opt) return SimulationModel::custom(load_model_spec(args.spec_path));
  if (args.name == "qm") return SimulationModel::quantum();
  if (args.name == "mc") return SimulationModel::multisimultaneous();
  throw CLI::ValidationError("unknown model '" + args.name + "'");
}

std::filesystem::path resolve_output_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("IMPACTSIM_OUTPUT_DIR")) {
    return std::filesystem::path(dir) / p;
  }
  return p;
}

std::ofstream open_output(const std::string& path) {
  const auto resolved = resolve_output_path(path);
  std::ofstream out(resolved);
  if (!out) throw std::runtime_error("cannot open output file: " + resolved.string());
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// analytic

json table_json(const ProbabilityTable& t) {
  const auto [p1_plus, p1_minus] = marginal_side1(t);
  const auto [p2_plus, p2_minus] = marginal_side2(t);
  return json{{"p", {{"++", t.at_index(0)}, {"+-", t.at_index(1)}, {"-+", t.at_index(2)}, {"--", t.at_index(3)}}},
              {"marginal_side1", {p1_plus, p1_minus}},
              {"marginal_side2", {p2_plus, p2_minus}},
              {"visibility_side1", singles_visibility(t, 1)},
              {"visibility_side2", singles_visibility(t, 2)},
              {"E", correlation_E(t)}};
}

int run_analytic(const PhaseArgs& phase_args, bool as_json, const std::string& out_path) {
  const PhaseSettings ph = resolve_phases(phase_args);
  const ProbabilityTable qm = qm_joint(ph);
  const ProbabilityTable mc = mc_joint(ph);

  std::ostringstream body;
  if (as_json) {
    json j;
    j["meta"] = {{"version", kVersion}, {"command", g_command_line}};
    j["phases"] = {{"alpha", ph.alpha()}, {"beta", ph.beta()}, {"gamma", ph.gamma()}};
    j["qm"] = table_json(qm);
    j["mc"] = table_json(mc);
    body << j.dump(2) << "\n";
  } else {
    body << "# impactsim " << kVersion << "\n";
    body << "# command: " << g_command_line << "\n";
    body << "phases_rad: alpha=" << fmt(ph.alpha()) << " beta=" << fmt(ph.beta())
         << " gamma=" << fmt(ph.gamma()) << "\n";
    char line[128];
    auto row = [&](const char* name, double a, double b) {
      std::snprintf(line, sizeof(line), "%-12s %22.15g %22.15g\n", name, a, b);
      body << line;
    };
    std::snprintf(line, sizeof(line), "%-12s %22s %22s\n", "quantity", "QM", "MC");
    body << line;
    for (OutcomePair o : all_outcomes()) {
      row(("P" + label(o)).c_str(), qm[o], mc[o]);
    }
    const auto qm1 = marginal_side1(qm), mc1 = marginal_side1(mc);
    const auto qm2 = marginal_side2(qm), mc2 = marginal_side2(mc);
    row("P(+,.)", qm1.first, mc1.first);
    row("P(-,.)", qm1.second, mc1.second);
    row("P(.,+)", qm2.first, mc2.first);
    row("P(.,-)", qm2.second, mc2.second);
    row("vis_side1", singles_visibility(qm, 1), singles_visibility(mc, 1));
    row("vis_side2", singles_visibility(qm, 2), singles_visibility(mc, 2));
    row("E", correlation_E(qm), correlation_E(mc));
  }

  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    open_output(out_path) << body.str();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// scan

std::vector<double> parse_range(const std::string& spec, bool degrees) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = spec.find(':', start);
    if (pos == std::string::npos) {
      parts.push_back(spec.substr(start));
      break;
    }
    parts.push_back(spec.substr(start, pos - start));
    start = pos + 1;
  }
  auto to_double = [&spec](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw CLI::ValidationError("bad range component '" + s + "' in '" + spec + "'");
    }
  };
  const double scale = degrees ? kDegToRad : 1.0;
  if (parts.size() == 1) return {to_double(parts[0]) * scale};
  if (parts.size() != 3) {
    throw CLI::ValidationError("range must be a single value or start:stop:step: " + spec);
  }
  const double lo = to_double(parts[0]);
  const double hi = to_double(parts[1]);
  const double step = to_double(parts[2]);
  if (step <= 0.0) throw CLI::ValidationError("range step must be positive: " + spec);
  if (hi < lo) throw CLI::ValidationError("empty range (stop < start): " + spec);
  const double span = hi - lo;
  const auto count = static_cast<std::size_t>(std::floor(span / step + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t k = 0; k < count; ++k) values.push_back((lo + k * step) * scale);
  return values;
}

int run_scan(const std::string& alpha_spec, const std::string& beta_spec,
             const std::string& gamma_spec, bool degrees, const std::string& out_path) {
  const auto alphas = parse_range(alpha_spec, degrees);
  const auto betas = parse_range(beta_spec, degrees);
  const auto gammas = parse_range(gamma_spec, degrees);

  std::ostringstream body;
  body << "# impactsim " << kVersion << " phase scan\n";
  body << "# command: " << g_command_line << "\n";
  body << "alpha,beta,gamma,qm_pp,qm_pm,qm_mp,qm_mm,mc_pp,mc_pm,mc_mp,mc_mm,E_qm,E_mc\n";
  for (double a : alphas) {
    for (double b : betas) {
      for (double g : gammas) {
        const PhaseSettings ph(a, b, g);
        const ProbabilityTable qm = qm_joint(ph);
        const ProbabilityTable mc = mc_joint(ph);
        body << fmt(a) << ',' << fmt(b) << ',' << fmt(g);
        for (int i = 0; i < 4; ++i) body << ',' << fmt(qm.at_index(i));
        for (int i = 0; i < 4; ++i) body << ',' << fmt(mc.at_index(i));
        body << ',' << fmt(correlation_E(qm)) << ',' << fmt(correlation_E(mc)) << "\n";
      }
    }
  }

  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    open_output(out_path) << body.str();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

ArmLengths parse_arms(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) {
    throw CLI::ValidationError("--arms expects short:long, e.g. 1:2");
  }
  try {
    return ArmLengths(std::stod(spec.substr(0, colon)), std::stod(spec.substr(colon + 1)));
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError(std::string("--arms: ") + e.what());
  }
}

int run_simulate(const ModelArgs& model_args, const PhaseArgs& phase_args, std::uint64_t n_pairs,
                 std::uint64_t seed, std::string events_path, const std::string& summary_path,
                 const std::string& format_name, bool blind, const std::string& window_name,
                 bool short_class_interference, const std::string& arms_spec) {
  GeneratorConfig config;
  config.model = resolve_model(model_args);
  config.phases = resolve_phases(phase_args);
  config.arms = parse_arms(arms_spec);
  config.seed = seed;
  config.short_class_interference = short_class_interference;

  const StreamFormat format =
      format_name == "jsonl" ? StreamFormat::JsonLines : StreamFormat::Csv;
  if (events_path.empty()) {
    events_path = format == StreamFormat::Csv ? "events.csv" : "events.jsonl";
  }

  std::optional<Subensemble> window;
  if (!window_name.empty()) {
    window = parse_subensemble(window_name);
    if (!window) throw CLI::ValidationError("unknown coincidence window '" + window_name + "'");
  }

  const std::vector<EventRecord> events = generate_events(config, n_pairs);

  const StreamMeta meta{g_command_line, seed};
  auto out = open_output(events_path);
  if (window) {
    write_event_stream(out, coincidence_filter(events, config.arms, *window), meta, format, blind);
  } else {
    write_event_stream(out, events, meta, format, blind);
  }
  if (!out) throw std::runtime_error("write failed: " + events_path);

  std::size_t n_long = 0;
  for (const EventRecord& ev : events) n_long += ev.subensemble == Subensemble::Long;
  const std::string summary_doc = n_long > 0 ? summary_json(estimate(events), meta)
                                             : empty_summary_json(events.size(), meta);
  if (summary_path.empty()) {
    std::cout << summary_doc;
  } else {
    open_output(summary_path) << summary_doc;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// discriminate

int run_discriminate(const std::string& model_choice, const PhaseArgs& phase_args,
                     std::uint64_t n_pairs, std::uint64_t seed, const std::string& events_in,
                     double sigmas, std::optional<double> alpha_level,
                     const std::string& report_path) {
  const PhaseSettings ph = resolve_phases(phase_args);
  const double alpha = alpha_level ? *alpha_level : two_sided_sigma_alpha(sigmas);

  std::vector<std::pair<std::string, DecisionReport>> reports;
  if (!events_in.empty()) {
    std::ifstream in(events_in);
    if (!in) throw std::runtime_error("cannot open event stream: " + events_in);
    const auto events = read_event_stream(in);
    reports.emplace_back("ingested:" + events_in, decide(estimate(events), ph, alpha));
  } else {
    std::vector<std::string> names;
    if (model_choice == "both") {
      names = {"qm", "mc"};
    } else {
      names = {model_choice};
    }
    for (const std::string& name : names) {
      GeneratorConfig config;
      config.model =
          name == "qm" ? SimulationModel::quantum() : SimulationModel::multisimultaneous();
      config.phases = ph;
      config.seed = seed;
      const auto events = generate_events(config, n_pairs);
      reports.emplace_back(name, decide(estimate(events), ph, alpha));
    }
  }

  const StreamMeta meta{g_command_line, seed};
  const std::string doc = decision_report_json(reports, meta);
  if (report_path.empty()) {
    std::cout << doc;
  } else {
    open_output(report_path) << doc;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// selfcheck

int run_selfcheck_cmd(std::uint64_t seed, int trials, bool corrupt_sign) {
  SelfCheckOptions options;
  options.seed = seed;
  options.trials = trials;
  options.corrupt_sign = corrupt_sign;
  const auto results = run_selfcheck(options);
  for (const CheckResult& r : results) {
    std::printf("%s  %-45s max_dev=%.3e  tol=%.0e\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.max_deviation, r.tolerance);
  }
  const bool ok = all_passed(results);
  std::printf("%s: %zu checks, seed %llu, %d trials\n", ok ? "selfcheck passed" : "SELFCHECK FAILED",
              results.size(), static_cast<unsigned long long>(seed), trials);
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  std::ostringstream cmd;
  cmd << "impactsim";
  for (int i = 1; i < argc; ++i) cmd << ' ' << argv[i];
  g_command_line = cmd.str();

  CLI::App app{"impactsim: two-photon impact-series interferometry simulator"};
  app.set_version_flag("--version", std::string("impactsim ") + kVersion);
  app.require_subcommand(1);

  int exit_code = 0;

  // analytic
  auto* analytic = app.add_subcommand(
      "analytic", "Joint probabilities, marginals, visibilities and E for both models");
  static PhaseArgs analytic_phases;
  add_phase_flags(analytic, analytic_phases);
  static bool analytic_json = false;
  static std::string analytic_out;
  analytic->add_flag("--json", analytic_json, "Emit a JSON document instead of a text table");
  analytic->add_option("--out", analytic_out, "Write to file instead of stdout");
  analytic->callback(
      [&] { exit_code = run_analytic(analytic_phases, analytic_json, analytic_out); });

  // scan
  auto* scan = app.add_subcommand("scan", "Tabulate both models over a phase grid (csv)");
  static std::string scan_alpha = "0", scan_beta = "0", scan_gamma = "0", scan_out;
  static bool scan_degrees = false;
  scan->add_option("--alpha", scan_alpha, "Value or start:stop:step")->required();
  scan->add_option("--beta", scan_beta, "Value or start:stop:step")->required();
  scan->add_option("--gamma", scan_gamma, "Value or start:stop:step")->required();
  scan->add_flag("--degrees", scan_degrees, "Interpret angles in degrees");
  scan->add_option("--out", scan_out, "Write to file instead of stdout");
  scan->callback(
      [&] { exit_code = run_scan(scan_alpha, scan_beta, scan_gamma, scan_degrees, scan_out); });

  // simulate
  auto* simulate =
      app.add_subcommand("simulate", "Generate a seeded event stream and estimate observables");
  static ModelArgs sim_model;
  add_model_flags(simulate, sim_model);
  static PhaseArgs sim_phases;
  add_phase_flags(simulate, sim_phases);
  static std::uint64_t sim_n_pairs = 0, sim_seed = 0;
  static std::string sim_events_out, sim_summary_out, sim_format = "csv", sim_window,
                     sim_arms = "1:2";
  static bool sim_blind = false, sim_short_interference = false;
  simulate->add_option("--n-pairs", sim_n_pairs, "Number of photon pairs to generate")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_seed, "64-bit run seed")->required();
  simulate->add_option("--events-out", sim_events_out,
                       "Event stream path (default events.csv / events.jsonl)");
  simulate->add_option("--summary-out", sim_summary_out,
                       "Estimate summary path (default: stdout)");
  simulate->add_option("--format", sim_format, "Event stream format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  simulate->add_flag("--blinded", sim_blind, "Omit hidden-variable fields from the stream");
  simulate->add_option("--window", sim_window,
                       "Write only events in this coincidence window (2L-l, L, l, 2l-L)");
  simulate->add_flag("--short-class-interference", sim_short_interference,
                     "Short-class events interfere via their arm-flipped mirror");
  simulate->add_option("--arms", sim_arms, "Arm lengths short:long (default 1:2)");
  simulate->callback([&] {
    exit_code = run_simulate(sim_model, sim_phases, sim_n_pairs, sim_seed, sim_events_out,
                             sim_summary_out, sim_format, sim_blind, sim_window,
                             sim_short_interference, sim_arms);
  });

  // discriminate
  auto* discriminate = app.add_subcommand(
      "discriminate", "Simulate (or ingest) coincidence data and test which model fits");
  static PhaseArgs dis_phases;
  add_phase_flags(discriminate, dis_phases);
  static std::string dis_model = "both", dis_events_in, dis_report_out;
  static std::uint64_t dis_n_pairs = 100000, dis_seed = 0;
  static double dis_sigmas = 5.0;
  static std::optional<double> dis_alpha;
  static double dis_alpha_value = 0.0;
  discriminate->add_option("--model", dis_model, "Generating model: qm, mc or both")
      ->check(CLI::IsMember({"qm", "mc", "both"}));
  auto* events_in_opt =
      discriminate->add_option("--events-in", dis_events_in, "Decide on an existing stream");
  discriminate->add_option("--n-pairs", dis_n_pairs, "Pairs per simulated stream")
      ->check(CLI::PositiveNumber);
  discriminate->add_option("--seed", dis_seed, "64-bit run seed")->required();
  auto* alpha_opt = discriminate->add_option("--alpha-level", dis_alpha_value,
                                             "Two-sided significance level in (0,1)");
  discriminate
      ->add_option("--sigmas", dis_sigmas,
                   "Significance as an n-sigma two-sided level (default 5)")
      ->excludes(alpha_opt);
  events_in_opt->excludes("--model");
  discriminate->callback([&] {
    if (*alpha_opt) dis_alpha = dis_alpha_value;
    exit_code = run_discriminate(dis_model, dis_phases, dis_n_pairs, dis_seed, dis_events_in,
                                 dis_sigmas, dis_alpha, dis_report_out);
  });
  discriminate->add_option("--report-out", dis_report_out, "Report path (default: stdout)");

  // selfcheck
  auto* selfcheck = app.add_subcommand(
      "selfcheck", "Run the analytic oracle-equivalence checks (exit 2 on failure)");
  static std::uint64_t check_seed = SelfCheckOptions{}.seed;
  static int check_trials = SelfCheckOptions{}.trials;
  static bool check_corrupt = false;
  selfcheck->add_option("--seed", check_seed, "Seed for the random phase triples");
  selfcheck->add_option("--trials", check_trials, "Random phase triples per check")
      ->check(CLI::PositiveNumber);
  selfcheck->add_flag("--corrupt-sign", check_corrupt,
                      "Negative control: corrupt one amplitude sign; checks must fail");
  selfcheck->callback(
      [&] { exit_code = run_selfcheck_cmd(check_seed, check_trials, check_corrupt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, returns 0
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
