// rctverdict: batch CI classification, Bayesian reanalysis and design
// diagnostics for published trial results.
//
// Exit codes: 0 success, 2 validation error (bad input, bad flags),
// 3 internal failure. Diagnostics go to stderr; results go to stdout or
// --output.

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rctv/analysis.hpp"
#include "rctv/error.hpp"
#include "rctv/report.hpp"
#include "rctv/retrodesign.hpp"
#include "rctv/svg.hpp"
#include "rctv/trial_input.hpp"

namespace {

namespace fs = std::filesystem;
using namespace rctv;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::optional<std::string>& path, const std::string& content) {
  if (!path) {
    std::cout << content;
    return;
  }
  fs::path p(*path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file '" + *path + "'");
  out << content;
}

void write_plot(const std::string& dir, const std::string& name, const std::string& svg) {
  fs::create_directories(dir);
  std::ofstream out(fs::path(dir) / name, std::ios::binary);
  if (!out) throw ValidationError("cannot write plot file '" + name + "' in '" + dir + "'");
  out << svg;
}

std::string safe_filename(const std::string& id) {
  std::string out;
  for (char ch : id)
    out.push_back((std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' ||
                   ch == '_' || ch == '.')
                      ? ch
                      : '_');
  return out;
}

std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

// Shared flag bundle for classify/reanalyze/report.
struct CommonArgs {
  std::string input;
  std::optional<std::string> output;
  std::string format = "json";
  std::optional<std::string> plots;
  std::optional<std::string> config_path;
  std::optional<std::string> rope_text;
  std::optional<double> mcid_harm;
  std::optional<double> ni_margin;
  bool cet = false;
  double cet_alpha = 0.05;
  std::vector<std::string> prior_texts;
};

void add_io_flags(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--input", a.input, "Input file ('-' for stdin)")->required();
  cmd->add_option("--output", a.output, "Output file (default: stdout)");
  cmd->add_option("--format", a.format, "Output format: json or md")
      ->check(CLI::IsMember({"json", "md"}));
  cmd->add_option("--plots", a.plots, "Directory to write SVG plots into");
  cmd->add_option("--config", a.config_path, "INI-style configuration file");
}

void add_threshold_flags(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--rope", a.rope_text, "ROPE bounds as 'lower,upper'");
  cmd->add_option("--mcid-harm", a.mcid_harm, "Harm-side MCID threshold");
  cmd->add_option("--ni-margin", a.ni_margin, "Non-inferiority margin");
  cmd->add_flag("--cet", a.cet, "Run the conditional equivalence track");
  cmd->add_option("--cet-alpha", a.cet_alpha, "Alpha for the equivalence track");
}

AnalysisOptions build_options(const CommonArgs& a, bool reanalyze) {
  AnalysisOptions o;
  o.reanalyze = reanalyze;
  o.with_cet = a.cet;
  o.cet_alpha = a.cet_alpha;
  if (a.config_path) o.config = parse_config(read_input(*a.config_path));
  o.mcid_harm = a.mcid_harm;
  o.ni_margin = a.ni_margin;
  if (a.rope_text) {
    auto comma = a.rope_text->find(',');
    if (comma == std::string::npos)
      throw ValidationError("--rope: expected 'lower,upper'");
    try {
      o.rope = RopeInterval{std::stod(a.rope_text->substr(0, comma)),
                            std::stod(a.rope_text->substr(comma + 1))};
    } catch (const std::exception&) {
      throw ValidationError("--rope: expected numbers as 'lower,upper'");
    }
  }
  for (const auto& p : a.prior_texts) o.prior_overrides.push_back(parse_prior_override(p));
  return o;
}

void emit_forest_plots(const std::vector<AnalysisRecord>& recs, const std::string& dir,
                       const PlotOptions& popt) {
  // One forest per effect scale; mixed batches get one file per scale.
  std::map<std::string, std::vector<AnalysisRecord>> by_scale;
  for (const auto& r : recs) by_scale[scale_name(r.estimate.scale)].push_back(r);
  for (const auto& [name, group] : by_scale)
    write_plot(dir, "forest_" + lower(name) + ".svg", forest_svg(group, popt));
}

void emit_fingerprint_plots(const std::vector<AnalysisRecord>& recs,
                            const std::string& dir, const PlotOptions& popt) {
  for (const auto& r : recs)
    if (!r.posteriors.empty())
      write_plot(dir, "fingerprint_" + safe_filename(r.trial.id) + ".svg",
                 fingerprint_svg(r, popt));
}

int run_analysis(const CommonArgs& a, bool reanalyze) {
  AnalysisOptions o = build_options(a, reanalyze);
  auto inputs = parse_trials(read_input(a.input));
  auto recs = analyze_batch(inputs, o);
  write_output(a.output, render_batch(
      recs, a.format == "md" ? ReportFormat::Markdown : ReportFormat::Json));
  if (a.plots) {
    if (!recs.empty() && !reanalyze) emit_forest_plots(recs, *a.plots, o.config.plots);
    emit_fingerprint_plots(recs, *a.plots, o.config.plots);
  }
  return 0;
}

int run_report(const CommonArgs& a) {
  AnalysisOptions o = build_options(a, false);
  auto doc = nlohmann::ordered_json::parse(read_input(a.input), nullptr, false);
  if (doc.is_discarded())
    throw ValidationError("report: input is not valid JSON");
  auto recs = records_from_document(doc);
  write_output(a.output, render_batch(
      recs, a.format == "md" ? ReportFormat::Markdown : ReportFormat::Json));
  if (a.plots) {
    if (!recs.empty()) emit_forest_plots(recs, *a.plots, o.config.plots);
    emit_fingerprint_plots(recs, *a.plots, o.config.plots);
  }
  return 0;
}

struct SimArgs {
  std::string kind;
  double effect = 0.0;
  double se = 0.0;
  double alpha = 0.05;
  double target_power = 0.80;
  std::uint64_t n_sims = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::optional<std::string> output;
};

int run_simulate(const SimArgs& s) {
  nlohmann::ordered_json doc;
  if (s.kind == "retrodesign") {
    doc = retrodesign_to_json(retrodesign(s.effect, s.se, s.alpha, s.n_sims, s.seed,
                                          s.threads));
  } else if (s.kind == "curse-chain") {
    doc = curse_chain_to_json(winners_curse_chain(s.effect, s.se, s.alpha,
                                                  s.target_power, s.n_sims, s.seed));
  } else {
    throw ValidationError("simulate: unknown kind '" + s.kind +
                          "' (retrodesign, curse-chain)");
  }
  write_output(s.output, doc.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CI classification, Bayesian reanalysis and design diagnostics "
               "for published trial results"};
  app.require_subcommand(1);

  CommonArgs classify_args;
  CLI::App* classify = app.add_subcommand(
      "classify", "Six-class CI verdicts for a batch of trial records");
  add_io_flags(classify, classify_args);
  add_threshold_flags(classify, classify_args);

  CommonArgs reanalyze_args;
  CLI::App* reanalyze = app.add_subcommand(
      "reanalyze", "Verdicts plus Bayesian reanalysis under a prior grid");
  add_io_flags(reanalyze, reanalyze_args);
  add_threshold_flags(reanalyze, reanalyze_args);
  reanalyze->add_option("--prior", reanalyze_args.prior_texts,
                        "Override a grid prior: 'label=mean,sd' or 'label=off'");

  SimArgs sim_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Design diagnostics by Monte Carlo (deterministic per seed)");
  simulate->add_option("kind", sim_args.kind, "retrodesign or curse-chain")->required();
  simulate->add_option("--effect", sim_args.effect, "True effect, analysis scale")
      ->required();
  simulate->add_option("--se", sim_args.se, "Standard error of the estimate")
      ->required();
  simulate->add_option("--alpha", sim_args.alpha, "Significance level");
  simulate->add_option("--target-power", sim_args.target_power,
                       "Confirmatory target power (curse-chain)");
  simulate->add_option("--n-sims", sim_args.n_sims, "Number of simulations");
  simulate->add_option("--seed", sim_args.seed, "RNG seed")->required();
  simulate->add_option("--threads", sim_args.threads,
                       "Worker threads (0 = hardware), retrodesign only");
  simulate->add_option("--output", sim_args.output, "Output file (default: stdout)");

  CommonArgs report_args;
  report_args.format = "md";
  CLI::App* report = app.add_subcommand(
      "report", "Re-render a saved analysis document (JSON in, md/json out)");
  add_io_flags(report, report_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message to stderr
    return 2;
  }

  try {
    if (classify->parsed()) return run_analysis(classify_args, false);
    if (reanalyze->parsed()) return run_analysis(reanalyze_args, true);
    if (simulate->parsed()) return run_simulate(sim_args);
    if (report->parsed()) return run_report(report_args);
    std::cerr << "error: no subcommand given\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
