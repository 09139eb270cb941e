// puc: annotate, canonicalize and evaluate unit-bearing CSV columns.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "puc/cli/commands.hpp"
#include "puc/error.hpp"

int main(int argc, char** argv) {
  using puc::cli::RunConfig;

  CLI::App app{"Probabilistic unit canonicalizer for CSV columns"};
  app.option_defaults()->always_capture_default(false);

  RunConfig flags;
  std::string mode = "annotate";
  std::vector<std::string> kb_paths;
  std::vector<std::string> inputs;
  std::vector<std::string> baselines;
  std::string columns;
  std::string config_path;
  std::string out;
  std::string truth;
  double w_regular = 0.0;
  double w_missing = 0.0;
  double w_anomalous = 0.0;
  int alphabet = 0;
  double threshold = 0.0;
  std::size_t cutoff = 0;

  app.add_option("inputs", inputs, "Input CSV files (evaluate mode: prediction reports)");
  app.add_option("--kb", kb_paths, "Unit dictionary file; repeat to merge several")
      ->allow_extra_args(false);
  app.add_option("--mode", mode, "annotate | canonicalize | evaluate")
      ->check(CLI::IsMember({"annotate", "canonicalize", "evaluate"}));
  app.add_option("--columns", columns, "Comma-separated column names or 0-based indices");
  app.add_option("--config", config_path, "Flat JSON config; flags override its values");
  app.add_option("--out", out, "Output path (required for canonicalize)");
  app.add_option("--truth", truth, "Ground-truth file (evaluate mode)");
  app.add_option("--baseline-report", baselines, "Second prediction set (evaluate mode)")
      ->allow_extra_args(false);
  auto* o_wr = app.add_option("--w-regular", w_regular, "Mixing proportion of regular rows");
  auto* o_wm = app.add_option("--w-missing", w_missing, "Mixing proportion of missing rows");
  auto* o_wa = app.add_option("--w-anomalous", w_anomalous, "Mixing proportion of anomalies");
  auto* o_alpha =
      app.add_option("--anomaly-alphabet-size", alphabet, "Alphabet size of the anomaly model");
  auto* o_thr = app.add_option("--confidence-threshold", threshold,
                               "Flag columns whose top dimension posterior is below this");
  auto* o_cut = app.add_option("--distance-cutoff", cutoff,
                               "Reject symbol corrections farther than this edit distance");
  app.add_flag("--timing", flags.timing, "Record per-column wall-clock time in reports");

  CLI11_PARSE(app, argc, argv);

  try {
    flags.mode = puc::cli::parse_mode(mode);
    for (const auto& p : kb_paths) flags.kb_paths.emplace_back(p);
    for (const auto& p : inputs) flags.inputs.emplace_back(p);
    for (const auto& p : baselines) flags.baseline_reports.emplace_back(p);
    if (!columns.empty()) flags.columns = CLI::detail::split(columns, ',');
    if (!out.empty()) flags.out = out;
    if (!truth.empty()) flags.truth = truth;
    if (o_wr->count()) flags.w_regular = w_regular;
    if (o_wm->count()) flags.w_missing = w_missing;
    if (o_wa->count()) flags.w_anomalous = w_anomalous;
    if (o_alpha->count()) flags.anomaly_alphabet_size = alphabet;
    if (o_thr->count()) flags.confidence_threshold = threshold;
    if (o_cut->count()) flags.distance_cutoff = cutoff;

    RunConfig config = flags;
    if (!config_path.empty()) {
      config = puc::cli::merge(puc::cli::load_config_file(config_path), flags);
    }
    return puc::cli::run(config, std::cout, std::cerr);
  } catch (const puc::Error& e) {
    std::cerr << "puc: " << e.what() << '\n';
    return 1;
  }
}
