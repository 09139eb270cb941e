#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "puc/inference.hpp"
#include "puc/prob_model.hpp"

namespace puc::cli {

enum class Mode { kAnnotate, kCanonicalize, kEvaluate };

Mode parse_mode(const std::string& text);

inline constexpr int kReportVersion = 1;

// Everything a run needs. Optional fields left empty fall back to the
// defaults of the model and inference options.
struct RunConfig {
  Mode mode = Mode::kAnnotate;
  std::vector<std::filesystem::path> kb_paths;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::string> columns;  // names or 0-based indices; empty = all
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> truth;
  std::vector<std::filesystem::path> baseline_reports;

  std::optional<double> w_regular;
  std::optional<double> w_missing;
  std::optional<double> w_anomalous;
  std::optional<int> anomaly_alphabet_size;
  std::optional<double> confidence_threshold;
  std::optional<std::size_t> distance_cutoff;
  bool timing = false;
  int report_version = kReportVersion;
};

/// Reads a flat JSON object with any of: kb (string or list), columns,
/// w_regular, w_missing, w_anomalous, anomaly_alphabet_size,
/// confidence_threshold, distance_cutoff, report_version.
RunConfig load_config_file(const std::filesystem::path& path);

// Fields set in `overlay` replace those in `base`.
RunConfig merge(RunConfig base, const RunConfig& overlay);

MixingProportions mixing_proportions(const RunConfig& config);
InferenceOptions inference_options(const RunConfig& config);

}  // namespace puc::cli
