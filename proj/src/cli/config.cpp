#include "puc/cli/config.hpp"

#include <fstream>

#include "json.hpp"
#include "puc/error.hpp"

namespace puc::cli {

using nlohmann::json;

Mode parse_mode(const std::string& text) {
  if (text == "annotate") return Mode::kAnnotate;
  if (text == "canonicalize") return Mode::kCanonicalize;
  if (text == "evaluate") return Mode::kEvaluate;
  throw InvalidArgument("unknown mode '" + text + "'");
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("malformed config '" + path.string() + "': " + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("config must be a flat object");

  RunConfig c;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "kb") {
        if (value.is_string()) {
          c.kb_paths.emplace_back(value.get<std::string>());
        } else {
          for (const auto& p : value) c.kb_paths.emplace_back(p.get<std::string>());
        }
      } else if (key == "columns") {
        for (const auto& col : value) {
          c.columns.push_back(col.is_string() ? col.get<std::string>()
                                              : std::to_string(col.get<long long>()));
        }
      } else if (key == "w_regular") {
        c.w_regular = value.get<double>();
      } else if (key == "w_missing") {
        c.w_missing = value.get<double>();
      } else if (key == "w_anomalous") {
        c.w_anomalous = value.get<double>();
      } else if (key == "anomaly_alphabet_size") {
        c.anomaly_alphabet_size = value.get<int>();
      } else if (key == "confidence_threshold") {
        c.confidence_threshold = value.get<double>();
      } else if (key == "distance_cutoff") {
        if (!value.is_null()) c.distance_cutoff = value.get<std::size_t>();
      } else if (key == "report_version") {
        c.report_version = value.get<int>();
      } else {
        throw InvalidArgument("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw InvalidArgument("bad value in config '" + path.string() + "': " + e.what());
  }
  // Relative KB paths are relative to the config file.
  for (auto& p : c.kb_paths) {
    if (p.is_relative()) p = path.parent_path() / p;
  }
  return c;
}

RunConfig merge(RunConfig base, const RunConfig& overlay) {
  base.mode = overlay.mode;
  if (!overlay.kb_paths.empty()) base.kb_paths = overlay.kb_paths;
  if (!overlay.inputs.empty()) base.inputs = overlay.inputs;
  if (!overlay.columns.empty()) base.columns = overlay.columns;
  if (overlay.out) base.out = overlay.out;
  if (overlay.truth) base.truth = overlay.truth;
  if (!overlay.baseline_reports.empty()) base.baseline_reports = overlay.baseline_reports;
  if (overlay.w_regular) base.w_regular = overlay.w_regular;
  if (overlay.w_missing) base.w_missing = overlay.w_missing;
  if (overlay.w_anomalous) base.w_anomalous = overlay.w_anomalous;
  if (overlay.anomaly_alphabet_size) base.anomaly_alphabet_size = overlay.anomaly_alphabet_size;
  if (overlay.confidence_threshold) base.confidence_threshold = overlay.confidence_threshold;
  if (overlay.distance_cutoff) base.distance_cutoff = overlay.distance_cutoff;
  base.timing = base.timing || overlay.timing;
  if (overlay.report_version != kReportVersion) base.report_version = overlay.report_version;
  return base;
}

MixingProportions mixing_proportions(const RunConfig& config) {
  MixingProportions w;
  if (config.w_regular) w.regular = *config.w_regular;
  if (config.w_missing) w.missing = *config.w_missing;
  if (config.w_anomalous) w.anomalous = *config.w_anomalous;
  w.validate();
  return w;
}

InferenceOptions inference_options(const RunConfig& config) {
  InferenceOptions o;
  if (config.confidence_threshold) o.confidence_threshold = *config.confidence_threshold;
  o.distance_cutoff = config.distance_cutoff;
  return o;
}

}  // namespace puc::cli
