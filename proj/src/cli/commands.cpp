#include "puc/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <set>

#include "puc/error.hpp"
#include "puc/eval.hpp"

#ifndef PUC_DATA_DIR
#define PUC_DATA_DIR "data"
#endif

namespace puc::cli {

namespace {

std::vector<std::size_t> select_columns(const std::vector<std::string>& header,
                                        const std::vector<std::string>& selectors) {
  std::vector<std::size_t> out;
  if (selectors.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i) out.push_back(i);
    return out;
  }
  for (const auto& sel : selectors) {
    auto it = std::find(header.begin(), header.end(), sel);
    if (it != header.end()) {
      out.push_back(static_cast<std::size_t>(it - header.begin()));
      continue;
    }
    const bool numeric = !sel.empty() && std::all_of(sel.begin(), sel.end(), [](char c) {
      return c >= '0' && c <= '9';
    });
    if (numeric && std::stoull(sel) < header.size()) {
      out.push_back(std::stoull(sel));
      continue;
    }
    throw InvalidArgument("unknown column '" + sel + "'");
  }
  return out;
}

CsvTable read_input(const std::filesystem::path& path) {
  CsvTable table = read_csv_file(path);
  if (table.rows.empty()) throw InvalidArgument("no rows in '" + path.string() + "'");
  return table;
}

std::vector<ParsedCell> parse_column(const CsvTable& table, std::size_t column) {
  std::vector<ParsedCell> cells;
  cells.reserve(table.rows.size());
  for (const auto& row : table.rows) cells.push_back(parse_cell(row[column]));
  return cells;
}

ModelParams params_for(const RunConfig& config) {
  return make_params(load_kb(config), mixing_proportions(config),
                     config.anomaly_alphabet_size.value_or(128));
}

struct AnnotatedColumn {
  std::vector<ParsedCell> cells;
  ColumnAnnotation annotation;
  double elapsed_seconds = 0.0;
};

std::vector<AnnotatedColumn> annotate_columns(const CsvTable& table,
                                              const std::vector<std::size_t>& columns,
                                              const ModelParams& params,
                                              const InferenceOptions& options) {
  std::vector<std::future<AnnotatedColumn>> jobs;
  jobs.reserve(columns.size());
  for (std::size_t c : columns) {
    jobs.push_back(std::async(std::launch::async, [&table, &params, &options, c] {
      const auto start = std::chrono::steady_clock::now();
      AnnotatedColumn out;
      out.cells = parse_column(table, c);
      out.annotation = annotate_column(out.cells, params, options);
      out.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return out;
    }));
  }
  std::vector<AnnotatedColumn> out;
  out.reserve(jobs.size());
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

// ---- evaluation ------------------------------------------------------------

struct ColumnTruth {
  std::string dimension;
  std::vector<RowValueUnit> rows;
};

struct ColumnPrediction {
  std::string dimension;
  std::vector<RowValueUnit> rows;
};

using ColumnKey = std::pair<std::string, std::string>;  // dataset, column

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

void check_version(const Json& doc, const std::filesystem::path& path, int expected) {
  if (!doc.is_object() || !doc.contains("version") || doc["version"] != expected) {
    throw InvalidArgument("schema mismatch: '" + path.string() + "' is not a version " +
                          std::to_string(expected) + " document");
  }
}

std::optional<double> json_number(const Json& j) {
  return j.is_number() ? std::optional<double>(j.get<double>()) : std::nullopt;
}

std::optional<std::string> json_string(const Json& j) {
  return j.is_string() ? std::optional<std::string>(j.get<std::string>()) : std::nullopt;
}

std::vector<RowValueUnit> read_rows(const Json& rows) {
  std::vector<RowValueUnit> out;
  for (const auto& r : rows) {
    out.push_back({json_number(r.value("value", Json())), json_string(r.value("unit", Json()))});
  }
  return out;
}

using PredictionSet = std::map<ColumnKey, ColumnPrediction>;

void add_predictions(PredictionSet& set, const Json& doc) {
  for (const auto& ds : doc.at("datasets")) {
    const auto dataset = ds.at("name").get<std::string>();
    for (const auto& col : ds.at("columns")) {
      ColumnPrediction p;
      p.dimension = col.at("dimension").get<std::string>();
      p.rows = read_rows(col.at("rows"));
      set[{dataset, col.at("name").get<std::string>()}] = std::move(p);
    }
  }
}

struct TruthSet {
  std::vector<std::string> datasets;  // file order
  std::vector<std::pair<ColumnKey, ColumnTruth>> columns;
};

TruthSet read_truth(const std::filesystem::path& path, int version) {
  const Json doc = read_json(path);
  check_version(doc, path, version);
  TruthSet truth;
  try {
    for (const auto& ds : doc.at("datasets")) {
      const auto dataset = ds.at("name").get<std::string>();
      truth.datasets.push_back(dataset);
      for (const auto& col : ds.at("columns")) {
        ColumnTruth t;
        t.dimension = col.at("dimension").get<std::string>();
        if (col.contains("rows")) t.rows = read_rows(col["rows"]);
        truth.columns.push_back({{dataset, col.at("name").get<std::string>()}, std::move(t)});
      }
    }
  } catch (const Json::exception& e) {
    throw InvalidArgument("malformed ground truth '" + path.string() + "': " + e.what());
  }
  return truth;
}

struct SetScores {
  std::vector<std::string> predicted_dimensions;  // aligned with truth.columns
  std::vector<std::pair<std::string, UnitAccuracy>> per_dataset;
  Json json;
};

Json optional_json(const std::optional<double>& v) {
  return v ? Json(round_sig(*v)) : Json(nullptr);
}

Json dimension_metrics(const std::vector<std::string>& pred,
                       const std::vector<std::string>& truth) {
  std::set<std::string> dims(truth.begin(), truth.end());
  for (const auto& p : pred) {
    if (!p.empty() && p != "none") dims.insert(p);
  }
  Json jaccard = Json::object();
  for (const auto& d : dims) jaccard[d] = optional_json(jaccard_per_dimension(pred, truth, d));
  Json out;
  out["columns"] = truth.size();
  out["overall_accuracy"] = round_sig(overall_accuracy(pred, truth));
  out["jaccard"] = std::move(jaccard);
  return out;
}

SetScores score_predictions(const PredictionSet& predictions, const TruthSet& truth) {
  SetScores s;
  std::vector<std::string> true_dims;
  std::map<std::string, std::pair<std::vector<RowValueUnit>, std::vector<RowValueUnit>>> rows;
  for (const auto& [key, t] : truth.columns) {
    true_dims.push_back(t.dimension);
    auto it = predictions.find(key);
    s.predicted_dimensions.push_back(it == predictions.end() ? "none" : it->second.dimension);
    if (t.rows.empty()) continue;
    auto& [pred_rows, true_rows] = rows[key.first];
    if (it == predictions.end()) {
      pred_rows.resize(pred_rows.size() + t.rows.size());
    } else {
      if (it->second.rows.size() != t.rows.size()) {
        throw InvalidArgument("column '" + key.second + "' of '" + key.first + "' has " +
                              std::to_string(it->second.rows.size()) +
                              " predicted rows but " + std::to_string(t.rows.size()) +
                              " annotated rows");
      }
      pred_rows.insert(pred_rows.end(), it->second.rows.begin(), it->second.rows.end());
    }
    true_rows.insert(true_rows.end(), t.rows.begin(), t.rows.end());
  }

  s.json["dimension_inference"] = dimension_metrics(s.predicted_dimensions, true_dims);
  Json datasets = Json::array();
  std::vector<double> accuracies;
  for (const auto& name : truth.datasets) {
    auto it = rows.find(name);
    if (it == rows.end()) continue;
    const auto acc = unit_identification_accuracy(it->second.first, it->second.second);
    s.per_dataset.emplace_back(name, acc);
    accuracies.push_back(acc.unit_accuracy);
    datasets.push_back(Json{{"name", name},
                            {"rows", acc.rows},
                            {"accuracy", round_sig(acc.unit_accuracy)},
                            {"value_accuracy", round_sig(acc.value_accuracy)}});
  }
  Json units;
  units["datasets"] = std::move(datasets);
  units["mean_accuracy"] = accuracies.empty() ? Json(nullptr) : Json(round_sig(mean_accuracy(accuracies)));
  s.json["unit_identification"] = std::move(units);
  return s;
}

Json t_test_json(std::span<const double> a, std::span<const double> b) {
  try {
    const auto r = paired_t_test(a, b);
    return Json{{"t", round_sig(r.t)}, {"p", round_sig(r.p)}, {"df", r.degrees_of_freedom}};
  } catch (const InvalidArgument& e) {
    return Json{{"error", e.what()}};
  }
}

Json mcnemar_json(std::size_t n01, std::size_t n10) {
  Json out{{"n01", n01}, {"n10", n10}};
  try {
    out["p"] = round_sig(mcnemar_exact(n01, n10));
  } catch (const InvalidArgument& e) {
    out["error"] = e.what();
  }
  return out;
}

// Significance tests over a table of published per-dataset accuracies.
Json evaluate_published_accuracies(const Json& doc) {
  const auto methods = doc.at("methods").get<std::vector<std::string>>();
  std::map<std::string, std::vector<double>> acc;
  for (const auto& ds : doc.at("datasets")) {
    for (const auto& m : methods) acc[m].push_back(ds.at("accuracy").at(m).get<double>());
  }
  Json out;
  out["kind"] = "published-unit-accuracy";
  out["datasets"] = doc.at("datasets").size();
  Json means = Json::object();
  for (const auto& m : methods) means[m] = round_sig(mean_accuracy(acc[m]));
  out["mean_accuracy"] = std::move(means);
  Json tests = Json::array();
  for (const auto& pair : doc.at("comparisons")) {
    const auto a = pair.at(0).get<std::string>();
    const auto b = pair.at(1).get<std::string>();
    Json t = t_test_json(acc.at(a), acc.at(b));
    tests.push_back(Json{{"a", a}, {"b", b}, {"paired_t_test", std::move(t)}});
  }
  out["comparisons"] = std::move(tests);
  return out;
}

// Dimension metrics per method plus exact McNemar against the reference.
Json evaluate_published_predictions(const Json& doc) {
  const auto methods = doc.at("methods").get<std::vector<std::string>>();
  const auto reference = doc.at("reference").get<std::string>();
  std::vector<std::string> truth;
  std::map<std::string, std::vector<std::string>> pred;
  for (const auto& col : doc.at("columns")) {
    truth.push_back(col.at("truth").get<std::string>());
    for (const auto& m : methods) pred[m].push_back(col.at("predictions").at(m).get<std::string>());
  }
  Json out;
  out["kind"] = "published-dimension-predictions";
  Json per_method = Json::object();
  for (const auto& m : methods) per_method[m] = dimension_metrics(pred[m], truth);
  out["methods"] = std::move(per_method);
  Json tests = Json::array();
  for (const auto& m : methods) {
    if (m == reference) continue;
    std::size_t n01 = 0;
    std::size_t n10 = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const bool ref_ok = pred.at(reference)[i] == truth[i];
      const bool other_ok = pred.at(m)[i] == truth[i];
      n01 += (ref_ok && !other_ok) ? 1 : 0;
      n10 += (!ref_ok && other_ok) ? 1 : 0;
    }
    tests.push_back(Json{{"a", reference}, {"b", m}, {"mcnemar_exact", mcnemar_json(n01, n10)}});
  }
  out["comparisons"] = std::move(tests);
  return out;
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + path.string() + "'");
  f << doc.dump(2) << '\n';
}

}  // namespace

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("PUC_DATA_DIR"); env && *env) return env;
  return PUC_DATA_DIR;
}

std::filesystem::path default_kb_path() { return data_dir() / "units.json"; }

std::shared_ptr<const KnowledgeBase> load_kb(const RunConfig& config) {
  if (config.kb_paths.empty()) {
    return std::make_shared<const KnowledgeBase>(KnowledgeBase::load_file(default_kb_path()));
  }
  return std::make_shared<const KnowledgeBase>(KnowledgeBase::load_files(config.kb_paths));
}

Json run_annotate(const RunConfig& config) {
  if (config.inputs.empty()) throw InvalidArgument("no input CSV given");
  const ModelParams params = params_for(config);
  const InferenceOptions options = inference_options(config);

  Json report;
  report["version"] = config.report_version;
  report["kind"] = "annotation";
  Json datasets = Json::array();
  for (const auto& path : config.inputs) {
    const CsvTable table = read_input(path);
    const auto columns = select_columns(table.header, config.columns);
    const auto annotated = annotate_columns(table, columns, params, options);
    Json ds;
    ds["name"] = path.stem().string();
    Json cols = Json::array();
    for (std::size_t j = 0; j < columns.size(); ++j) {
      const auto& a = annotated[j];
      cols.push_back(column_annotation_json(
          table.header[columns[j]], columns[j], a.annotation, a.cells,
          config.timing ? std::optional<double>(a.elapsed_seconds) : std::nullopt));
    }
    ds["columns"] = std::move(cols);
    datasets.push_back(std::move(ds));
  }
  report["datasets"] = std::move(datasets);
  return report;
}

CanonicalizeOutput run_canonicalize(const RunConfig& config) {
  if (config.inputs.size() != 1) {
    throw InvalidArgument("canonicalize takes exactly one input CSV");
  }
  const ModelParams params = params_for(config);
  const auto& path = config.inputs.front();
  CanonicalizeOutput out;
  out.table = read_input(path);
  const auto columns = select_columns(out.table.header, config.columns);
  const auto annotated = annotate_columns(out.table, columns, params, inference_options(config));

  out.report["version"] = config.report_version;
  out.report["kind"] = "canonicalization";
  Json ds;
  ds["name"] = path.stem().string();
  Json cols = Json::array();
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const std::size_t c = columns[j];
    const auto& a = annotated[j];
    const std::string name = out.table.header[c];
    // Columns without a confident dimension are left untouched.
    if (a.annotation.low_confidence) {
      cols.push_back(canonical_column_json(name, c, a.annotation, nullptr, a.cells));
      continue;
    }
    const CanonicalColumn canonical = canonicalize_column(a.annotation, a.cells, params.kb());
    for (std::size_t i = 0; i < out.table.rows.size(); ++i) {
      auto& cell = out.table.rows[i][c];
      if (canonical.values[i]) {
        cell = format_number(*canonical.values[i]);
      } else if (canonical.provenance[i] == Provenance::kValueMissing) {
        cell.clear();
      }
    }
    out.table.header[c] = name + " (" + canonical.unit + ")";
    cols.push_back(canonical_column_json(name, c, a.annotation, &canonical, a.cells));
  }
  ds["columns"] = std::move(cols);
  out.report["datasets"] = Json::array({std::move(ds)});
  return out;
}

Json run_evaluate(const RunConfig& config) {
  if (config.inputs.empty()) throw InvalidArgument("no prediction report given");
  Json report;
  report["version"] = config.report_version;
  report["kind"] = "evaluation";

  PredictionSet predictions;
  bool have_predictions = false;
  Json published = Json::array();
  try {
    for (const auto& path : config.inputs) {
      const Json doc = read_json(path);
      check_version(doc, path, config.report_version);
      const auto kind = doc.value("kind", std::string());
      if (kind == "annotation") {
        add_predictions(predictions, doc);
        have_predictions = true;
      } else if (kind == "published-unit-accuracy") {
        published.push_back(evaluate_published_accuracies(doc));
      } else if (kind == "published-dimension-predictions") {
        published.push_back(evaluate_published_predictions(doc));
      } else {
        throw InvalidArgument("schema mismatch: '" + path.string() +
                              "' has unsupported kind '" + kind + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("schema mismatch: ") + e.what());
  }
  if (!published.empty()) report["published"] = std::move(published);
  if (!have_predictions) {
    if (!config.baseline_reports.empty()) {
      throw InvalidArgument("--baseline-report needs an annotation report to compare with");
    }
    return report;
  }

  if (!config.truth) throw InvalidArgument("evaluate mode needs --truth");
  const TruthSet truth = read_truth(*config.truth, config.report_version);
  SetScores primary = score_predictions(predictions, truth);
  report["predictions"] = primary.json;

  if (!config.baseline_reports.empty()) {
    PredictionSet baseline;
    try {
      for (const auto& path : config.baseline_reports) {
        const Json doc = read_json(path);
        check_version(doc, path, config.report_version);
        if (doc.value("kind", std::string()) != "annotation") {
          throw InvalidArgument("schema mismatch: baseline '" + path.string() +
                                "' is not an annotation report");
        }
        add_predictions(baseline, doc);
      }
    } catch (const Json::exception& e) {
      throw InvalidArgument(std::string("schema mismatch: ") + e.what());
    }
    SetScores base = score_predictions(baseline, truth);
    report["baseline"] = base.json;

    std::vector<double> a;
    std::vector<double> b;
    for (std::size_t i = 0; i < primary.per_dataset.size(); ++i) {
      a.push_back(primary.per_dataset[i].second.unit_accuracy);
      b.push_back(base.per_dataset[i].second.unit_accuracy);
    }
    std::size_t n01 = 0;
    std::size_t n10 = 0;
    for (std::size_t i = 0; i < truth.columns.size(); ++i) {
      const auto& t = truth.columns[i].second.dimension;
      const bool primary_ok = primary.predicted_dimensions[i] == t;
      const bool base_ok = base.predicted_dimensions[i] == t;
      n01 += (primary_ok && !base_ok) ? 1 : 0;
      n10 += (!primary_ok && base_ok) ? 1 : 0;
    }
    Json comparison;
    comparison["paired_t_test"] = t_test_json(a, b);
    comparison["mcnemar_exact"] = mcnemar_json(n01, n10);
    report["comparison"] = std::move(comparison);
  }
  return report;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.mode) {
      case Mode::kAnnotate:
      case Mode::kEvaluate: {
        const Json report =
            config.mode == Mode::kAnnotate ? run_annotate(config) : run_evaluate(config);
        if (config.out) {
          write_json_file(*config.out, report);
        } else {
          out << report.dump(2) << '\n';
        }
        return 0;
      }
      case Mode::kCanonicalize: {
        if (!config.out) throw InvalidArgument("canonicalize mode needs --out");
        const auto result = run_canonicalize(config);
        std::ofstream csv(*config.out, std::ios::binary);
        if (!csv) throw InvalidArgument("cannot write '" + config.out->string() + "'");
        write_csv(csv, result.table);
        auto sidecar = *config.out;
        sidecar += ".report.json";
        write_json_file(sidecar, result.report);
        return 0;
      }
    }
  } catch (const Error& e) {
    err << "puc: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "puc: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace puc::cli
