#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "puc/cell_parser.hpp"
#include "puc/prob_model.hpp"
#include "puc/symbol_corrector.hpp"

namespace puc {

enum class LabelKind { kRegular, kMissing, kAnomalous };

// A row label: one of the dimension's units, missing, or anomalous.
struct RowLabel {
  LabelKind kind = LabelKind::kMissing;
  std::string unit;  // set iff kind == kRegular

  static RowLabel regular(std::string unit) { return {LabelKind::kRegular, std::move(unit)}; }
  static RowLabel missing() { return {LabelKind::kMissing, {}}; }
  static RowLabel anomalous() { return {LabelKind::kAnomalous, {}}; }

  std::string to_string() const;
  bool operator==(const RowLabel&) const = default;
};

// Index of the largest entry; ties go to the lowest index.
std::size_t argmax(std::span<const double> probs);

struct DimensionPosterior {
  std::vector<std::string> dimensions;  // the KB's sorted dimension list
  std::vector<double> probs;
  std::size_t best = 0;

  const std::string& dimension() const { return dimensions[best]; }
  double max_probability() const { return probs[best]; }
};

// p(z | t, x) over the labels [unit_1 .. unit_L, missing, anomalous].
struct LabelPosterior {
  std::vector<std::string> units;
  std::vector<double> probs;  // size units.size() + 2
  std::size_t best = 0;

  std::size_t missing_index() const { return units.size(); }
  std::size_t anomalous_index() const { return units.size() + 1; }
  RowLabel label(std::size_t index) const;
  RowLabel best_label() const { return label(best); }
};

// A distribution over the units of one dimension.
struct UnitPosterior {
  std::vector<std::string> units;
  std::vector<double> probs;
  std::size_t best = 0;

  const std::string& best_unit() const { return units[best]; }
};

// Posterior over column dimension, marginalizing row units and labels:
//   p(t=k | x) ∝ p(t=k) Π_i Σ_u p(u|k) [w^u p(x_i|u) + w^m p(x_i|m) + w^a p(x_i|a)]
// with a uniform p(t). Evaluated in log space over the distinct observed
// symbols. Throws InvalidArgument on an empty column.
DimensionPosterior dimension_posterior(std::span<const ParsedCell> cells,
                                       const ModelParams& params);

LabelPosterior row_label_posterior(const std::optional<std::string>& x,
                                   std::string_view dimension, const ModelParams& params);

// p(u | t, z, x). Given z the symbol carries no further information on u, so
// this is p(u | t) weighted by the probability that u produces label z: a
// point mass for a regular label, the prior for missing/anomalous labels
// under global mixing proportions.
UnitPosterior row_unit_posterior(const std::optional<std::string>& x, std::string_view dimension,
                                 const RowLabel& label, const ModelParams& params);

// p(u | t, x) with the label marginalized out.
UnitPosterior row_unit_marginal(const std::optional<std::string>& x, std::string_view dimension,
                                const ModelParams& params);

// Σ_i p(u_i = l | t, x_i) for every unit l of the dimension (name order).
std::vector<double> column_unit_scores(std::span<const ParsedCell> cells,
                                       std::string_view dimension, const ModelParams& params);

// argmax of column_unit_scores; ties go to the name-sorted first unit.
std::string column_unit(std::span<const ParsedCell> cells, std::string_view dimension,
                        const ModelParams& params);

struct InferenceOptions {
  // Columns whose top dimension posterior falls below this are flagged.
  double confidence_threshold = 0.5;
  // Corrections farther than this are reported but not applied. Off by default.
  std::optional<std::size_t> distance_cutoff;
};

struct RowAnnotation {
  std::optional<std::string> observed;
  std::vector<double> label_probs;  // over LabelPosterior's label order
  std::size_t label_best = 0;
  std::vector<double> unit_probs;   // p(u | t, best label, x)
  std::size_t unit_best = 0;
  std::optional<Correction> correction;  // present iff the best label is anomalous
  bool correction_accepted = false;
};

struct ColumnAnnotation {
  DimensionPosterior dimension_posterior;
  std::string dimension;
  std::vector<std::string> units;  // units of `dimension`, name order
  std::vector<RowAnnotation> rows;
  std::string column_unit;
  std::vector<double> column_unit_scores;
  bool low_confidence = false;
  std::size_t n_rows = 0;

  RowLabel label(std::size_t row) const;
  // The unit a row is expressed in: its regular label, or the unit of an
  // accepted correction. nullopt for missing-symbol rows and for anomalous
  // rows whose correction was rejected.
  std::optional<std::string> resolved_unit(std::size_t row) const;
};

ColumnAnnotation annotate_column(std::span<const ParsedCell> cells, const ModelParams& params,
                                 const InferenceOptions& options = {});

}  // namespace puc
