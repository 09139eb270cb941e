#include "puc/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "puc/error.hpp"

namespace puc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(std::span<const double> terms) {
  double peak = kNegInf;
  for (double t : terms) peak = std::max(peak, t);
  if (peak == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return peak + std::log(sum);
}

double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

std::vector<double> normalize_log(std::span<const double> log_weights) {
  const double total = log_sum_exp(log_weights);
  std::vector<double> out(log_weights.size(), 0.0);
  if (total == kNegInf) throw Error("all configurations have zero probability");
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp(log_weights[i] - total);
  return out;
}

// Observed symbol -> number of rows. std::map keeps iteration independent of
// row order.
using SymbolCounts = std::map<std::optional<std::string>, std::size_t>;

SymbolCounts count_symbols(std::span<const ParsedCell> cells) {
  SymbolCounts counts;
  for (const auto& cell : cells) ++counts[observed_symbol(cell)];
  return counts;
}

// Σ_u p(u|t) w_u^label over the units of one dimension.
struct DimensionWeights {
  double log_missing = 0.0;
  double log_anomalous = 0.0;
};

DimensionWeights dimension_weights(std::string_view dimension, const ModelParams& params) {
  const auto& units = params.kb().units_of_dimension(dimension);
  if (!params.has_unit_overrides()) {
    return {std::log(params.mixing().missing), std::log(params.mixing().anomalous)};
  }
  double missing = 0.0;
  double anomalous = 0.0;
  const double prior = 1.0 / static_cast<double>(units.size());
  for (const auto& u : units) {
    missing += prior * params.mixing_for(u).missing;
    anomalous += prior * params.mixing_for(u).anomalous;
  }
  return {std::log(missing), std::log(anomalous)};
}

// log p(x | t), marginalizing unit and label.
double log_symbol_likelihood(const std::optional<std::string>& x, std::string_view dimension,
                             const DimensionWeights& weights, const ModelParams& params) {
  const KnowledgeBase& kb = params.kb();
  std::vector<double> terms;
  if (x) {
    for (const auto& unit : kb.units_for_symbol(*x)) {
      if (kb.entry(unit).dimension != dimension) continue;
      terms.push_back(std::log(kb.unit_prior(unit, dimension)) +
                      std::log(params.mixing_for(unit).regular) +
                      safe_log(regular_likelihood(x, unit, params)));
    }
    terms.push_back(weights.log_anomalous + log_anomaly_likelihood(x, params));
  } else {
    terms.push_back(weights.log_missing);
  }
  return log_sum_exp(terms);
}

UnitPosterior make_unit_posterior(const std::vector<std::string>& units,
                                  std::span<const double> log_weights) {
  UnitPosterior out{units, normalize_log(log_weights), 0};
  out.best = argmax(out.probs);
  return out;
}

}  // namespace

std::string RowLabel::to_string() const {
  switch (kind) {
    case LabelKind::kRegular:
      return unit;
    case LabelKind::kMissing:
      return "missing";
    case LabelKind::kAnomalous:
      return "anomalous";
  }
  return {};
}

std::size_t argmax(std::span<const double> probs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[best]) best = i;
  }
  return best;
}

RowLabel LabelPosterior::label(std::size_t index) const {
  if (index < units.size()) return RowLabel::regular(units[index]);
  if (index == missing_index()) return RowLabel::missing();
  if (index == anomalous_index()) return RowLabel::anomalous();
  throw InvalidArgument("label index out of range");
}

DimensionPosterior dimension_posterior(std::span<const ParsedCell> cells,
                                       const ModelParams& params) {
  if (cells.empty()) throw InvalidArgument("no rows");
  const KnowledgeBase& kb = params.kb();
  const auto counts = count_symbols(cells);
  const auto& dims = kb.dimensions();
  const double log_prior = -std::log(static_cast<double>(dims.size()));

  std::vector<double> log_joint(dims.size(), log_prior);
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const auto weights = dimension_weights(dims[k], params);
    for (const auto& [symbol, n] : counts) {
      log_joint[k] +=
          static_cast<double>(n) * log_symbol_likelihood(symbol, dims[k], weights, params);
    }
  }
  DimensionPosterior out{dims, normalize_log(log_joint), 0};
  out.best = argmax(out.probs);
  return out;
}

LabelPosterior row_label_posterior(const std::optional<std::string>& x,
                                   std::string_view dimension, const ModelParams& params) {
  const KnowledgeBase& kb = params.kb();
  const auto& units = kb.units_of_dimension(dimension);
  const auto weights = dimension_weights(dimension, params);

  std::vector<double> log_joint;
  log_joint.reserve(units.size() + 2);
  for (const auto& unit : units) {
    log_joint.push_back(std::log(kb.unit_prior(unit, dimension)) +
                        std::log(params.mixing_for(unit).regular) +
                        safe_log(regular_likelihood(x, unit, params)));
  }
  log_joint.push_back(weights.log_missing + safe_log(missing_likelihood(x)));
  log_joint.push_back(weights.log_anomalous + log_anomaly_likelihood(x, params));

  LabelPosterior out{units, normalize_log(log_joint), 0};
  out.best = argmax(out.probs);
  return out;
}

UnitPosterior row_unit_posterior(const std::optional<std::string>& /*x*/,
                                 std::string_view dimension, const RowLabel& label,
                                 const ModelParams& params) {
  const KnowledgeBase& kb = params.kb();
  const auto& units = kb.units_of_dimension(dimension);
  std::vector<double> log_weights;
  log_weights.reserve(units.size());
  if (label.kind == LabelKind::kRegular) {
    if (std::find(units.begin(), units.end(), label.unit) == units.end()) {
      throw InvalidArgument("label '" + label.unit + "' is not a unit of '" +
                            std::string(dimension) + "'");
    }
    for (const auto& unit : units) log_weights.push_back(unit == label.unit ? 0.0 : kNegInf);
  } else {
    for (const auto& unit : units) {
      const auto& w = params.mixing_for(unit);
      const double wz = label.kind == LabelKind::kMissing ? w.missing : w.anomalous;
      log_weights.push_back(std::log(kb.unit_prior(unit, dimension)) + std::log(wz));
    }
  }
  return make_unit_posterior(units, log_weights);
}

UnitPosterior row_unit_marginal(const std::optional<std::string>& x, std::string_view dimension,
                                const ModelParams& params) {
  const KnowledgeBase& kb = params.kb();
  const auto& units = kb.units_of_dimension(dimension);
  const double log_missing = safe_log(missing_likelihood(x));
  const double log_anomaly = log_anomaly_likelihood(x, params);
  std::vector<double> log_weights;
  log_weights.reserve(units.size());
  for (const auto& unit : units) {
    const auto& w = params.mixing_for(unit);
    const double terms[] = {std::log(w.regular) + safe_log(regular_likelihood(x, unit, params)),
                            std::log(w.missing) + log_missing,
                            std::log(w.anomalous) + log_anomaly};
    log_weights.push_back(std::log(kb.unit_prior(unit, dimension)) + log_sum_exp(terms));
  }
  return make_unit_posterior(units, log_weights);
}

std::vector<double> column_unit_scores(std::span<const ParsedCell> cells,
                                       std::string_view dimension, const ModelParams& params) {
  if (cells.empty()) throw InvalidArgument("no rows");
  std::vector<double> scores(params.kb().units_of_dimension(dimension).size(), 0.0);
  for (const auto& [symbol, n] : count_symbols(cells)) {
    const auto marginal = row_unit_marginal(symbol, dimension, params);
    for (std::size_t l = 0; l < scores.size(); ++l) {
      scores[l] += static_cast<double>(n) * marginal.probs[l];
    }
  }
  return scores;
}

std::string column_unit(std::span<const ParsedCell> cells, std::string_view dimension,
                        const ModelParams& params) {
  const auto scores = column_unit_scores(cells, dimension, params);
  return params.kb().units_of_dimension(dimension)[argmax(scores)];
}

RowLabel ColumnAnnotation::label(std::size_t row) const {
  const auto& r = rows.at(row);
  if (r.label_best < units.size()) return RowLabel::regular(units[r.label_best]);
  return r.label_best == units.size() ? RowLabel::missing() : RowLabel::anomalous();
}

std::optional<std::string> ColumnAnnotation::resolved_unit(std::size_t row) const {
  const auto& r = rows.at(row);
  const RowLabel z = label(row);
  switch (z.kind) {
    case LabelKind::kRegular:
      return z.unit;
    case LabelKind::kAnomalous:
      if (r.correction && r.correction_accepted) return r.correction->unit;
      return std::nullopt;
    case LabelKind::kMissing:
      return std::nullopt;
  }
  return std::nullopt;
}

ColumnAnnotation annotate_column(std::span<const ParsedCell> cells, const ModelParams& params,
                                 const InferenceOptions& options) {
  ColumnAnnotation out;
  out.dimension_posterior = dimension_posterior(cells, params);
  out.dimension = out.dimension_posterior.dimension();
  out.units = params.kb().units_of_dimension(out.dimension);
  out.low_confidence = out.dimension_posterior.max_probability() < options.confidence_threshold;
  out.n_rows = cells.size();

  std::map<std::optional<std::string>, RowAnnotation> by_symbol;
  for (const auto& [symbol, n] : count_symbols(cells)) {
    RowAnnotation row;
    row.observed = symbol;
    const auto labels = row_label_posterior(symbol, out.dimension, params);
    row.label_probs = labels.probs;
    row.label_best = labels.best;
    const auto units = row_unit_posterior(symbol, out.dimension, labels.best_label(), params);
    row.unit_probs = units.probs;
    row.unit_best = units.best;
    if (labels.best == labels.anomalous_index()) {
      row.correction = correct_symbol(*symbol, out.dimension, params.kb());
      row.correction_accepted =
          !options.distance_cutoff || row.correction->distance <= *options.distance_cutoff;
    }
    by_symbol.emplace(symbol, std::move(row));
  }
  out.rows.reserve(cells.size());
  for (const auto& cell : cells) out.rows.push_back(by_symbol.at(observed_symbol(cell)));

  out.column_unit_scores = column_unit_scores(cells, out.dimension, params);
  out.column_unit = out.units[argmax(out.column_unit_scores)];
  return out;
}

}  // namespace puc
