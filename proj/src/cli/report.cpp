#include "puc/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace puc::cli {

namespace {

Json optional_number(const std::optional<double>& v) {
  return v ? Json(round_sig(*v)) : Json(nullptr);
}

Json optional_string(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

}  // namespace

double round_sig(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return std::strtod(buf, nullptr);
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

std::optional<std::string> reported_unit(const ColumnAnnotation& annotation, std::size_t row) {
  if (auto u = annotation.resolved_unit(row)) return u;
  if (annotation.label(row).kind == LabelKind::kMissing) return annotation.column_unit;
  return std::nullopt;
}

Json column_annotation_json(const std::string& name, std::size_t index,
                            const ColumnAnnotation& annotation,
                            std::span<const ParsedCell> cells,
                            std::optional<double> elapsed_seconds) {
  Json col;
  col["name"] = name;
  col["index"] = index;
  col["dimension"] = annotation.dimension;
  Json posterior = Json::object();
  const auto& dp = annotation.dimension_posterior;
  for (std::size_t k = 0; k < dp.dimensions.size(); ++k) {
    posterior[dp.dimensions[k]] = round_sig(dp.probs[k]);
  }
  col["dimension_posterior"] = std::move(posterior);
  col["low_confidence"] = annotation.low_confidence;
  col["column_unit"] = annotation.column_unit;
  Json scores = Json::object();
  for (std::size_t l = 0; l < annotation.units.size(); ++l) {
    scores[annotation.units[l]] = round_sig(annotation.column_unit_scores[l]);
  }
  col["column_unit_scores"] = std::move(scores);
  if (elapsed_seconds) col["elapsed_seconds"] = *elapsed_seconds;

  Json rows = Json::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& r = annotation.rows[i];
    Json row;
    row["raw"] = cells[i].raw;
    row["parse_ok"] = cells[i].parse_ok;
    row["value"] = optional_number(cells[i].value);
    row["symbol"] = optional_string(cells[i].symbol);
    row["label"] = annotation.label(i).to_string();
    row["label_probability"] = round_sig(r.label_probs[r.label_best]);
    row["unit"] = optional_string(reported_unit(annotation, i));
    if (r.correction) {
      row["correction"] = Json{{"original", r.correction->original},
                               {"corrected", r.correction->corrected},
                               {"unit", r.correction->unit},
                               {"distance", r.correction->distance},
                               {"accepted", r.correction_accepted}};
    } else {
      row["correction"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  col["rows"] = std::move(rows);
  return col;
}

Json canonical_column_json(const std::string& name, std::size_t index,
                           const ColumnAnnotation& annotation, const CanonicalColumn* canonical,
                           std::span<const ParsedCell> cells) {
  Json col;
  col["name"] = name;
  col["index"] = index;
  col["dimension"] = annotation.dimension;
  col["low_confidence"] = annotation.low_confidence;
  col["column_unit"] = annotation.column_unit;
  col["canonicalized"] = canonical != nullptr;
  Json rows = Json::array();
  if (canonical) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      Json row;
      row["raw"] = cells[i].raw;
      row["unit"] = optional_string(reported_unit(annotation, i));
      row["value"] = optional_number(canonical->values[i]);
      row["provenance"] = std::string(to_string(canonical->provenance[i]));
      rows.push_back(std::move(row));
    }
  }
  col["rows"] = std::move(rows);
  return col;
}

}  // namespace puc::cli
