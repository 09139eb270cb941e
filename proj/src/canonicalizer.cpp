#include "puc/canonicalizer.hpp"

#include "puc/error.hpp"

namespace puc {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kConverted:
      return "converted";
    case Provenance::kAssumedColumnUnit:
      return "assumed-column-unit";
    case Provenance::kValueMissing:
      return "value-missing";
    case Provenance::kNonConvertible:
      return "non-convertible";
  }
  return "unknown";
}

CanonicalRow canonicalize_row(const ParsedCell& cell, const std::optional<std::string>& row_unit,
                              std::string_view column_unit, const KnowledgeBase& kb) {
  const UnitEntry& target = kb.entry(column_unit);
  if (row_unit) {
    const UnitEntry& source = kb.entry(*row_unit);
    if (source.dimension != target.dimension) {
      throw DimensionMismatch("row unit '" + source.name + "' (" + source.dimension +
                              ") does not match column unit '" + target.name + "' (" +
                              target.dimension + ")");
    }
  }
  if (!cell.value) return {std::nullopt, Provenance::kValueMissing};
  if (!row_unit) return {cell.value, Provenance::kAssumedColumnUnit};
  if (*row_unit == column_unit) return {cell.value, Provenance::kConverted};
  if (!kb.is_convertible(*row_unit) || !kb.is_convertible(column_unit)) {
    return {std::nullopt, Provenance::kNonConvertible};
  }
  return {*cell.value * kb.conversion_factor(*row_unit, column_unit), Provenance::kConverted};
}

CanonicalColumn canonicalize_column(const ColumnAnnotation& annotation,
                                    std::span<const ParsedCell> cells, const KnowledgeBase& kb) {
  if (cells.size() != annotation.rows.size()) {
    throw InvalidArgument("annotation has " + std::to_string(annotation.rows.size()) +
                          " rows but the column has " + std::to_string(cells.size()));
  }
  CanonicalColumn out;
  out.unit = annotation.column_unit;
  out.values.reserve(cells.size());
  out.provenance.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CanonicalRow row;
    if (annotation.label(i).kind == LabelKind::kAnomalous &&
        !annotation.resolved_unit(i).has_value()) {
      row.provenance = cells[i].value ? Provenance::kNonConvertible : Provenance::kValueMissing;
    } else {
      row = canonicalize_row(cells[i], annotation.resolved_unit(i), out.unit, kb);
    }
    out.values.push_back(row.value);
    out.provenance.push_back(row.provenance);
  }
  return out;
}

}  // namespace puc
