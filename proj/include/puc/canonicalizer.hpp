#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "puc/cell_parser.hpp"
#include "puc/inference.hpp"
#include "puc/unit_kb.hpp"

namespace puc {

enum class Provenance { kConverted, kAssumedColumnUnit, kValueMissing, kNonConvertible };

std::string_view to_string(Provenance p);

struct CanonicalRow {
  std::optional<double> value;
  Provenance provenance = Provenance::kValueMissing;
};

struct CanonicalColumn {
  std::string unit;
  std::vector<std::optional<double>> values;
  std::vector<Provenance> provenance;
};

/// Rescales one row into `column_unit`. `row_unit` is nullopt for a row that
/// carried no unit symbol; its value is kept as is and tagged as assuming the
/// column unit. Throws DimensionMismatch if the two units disagree on
/// dimension.
CanonicalRow canonicalize_row(const ParsedCell& cell, const std::optional<std::string>& row_unit,
                              std::string_view column_unit, const KnowledgeBase& kb);

CanonicalColumn canonicalize_column(const ColumnAnnotation& annotation,
                                    std::span<const ParsedCell> cells, const KnowledgeBase& kb);

}  // namespace puc
