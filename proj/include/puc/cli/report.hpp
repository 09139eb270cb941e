#pragma once

#include <optional>
#include <span>
#include <string>

#include "json.hpp"
#include "puc/canonicalizer.hpp"
#include "puc/inference.hpp"

namespace puc::cli {

using Json = nlohmann::ordered_json;

// Rounds to 15 significant digits so serialized reports are stable.
double round_sig(double value);
// %.15g; used for canonical CSV cells.
std::string format_number(double value);

Json column_annotation_json(const std::string& name, std::size_t index,
                            const ColumnAnnotation& annotation,
                            std::span<const ParsedCell> cells,
                            std::optional<double> elapsed_seconds);

Json canonical_column_json(const std::string& name, std::size_t index,
                           const ColumnAnnotation& annotation, const CanonicalColumn* canonical,
                           std::span<const ParsedCell> cells);

// The unit a report assigns to a row: the resolved unit, the column unit for
// rows without a symbol, nothing for rejected corrections.
std::optional<std::string> reported_unit(const ColumnAnnotation& annotation, std::size_t row);

}  // namespace puc::cli
