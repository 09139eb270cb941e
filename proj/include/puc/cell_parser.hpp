#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace puc {

// One row of a column, split into numeric value and unit symbol.
struct ParsedCell {
  std::string raw;
  std::optional<double> value;
  std::optional<std::string> symbol;  // never empty, never padded, no trailing '.'
  bool parse_ok = true;

  bool operator==(const ParsedCell&) const = default;
};

/// Splits a cell into value and unit symbol.
///
/// The suffix form "<sign><number><space><symbol>" is tried first, where the
/// number is a fraction (1/4), a decimal with '.' or ',' (9,1 is 9.1) or an
/// integer with an optional trailing dot (12.), and the symbol is made of
/// word characters, whitespace and . ! ? \ -. When that yields no number,
/// the prefix form "<symbol><space><number>" is tried ("$ 1012", "$159000").
/// Empty or blank cells parse as missing entries; anything else that fits
/// neither form gives parse_ok == false.
ParsedCell parse_cell(std::string_view text);

// Symbol observed by the model: the parsed symbol, or the trimmed raw text of
// a cell that failed to parse. nullopt means "no symbol".
std::optional<std::string> observed_symbol(const ParsedCell& cell);

}  // namespace puc
