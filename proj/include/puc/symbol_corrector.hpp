#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "puc/unit_kb.hpp"

namespace puc {

struct Correction {
  std::string original;
  std::string corrected;
  std::string unit;
  std::size_t distance = 0;

  bool operator==(const Correction&) const = default;
};

// Levenshtein distance over UTF-8 code points, unit costs.
std::size_t edit_distance(std::string_view a, std::string_view b);

/// Maps a symbol to the closest known symbol of dimension `dimension`.
/// Distances are computed after ASCII case folding; the returned symbol keeps
/// the dictionary's casing. Ties go to the shorter candidate, then to the
/// lexicographically smaller one, then to the name-sorted first unit.
Correction correct_symbol(std::string_view symbol, std::string_view dimension,
                          const KnowledgeBase& kb);

}  // namespace puc
