#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "puc/rational.hpp"

namespace puc {

// One factor of a unit's structural definition, e.g. litre = decimetre^3.
struct DerivationTerm {
  std::string base;
  int power = 1;

  bool operator==(const DerivationTerm&) const = default;
};

// 1 <unit> == factor <base>. Every explicit conversion in a dimension names
// the same base unit.
struct Conversion {
  std::string base;
  Rational factor;

  bool operator==(const Conversion&) const = default;
};

struct UnitEntry {
  std::string name;
  std::string dimension;
  std::set<std::string> surfaces;
  std::set<std::string> symbols;
  std::optional<std::string> uri;
  std::vector<DerivationTerm> derivation;
  std::optional<Conversion> conversion;

  // surfaces ∪ symbols: everything that identifies this unit in a cell.
  std::set<std::string> symbol_set() const;

  bool operator==(const UnitEntry&) const = default;
};

// Dimension names accepted by the loader.
const std::vector<std::string>& supported_dimensions();

/// Immutable dictionary of dimensions, units, unit symbols and conversion
/// factors. Built by merging one or more unit-dictionary documents.
///
/// Symbol lookup is case-sensitive: "l" and "L" are separate symbols of the
/// litre, and "M" need not mean the same thing as "m".
class KnowledgeBase {
 public:
  /// Each document is a JSON array of records carrying name, surfaces,
  /// entity, URI, dimensions and symbols, plus an optional
  /// "conversion": {"base": ..., "factor": "<exact decimal>"}.
  /// Records sharing a name are merged; conflicting attributes are errors.
  static KnowledgeBase load(std::span<const nlohmann::json> documents);
  static KnowledgeBase load_files(std::span<const std::filesystem::path> paths);
  static KnowledgeBase load_file(const std::filesystem::path& path);

  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, UnitEntry, std::less<>>& entries() const { return entries_; }

  // Sorted; K = dimensions().size().
  const std::vector<std::string>& dimensions() const { return dimensions_; }
  bool has_dimension(std::string_view dimension) const;
  bool has_unit(std::string_view unit) const;
  const UnitEntry& entry(std::string_view unit) const;

  // Name-sorted units of a dimension (size L_t).
  const std::vector<std::string>& units_of_dimension(std::string_view dimension) const;

  // Uniform p(u|t): 1/L_t for units of t, 0 for units of other dimensions.
  double unit_prior(std::string_view unit, std::string_view dimension) const;

  // Name-sorted units whose symbol set contains `symbol`; empty if none.
  const std::vector<std::string>& units_for_symbol(std::string_view symbol) const;
  const std::map<std::string, std::vector<std::string>, std::less<>>& symbol_index() const {
    return symbol_index_;
  }

  std::optional<std::string> base_unit(std::string_view dimension) const;
  bool is_convertible(std::string_view unit) const;

  // r such that (value in `from`) * r == (value in `to`).
  Rational conversion_factor_exact(std::string_view from, std::string_view to) const;
  double conversion_factor(std::string_view from, std::string_view to) const;

  bool operator==(const KnowledgeBase& other) const { return entries_ == other.entries_; }

 private:
  void build_indices();
  void resolve_conversions();

  std::map<std::string, UnitEntry, std::less<>> entries_;
  std::vector<std::string> dimensions_;
  std::map<std::string, std::vector<std::string>, std::less<>> units_by_dimension_;
  std::map<std::string, std::vector<std::string>, std::less<>> symbol_index_;
  std::map<std::string, std::string, std::less<>> base_unit_;
  // Resolved scale to the dimension's base unit, for convertible units only.
  std::map<std::string, Rational, std::less<>> to_base_;
};

}  // namespace puc
