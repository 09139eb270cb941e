#include "puc/unit_kb.hpp"

#include <algorithm>
#include <fstream>
#include <functional>

#include "puc/error.hpp"

namespace puc {

namespace {

using nlohmann::json;

std::string record_location(std::size_t document, std::size_t record) {
  return "document " + std::to_string(document) + ", record " + std::to_string(record);
}

std::set<std::string> string_list(const json& record, const char* key, const std::string& where) {
  std::set<std::string> out;
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) return out;
  if (!it->is_array()) throw LoadError(where + ": '" + key + "' must be a list of strings");
  for (const auto& item : *it) {
    if (!item.is_string()) throw LoadError(where + ": '" + key + "' must be a list of strings");
    auto s = item.get<std::string>();
    if (!s.empty()) out.insert(std::move(s));
  }
  return out;
}

DerivationTerm parse_derivation_term(const json& term, const std::string& where) {
  if (!term.is_object() || !term.contains("base") || !term["base"].is_string() ||
      !term.contains("power") || !term["power"].is_number_integer()) {
    throw LoadError(where + ": derivation terms need a string 'base' and integer 'power'");
  }
  DerivationTerm out{term["base"].get<std::string>(), term["power"].get<int>()};
  if (out.power == 0) throw LoadError(where + ": derivation power must be nonzero");
  return out;
}

std::vector<DerivationTerm> parse_derivation(const json& record, const std::string& where) {
  std::vector<DerivationTerm> out;
  auto it = record.find("dimensions");
  if (it == record.end() || it->is_null()) return out;
  if (it->is_object()) {
    out.push_back(parse_derivation_term(*it, where));
  } else if (it->is_array()) {
    for (const auto& term : *it) out.push_back(parse_derivation_term(term, where));
  } else {
    throw LoadError(where + ": 'dimensions' must be an object or a list");
  }
  return out;
}

std::optional<Conversion> parse_conversion(const json& record, const std::string& where) {
  auto it = record.find("conversion");
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (!it->is_object() || !it->contains("base") || !(*it)["base"].is_string() ||
      !it->contains("factor")) {
    throw LoadError(where + ": 'conversion' needs 'base' and 'factor'");
  }
  const json& factor = (*it)["factor"];
  Rational value;
  try {
    if (factor.is_string()) {
      value = parse_rational(factor.get<std::string>());
    } else if (factor.is_number_integer()) {
      value = Rational(factor.get<long long>());
    } else {
      throw LoadError(where + ": conversion factor must be a decimal string");
    }
  } catch (const InvalidArgument& e) {
    throw LoadError(where + ": " + e.what());
  }
  if (value <= 0) throw LoadError(where + ": conversion factor must be positive");
  return Conversion{(*it)["base"].get<std::string>(), value};
}

UnitEntry parse_record(const json& record, const std::string& where) {
  if (!record.is_object()) throw LoadError(where + ": record is not an object");
  auto name = record.find("name");
  if (name == record.end() || !name->is_string() || name->get<std::string>().empty()) {
    throw LoadError(where + ": record is missing 'name'");
  }
  auto entity = record.find("entity");
  if (entity == record.end() || !entity->is_string() || entity->get<std::string>().empty()) {
    throw LoadError(where + ": record '" + name->get<std::string>() + "' is missing 'entity'");
  }
  UnitEntry e;
  e.name = name->get<std::string>();
  e.dimension = entity->get<std::string>();
  e.surfaces = string_list(record, "surfaces", where);
  e.symbols = string_list(record, "symbols", where);
  for (const char* key : {"URI", "uri"}) {
    auto uri = record.find(key);
    if (uri != record.end() && uri->is_string()) e.uri = uri->get<std::string>();
  }
  e.derivation = parse_derivation(record, where);
  e.conversion = parse_conversion(record, where);
  return e;
}

template <typename T>
void merge_optional(std::optional<T>& into, const std::optional<T>& from, const std::string& unit,
                    const char* what) {
  if (!from) return;
  if (into && *into != *from) {
    throw LoadError("unit '" + unit + "' has conflicting " + what + " across documents");
  }
  into = from;
}

}  // namespace

std::set<std::string> UnitEntry::symbol_set() const {
  std::set<std::string> out = symbols;
  out.insert(surfaces.begin(), surfaces.end());
  return out;
}

const std::vector<std::string>& supported_dimensions() {
  static const std::vector<std::string> kDimensions = {
      "acceleration", "amount of substance", "angle", "area", "capacitance",
      "catalytic activity", "charge", "currency", "current", "data storage",
      "data transfer rate", "dimensionless", "dynamic viscosity", "electric potential",
      "electrical conductance", "electrical resistance", "energy", "flux density", "force",
      "frequency", "illuminance", "inductance", "instance frequency", "irradiance",
      "kinematic viscosity", "length", "linear mass density", "luminance", "luminous flux",
      "luminous intensity", "magnetic field", "magnetic flux", "magnetomotive force", "mass",
      "mass flow", "power", "pressure", "radiation absorbed dose", "radiation exposure",
      "radioactivity", "sound level", "speed", "temperature", "time", "torque",
      "typographical element", "volume", "volume (lumber)", "volumetric flow"};
  return kDimensions;
}

KnowledgeBase KnowledgeBase::load(std::span<const json> documents) {
  KnowledgeBase kb;
  std::map<std::string, std::string> first_seen;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    const json& doc = documents[d];
    if (!doc.is_array()) {
      throw LoadError("document " + std::to_string(d) + " is not a list of records");
    }
    for (std::size_t r = 0; r < doc.size(); ++r) {
      const std::string where = record_location(d, r);
      UnitEntry e = parse_record(doc[r], where);
      auto it = kb.entries_.find(e.name);
      if (it == kb.entries_.end()) {
        first_seen[e.name] = where;
        kb.entries_.emplace(e.name, std::move(e));
        continue;
      }
      UnitEntry& existing = it->second;
      if (existing.dimension != e.dimension) {
        throw LoadError("unit '" + e.name + "' declared with dimension '" + existing.dimension +
                        "' (" + first_seen[e.name] + ") and '" + e.dimension + "' (" + where +
                        ")");
      }
      existing.surfaces.insert(e.surfaces.begin(), e.surfaces.end());
      existing.symbols.insert(e.symbols.begin(), e.symbols.end());
      merge_optional(existing.uri, e.uri, e.name, "URIs");
      merge_optional(existing.conversion, e.conversion, e.name, "conversions");
      if (!e.derivation.empty()) {
        if (!existing.derivation.empty() && existing.derivation != e.derivation) {
          throw LoadError("unit '" + e.name + "' has conflicting derivations across documents");
        }
        existing.derivation = e.derivation;
      }
    }
  }
  if (kb.entries_.empty()) throw LoadError("no entries");

  const auto& supported = supported_dimensions();
  for (const auto& [name, e] : kb.entries_) {
    if (e.symbols.empty() && e.surfaces.empty()) {
      throw LoadError("unit '" + name + "' has no symbols or surfaces");
    }
    if (std::find(supported.begin(), supported.end(), e.dimension) == supported.end()) {
      throw LoadError("unit '" + name + "' has unknown dimension '" + e.dimension + "'");
    }
  }
  kb.build_indices();
  kb.resolve_conversions();
  return kb;
}

KnowledgeBase KnowledgeBase::load_files(std::span<const std::filesystem::path> paths) {
  std::vector<json> docs;
  docs.reserve(paths.size());
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open unit dictionary '" + path.string() + "'");
    try {
      docs.push_back(json::parse(in));
    } catch (const json::parse_error& e) {
      throw LoadError("malformed unit dictionary '" + path.string() + "': " + e.what());
    }
  }
  return load(docs);
}

KnowledgeBase KnowledgeBase::load_file(const std::filesystem::path& path) {
  return load_files(std::span(&path, 1));
}

void KnowledgeBase::build_indices() {
  std::set<std::string> dims;
  for (const auto& [name, e] : entries_) {
    dims.insert(e.dimension);
    // entries_ is name-ordered, so these vectors come out sorted.
    units_by_dimension_[e.dimension].push_back(name);
    for (const auto& s : e.symbol_set()) symbol_index_[s].push_back(name);
  }
  dimensions_.assign(dims.begin(), dims.end());
}

void KnowledgeBase::resolve_conversions() {
  // One explicit base per dimension.
  for (const auto& [name, e] : entries_) {
    if (!e.conversion) continue;
    const auto& base = e.conversion->base;
    auto base_it = entries_.find(base);
    if (base_it == entries_.end()) {
      throw LoadError("unit '" + name + "' converts to unknown unit '" + base + "'");
    }
    if (base_it->second.dimension != e.dimension) {
      throw LoadError("unit '" + name + "' (" + e.dimension + ") converts to '" + base + "' (" +
                      base_it->second.dimension + ")");
    }
    auto [it, inserted] = base_unit_.emplace(e.dimension, base);
    if (!inserted && it->second != base) {
      throw LoadError("dimension '" + e.dimension + "' has two conversion bases: '" +
                      it->second + "' and '" + base + "'");
    }
  }
  for (const auto& [dimension, base] : base_unit_) {
    const auto& conv = entries_.at(base).conversion;
    if (conv && (conv->base != base || conv->factor != 1)) {
      throw LoadError("base unit '" + base + "' of '" + dimension + "' must have factor 1");
    }
  }

  std::set<std::string> visiting;
  std::function<std::optional<Rational>(const std::string&)> resolve =
      [&](const std::string& name) -> std::optional<Rational> {
    if (auto done = to_base_.find(name); done != to_base_.end()) return done->second;
    const UnitEntry& e = entries_.at(name);
    auto base_it = base_unit_.find(e.dimension);
    if (base_it == base_unit_.end()) return std::nullopt;
    if (base_it->second == name) return to_base_[name] = Rational(1);
    if (e.conversion) return to_base_[name] = e.conversion->factor;
    if (e.derivation.size() != 1 || visiting.count(name)) return std::nullopt;

    // unit = B^p with B convertible in its own dimension. Express through the
    // unit of this dimension that is defined as (base of B's dimension)^p.
    visiting.insert(name);
    std::optional<Rational> out;
    const auto& term = e.derivation.front();
    auto b = entries_.find(term.base);
    if (b != entries_.end()) {
      auto b_scale = resolve(term.base);
      auto b_base = base_unit_.find(b->second.dimension);
      if (b_scale && b_base != base_unit_.end()) {
        for (const auto& anchor : units_by_dimension_[e.dimension]) {
          const UnitEntry& a = entries_.at(anchor);
          if (anchor == name || a.derivation.size() != 1) continue;
          if (a.derivation.front() != DerivationTerm{b_base->second, term.power}) continue;
          auto a_scale = resolve(anchor);
          if (!a_scale) continue;
          out = pow(*b_scale, term.power) * *a_scale;
          break;
        }
      }
    }
    visiting.erase(name);
    if (out) to_base_[name] = *out;
    return out;
  };
  for (const auto& [name, e] : entries_) resolve(name);
}

bool KnowledgeBase::has_dimension(std::string_view dimension) const {
  return units_by_dimension_.find(dimension) != units_by_dimension_.end();
}

bool KnowledgeBase::has_unit(std::string_view unit) const {
  return entries_.find(unit) != entries_.end();
}

const UnitEntry& KnowledgeBase::entry(std::string_view unit) const {
  auto it = entries_.find(unit);
  if (it == entries_.end()) throw UnknownUnit(std::string(unit));
  return it->second;
}

const std::vector<std::string>& KnowledgeBase::units_of_dimension(std::string_view dimension) const {
  auto it = units_by_dimension_.find(dimension);
  if (it == units_by_dimension_.end()) throw UnknownDimension(std::string(dimension));
  return it->second;
}

double KnowledgeBase::unit_prior(std::string_view unit, std::string_view dimension) const {
  const auto& units = units_of_dimension(dimension);
  const UnitEntry& e = entry(unit);
  if (e.dimension != dimension) return 0.0;
  return 1.0 / static_cast<double>(units.size());
}

const std::vector<std::string>& KnowledgeBase::units_for_symbol(std::string_view symbol) const {
  static const std::vector<std::string> kNone;
  auto it = symbol_index_.find(symbol);
  return it == symbol_index_.end() ? kNone : it->second;
}

std::optional<std::string> KnowledgeBase::base_unit(std::string_view dimension) const {
  if (!has_dimension(dimension)) throw UnknownDimension(std::string(dimension));
  auto it = base_unit_.find(dimension);
  if (it == base_unit_.end()) return std::nullopt;
  return it->second;
}

bool KnowledgeBase::is_convertible(std::string_view unit) const {
  entry(unit);
  return to_base_.find(unit) != to_base_.end();
}

Rational KnowledgeBase::conversion_factor_exact(std::string_view from, std::string_view to) const {
  const UnitEntry& a = entry(from);
  const UnitEntry& b = entry(to);
  if (a.dimension != b.dimension) {
    throw DimensionMismatch("cannot convert '" + a.name + "' (" + a.dimension + ") to '" +
                            b.name + "' (" + b.dimension + ")");
  }
  if (a.name == b.name) return Rational(1);
  auto fa = to_base_.find(from);
  auto fb = to_base_.find(to);
  if (fa == to_base_.end() || fb == to_base_.end()) {
    const std::string& missing = fa == to_base_.end() ? a.name : b.name;
    throw NonConvertibleUnit("non-convertible unit '" + missing + "'");
  }
  return fa->second / fb->second;
}

double KnowledgeBase::conversion_factor(std::string_view from, std::string_view to) const {
  return to_double(conversion_factor_exact(from, to));
}

}  // namespace puc
