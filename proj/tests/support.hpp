#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "puc/cell_parser.hpp"
#include "puc/unit_kb.hpp"

namespace puc::test {

inline std::filesystem::path test_dir() { return PUC_TEST_DIR; }
inline std::filesystem::path golden_dir() { return test_dir() / "golden"; }
inline std::filesystem::path bundled_data_dir() { return PUC_DATA_DIR; }

inline std::shared_ptr<const KnowledgeBase> kb_from(const nlohmann::json& doc) {
  const nlohmann::json docs[] = {doc};
  return std::make_shared<const KnowledgeBase>(KnowledgeBase::load(docs));
}

inline std::shared_ptr<const KnowledgeBase> kb_from(const char* text) {
  return kb_from(nlohmann::json::parse(text));
}

inline std::shared_ptr<const KnowledgeBase> fixture1_kb() {
  static const auto kb =
      std::make_shared<const KnowledgeBase>(KnowledgeBase::load_file(golden_dir() / "fixture1_kb.json"));
  return kb;
}

inline std::shared_ptr<const KnowledgeBase> bundled_kb() {
  static const auto kb =
      std::make_shared<const KnowledgeBase>(KnowledgeBase::load_file(bundled_data_dir() / "units.json"));
  return kb;
}

inline std::vector<ParsedCell> cells(const std::vector<std::string>& texts) {
  std::vector<ParsedCell> out;
  for (const auto& t : texts) out.push_back(parse_cell(t));
  return out;
}

inline const std::vector<std::string>& fixture1_column() {
  static const std::vector<std::string> rows = {"80 l",    "105 L",  "95 ltrs", "120 litres",
                                                "7 cu ft", "4.5 Cu", "300"};
  return rows;
}

// The litre and gram records as printed in the dictionary sample.
inline constexpr const char* kTable5Kb = R"([
  {"name": "litre", "surfaces": ["litre", "liter", "cubic decimetre", "cubic decimeter"],
   "entity": "volume", "URI": "https://en.wikipedia.org/wiki/Litre", "dimensions": [],
   "symbols": ["l", "L", "ltr"]},
  {"name": "gram", "surfaces": ["gram", "gramme"], "entity": "mass",
   "URI": "https://en.wikipedia.org/wiki/Gram", "dimensions": [], "symbols": ["g", "gm"]}
])";

}  // namespace puc::test
