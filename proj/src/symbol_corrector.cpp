#include "puc/symbol_corrector.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <tuple>
#include <vector>

#include "puc/error.hpp"

namespace puc {

namespace {

std::vector<char32_t> code_points(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t width = 1;
    char32_t cp = c;
    if (c >= 0xF0 && c < 0xF8) {
      width = 4;
      cp = c & 0x07;
    } else if (c >= 0xE0 && c < 0xF0) {
      width = 3;
      cp = c & 0x0F;
    } else if (c >= 0xC0 && c < 0xE0) {
      width = 2;
      cp = c & 0x1F;
    }
    bool valid = width > 1 && i + width <= s.size();
    for (std::size_t k = 1; valid && k < width; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      valid = (cc & 0xC0) == 0x80;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!valid) {
      width = 1;
      cp = c;
    }
    out.push_back(cp);
    i += width;
  }
  return out;
}

char32_t fold(char32_t c) {
  return c < 0x80 ? static_cast<char32_t>(std::tolower(static_cast<int>(c))) : c;
}

std::size_t levenshtein(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      const std::size_t substitute = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitute});
      diagonal = above;
    }
  }
  return row[b.size()];
}

std::vector<char32_t> folded(std::string_view s) {
  auto cps = code_points(s);
  for (auto& c : cps) c = fold(c);
  return cps;
}

std::string fold_string(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(c));
  }
  return out;
}

}  // namespace

std::size_t edit_distance(std::string_view a, std::string_view b) {
  return levenshtein(code_points(a), code_points(b));
}

Correction correct_symbol(std::string_view symbol, std::string_view dimension,
                          const KnowledgeBase& kb) {
  if (symbol.empty()) throw InvalidArgument("cannot correct an empty symbol");
  const auto& units = kb.units_of_dimension(dimension);
  const auto query = folded(symbol);

  // (distance, length, folded text, original text, unit)
  using Key = std::tuple<std::size_t, std::size_t, std::string, std::string, std::string>;
  std::optional<Key> best;
  for (const auto& unit : units) {
    for (const auto& candidate : kb.entry(unit).symbol_set()) {
      const auto cand = folded(candidate);
      Key key{levenshtein(query, cand), cand.size(), fold_string(candidate), candidate, unit};
      if (!best || key < *best) best = std::move(key);
    }
  }
  if (!best) {
    throw InvalidArgument("dimension '" + std::string(dimension) + "' has no known symbols");
  }
  return Correction{std::string(symbol), std::get<3>(*best), std::get<4>(*best),
                    std::get<0>(*best)};
}

}  // namespace puc
