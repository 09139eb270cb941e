#include "puc/cell_parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <regex>

namespace puc {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<std::string> clean_symbol(std::string_view s) {
  for (;;) {
    s = trim(s);
    if (s.empty() || s.back() != '.') break;
    while (!s.empty() && s.back() == '.') s.remove_suffix(1);
  }
  if (s.empty()) return std::nullopt;
  return std::string(s);
}

// std::regex works on bytes; map every non-ASCII byte to a word character so
// UTF-8 symbols (µg, m³, €) behave like letters. Offsets are unchanged.
std::string ascii_mask(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (static_cast<unsigned char>(c) >= 0x80) c = 'a';
  }
  return out;
}

std::optional<double> to_number(std::string_view text) {
  double v = 0;
  auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc{}) return std::nullopt;
  return v;
}

std::optional<double> numeric_value(std::string_view sign, std::string number) {
  std::optional<double> v;
  if (auto slash = number.find('/'); slash != std::string::npos) {
    auto num = to_number(std::string_view(number).substr(0, slash));
    auto den = to_number(std::string_view(number).substr(slash + 1));
    if (num && den) v = *num / *den;
  } else {
    for (auto& c : number) {
      if (c == ',') c = '.';
    }
    if (!number.empty() && number.front() == '.') number.insert(number.begin(), '0');
    v = to_number(number);
  }
  if (!v || !std::isfinite(*v)) return std::nullopt;
  return sign == "-" ? -*v : *v;
}

const std::regex& suffix_form() {
  static const std::regex rx(
      R"(^([-+]?)(\d+/\d+|\d*[.,]\d+|\d+\.?)?\s*([\w\s.!?\\-]*)$)");
  return rx;
}

const std::regex& prefix_form() {
  static const std::regex rx(R"(^(\D+?)\s*([-+]?)(\d+/\d+|\d*[.,]\d+|\d+\.?)$)");
  return rx;
}

ParsedCell failed(std::string_view raw) {
  ParsedCell cell;
  cell.raw = std::string(raw);
  cell.parse_ok = false;
  return cell;
}

}  // namespace

ParsedCell parse_cell(std::string_view text) {
  ParsedCell cell;
  cell.raw = std::string(text);
  const std::string_view body = trim(text);
  if (body.empty()) return cell;

  const std::string masked = ascii_mask(body);
  auto sub = [&](const std::smatch& m, int group) {
    return std::string(body.substr(static_cast<std::size_t>(m.position(group)),
                                   static_cast<std::size_t>(m.length(group))));
  };

  std::smatch m;
  const bool suffix_ok = std::regex_match(masked, m, suffix_form());
  if (suffix_ok && m[2].matched) {
    auto value = numeric_value(sub(m, 1), sub(m, 2));
    if (!value) return failed(text);
    cell.value = value;
    cell.symbol = clean_symbol(sub(m, 3));
    return cell;
  }

  std::smatch p;
  if (std::regex_match(masked, p, prefix_form())) {
    std::string prefix = sub(p, 1);
    std::string number = sub(p, 3);
    // "Rs.300": a dot right after letters abbreviates the symbol, it is not
    // a decimal point.
    if ((number.front() == '.' || number.front() == ',') &&
        std::isalpha(static_cast<unsigned char>(prefix.back()))) {
      prefix.push_back(number.front());
      number.erase(number.begin());
    }
    auto symbol = clean_symbol(prefix);
    auto value = numeric_value(sub(p, 2), number);
    if (symbol && value) {
      cell.value = value;
      cell.symbol = std::move(symbol);
      return cell;
    }
  }

  if (suffix_ok) {
    cell.symbol = clean_symbol(sub(m, 3));
    return cell;
  }
  return failed(text);
}

std::optional<std::string> observed_symbol(const ParsedCell& cell) {
  if (cell.parse_ok) return cell.symbol;
  auto body = trim(cell.raw);
  if (body.empty()) return std::nullopt;
  return std::string(body);
}

}  // namespace puc
