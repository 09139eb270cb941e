#include <cmath>

#include "doctest.h"
#include "puc/canonicalizer.hpp"
#include "puc/error.hpp"
#include "support.hpp"

using namespace puc;

namespace {

bool close(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("row examples") {
  const auto kb = test::bundled_kb();
  auto row = canonicalize_row(parse_cell("1 m"), "metre", "centimetre", *kb);
  CHECK(row.value == 100.0);
  CHECK(row.provenance == Provenance::kConverted);

  row = canonicalize_row(parse_cell("300"), std::nullopt, "litre", *kb);
  CHECK(row.value == 300.0);
  CHECK(row.provenance == Provenance::kAssumedColumnUnit);

  row = canonicalize_row(parse_cell("7 cu ft"), "cubic foot", "litre", *kb);
  REQUIRE(row.value);
  CHECK(close(*row.value, 198.217926144));

  row = canonicalize_row(parse_cell("ml"), "millilitre", "litre", *kb);
  CHECK_FALSE(row.value);
  CHECK(row.provenance == Provenance::kValueMissing);

  row = canonicalize_row(parse_cell("5 EUR"), "euro", "United States dollar", *kb);
  CHECK_FALSE(row.value);
  CHECK(row.provenance == Provenance::kNonConvertible);

  row = canonicalize_row(parse_cell("5 EUR"), "euro", "euro", *kb);
  CHECK(row.value == 5.0);
  CHECK(row.provenance == Provenance::kConverted);

  CHECK_THROWS_AS(canonicalize_row(parse_cell("1 m"), "metre", "gram", *kb), DimensionMismatch);
  CHECK(to_string(Provenance::kAssumedColumnUnit) == "assumed-column-unit");
}

TEST_CASE("fixture-1 column") {
  const auto kb = test::fixture1_kb();
  const auto params = default_params(kb);
  const auto cells = test::cells(test::fixture1_column());
  const auto a = annotate_column(cells, params);
  const auto c = canonicalize_column(a, cells, *kb);
  CHECK(c.unit == "litre");
  const std::vector<double> want = {80, 105, 95, 120, 198.217926144, 127.425809664, 300};
  for (std::size_t i = 0; i < want.size(); ++i) {
    REQUIRE(c.values[i]);
    CHECK(close(*c.values[i], want[i]));
  }
  CHECK(c.provenance[6] == Provenance::kAssumedColumnUnit);
  CHECK(c.provenance[4] == Provenance::kConverted);
  CHECK(*c.values[4] / 7.0 == doctest::Approx(kb->conversion_factor("cubic foot", "litre")));
  CHECK_THROWS_AS(canonicalize_column(a, std::span(cells).first(3), *kb), InvalidArgument);
}

TEST_CASE("uniform column is unchanged") {
  const auto kb = test::bundled_kb();
  const auto cells = test::cells({"1.5 kg", "2 kg", "0.25 kg", "kg"});
  const auto a = annotate_column(cells, default_params(kb));
  const auto c = canonicalize_column(a, cells, *kb);
  CHECK(c.unit == "kilogram");
  for (std::size_t i = 0; i < 3; ++i) CHECK(c.values[i] == cells[i].value);
  CHECK(c.provenance[3] == Provenance::kValueMissing);
}

TEST_CASE("mixed currencies are not converted") {
  const auto kb = test::bundled_kb();
  const auto cells = test::cells({"70 USD", "19.68 AUD", "5 USD", "7 USD"});
  const auto a = annotate_column(cells, default_params(kb));
  REQUIRE(a.dimension == "currency");
  const auto c = canonicalize_column(a, cells, *kb);
  CHECK(c.unit == "United States dollar");
  CHECK(c.provenance[1] == Provenance::kNonConvertible);
  CHECK_FALSE(c.values[1]);
  CHECK(c.values[0] == 70.0);
}

TEST_CASE("round trip and idempotence over the bundled dictionary") {
  const auto kb = test::bundled_kb();
  const std::vector<double> values = {1.0, 0.001, 12.5, 123456.789, 3e-7};
  std::size_t pairs = 0;
  for (const auto& t : kb->dimensions()) {
    for (const auto& a : kb->units_of_dimension(t)) {
      if (!kb->is_convertible(a)) continue;
      for (const auto& b : kb->units_of_dimension(t)) {
        if (!kb->is_convertible(b)) continue;
        ++pairs;
        for (double v : values) {
          ParsedCell cell{"", v, std::nullopt, true};
          const auto there = canonicalize_row(cell, a, b, *kb);
          REQUIRE(there.value);
          CHECK(*there.value == v * kb->conversion_factor(a, b));
          ParsedCell back_cell{"", there.value, std::nullopt, true};
          const auto back = canonicalize_row(back_cell, b, a, *kb);
          REQUIRE(back.value);
          CHECK(close(*back.value, v));
        }
      }
    }
  }
  CHECK(pairs > 500);

  // Canonicalizing the output again changes nothing.
  const auto params = default_params(kb);
  const auto cells = test::cells({"1 m", "250 cm", "3 ft", "2 km", "40"});
  const auto first = canonicalize_column(annotate_column(cells, params), cells, *kb);
  std::vector<ParsedCell> again;
  for (const auto& v : first.values) again.push_back(ParsedCell{"", v, first.unit, true});
  const auto second = canonicalize_column(annotate_column(again, params), again, *kb);
  CHECK(second.unit == first.unit);
  CHECK(second.values == first.values);
}
