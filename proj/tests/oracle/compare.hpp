#pragma once

// Random small instances checked against the enumeration oracle. Shared by
// the unit tests and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "enumeration.hpp"
#include "json.hpp"
#include "puc/inference.hpp"
#include "puc/prob_model.hpp"
#include "puc/unit_kb.hpp"

namespace puc::oracle {

struct Instance {
  Model model;
  std::vector<std::optional<std::string>> rows;
};

inline Instance random_instance(std::mt19937_64& rng) {
  static const std::vector<std::string> kDims = {"length", "mass", "volume"};
  static const std::vector<std::string> kSymbols = {"a", "b", "c", "A", "ab", "bc", "\xC3\xA9"};
  static const std::vector<std::string> kStrays = {"zz", "q", "abc"};
  auto pick = [&rng](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };

  Instance inst;
  const std::size_t k = 1 + pick(3);
  std::vector<std::string> dims = kDims;
  std::shuffle(dims.begin(), dims.end(), rng);
  dims.resize(k);
  std::vector<std::string> known;
  for (const auto& d : dims) {
    const std::size_t l = 1 + pick(3);
    auto& units = inst.model.dims[d];
    for (std::size_t u = 0; u < l; ++u) {
      Unit unit;
      unit.name = d + "_u" + std::to_string(u);
      const std::size_t s = 1 + pick(3);
      while (unit.symbols.size() < s) unit.symbols.insert(kSymbols[pick(kSymbols.size())]);
      known.insert(known.end(), unit.symbols.begin(), unit.symbols.end());
      units.push_back(std::move(unit));
    }
  }
  const std::size_t n = 1 + pick(5);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = pick(10);
    if (r < 2) {
      inst.rows.push_back(std::nullopt);
    } else if (r < 4) {
      inst.rows.push_back(kStrays[pick(kStrays.size())]);
    } else {
      inst.rows.push_back(known[pick(known.size())]);
    }
  }
  return inst;
}

inline std::shared_ptr<const KnowledgeBase> to_kb(const Model& m) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& [dim, units] : m.dims) {
    for (const auto& u : units) {
      doc.push_back({{"name", u.name},
                     {"entity", dim},
                     {"surfaces", nlohmann::json::array()},
                     {"symbols", u.symbols}});
    }
  }
  const nlohmann::json docs[] = {doc};
  return std::make_shared<const KnowledgeBase>(KnowledgeBase::load(docs));
}

struct Comparison {
  std::size_t instances = 0;
  std::size_t mismatches = 0;
  double max_deviation = 0.0;
  std::string first_failure;
};

// Compares the four posteriors of the implementation with the oracle on
// `count` random instances.
inline Comparison compare_random(std::size_t count, std::uint64_t seed, double tolerance) {
  std::mt19937_64 rng(seed);
  Comparison c;
  for (std::size_t trial = 0; trial < count; ++trial) {
    const Instance inst = random_instance(rng);
    const auto kb = to_kb(inst.model);
    const ModelParams params = default_params(kb);
    std::vector<ParsedCell> cells;
    for (const auto& x : inst.rows) cells.push_back(ParsedCell{x.value_or(""), 1.0, x, true});

    const Result want = enumerate(inst.model, inst.rows);
    bool ok = true;
    std::ostringstream why;
    auto check = [&](double got, double expected, const std::string& what) {
      const double dev = std::abs(got - expected);
      c.max_deviation = std::max(c.max_deviation, dev);
      if (!(dev <= tolerance)) {
        if (ok) why << "instance " << trial << ": " << what << " got " << got << " want " << expected;
        ok = false;
      }
    };

    const auto dims = dimension_posterior(cells, params);
    for (std::size_t k = 0; k < want.dims.size(); ++k) {
      check(dims.probs[k], want.dim_posterior[k], "p(t=" + want.dims[k] + ")");
    }
    for (const auto& t : want.dims) {
      for (std::size_t i = 0; i < inst.rows.size(); ++i) {
        const auto labels = row_label_posterior(inst.rows[i], t, params);
        const auto& wl = want.label_posterior.at(t)[i];
        for (std::size_t j = 0; j < wl.size(); ++j) {
          check(labels.probs[j], wl[j], "label " + std::to_string(j) + " row " + std::to_string(i));
          const auto& given = want.unit_given_label.at(t)[i][j];
          if (given.empty()) continue;
          const auto units = row_unit_posterior(inst.rows[i], t, labels.label(j), params);
          for (std::size_t l = 0; l < given.size(); ++l) {
            check(units.probs[l], given[l], "unit " + std::to_string(l) + " | label " + std::to_string(j));
          }
        }
      }
      const auto scores = column_unit_scores(cells, t, params);
      const auto& ws = want.column_scores.at(t);
      for (std::size_t l = 0; l < ws.size(); ++l) check(scores[l], ws[l], "column score " + t);
    }
    ++c.instances;
    if (!ok) {
      ++c.mismatches;
      if (c.first_failure.empty()) c.first_failure = why.str();
    }
  }
  return c;
}

}  // namespace puc::oracle
