#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "puc/unit_kb.hpp"

namespace puc {

// Probabilities that a row with a given unit is written with a regular
// symbol, with no symbol, or with an anomalous symbol.
struct MixingProportions {
  double regular = 0.98;
  double missing = 0.01;
  double anomalous = 0.01;

  // Throws InvalidArgument unless the three sum to 1, are strictly positive,
  // and both noise labels stay below the regular label.
  void validate() const;
};

// Observation model for symbols: a categorical per unit over its symbol set,
// and the alphabet size behind the anomaly density.
struct ObservationParams {
  std::map<std::string, std::map<std::string, double, std::less<>>, std::less<>> pi;
  int anomaly_alphabet_size = 128;
};

class ModelParams {
 public:
  ModelParams(std::shared_ptr<const KnowledgeBase> kb, MixingProportions mixing,
              ObservationParams obs);

  const KnowledgeBase& kb() const { return *kb_; }
  const std::shared_ptr<const KnowledgeBase>& kb_ptr() const { return kb_; }

  const MixingProportions& mixing() const { return mixing_; }
  // Mixing proportions for one unit: the override if any, else the global one.
  const MixingProportions& mixing_for(std::string_view unit) const;
  void set_unit_mixing(const std::string& unit, MixingProportions w);
  bool has_unit_overrides() const { return !per_unit_.empty(); }

  const ObservationParams& obs() const { return obs_; }

 private:
  std::shared_ptr<const KnowledgeBase> kb_;
  MixingProportions mixing_;
  std::map<std::string, MixingProportions, std::less<>> per_unit_;
  ObservationParams obs_;
};

// W = (0.98, 0.01, 0.01), uniform symbol distribution per unit, |A| = 128.
ModelParams default_params(std::shared_ptr<const KnowledgeBase> kb);
ModelParams make_params(std::shared_ptr<const KnowledgeBase> kb, MixingProportions mixing,
                        int anomaly_alphabet_size = 128);

// p(x | z = u): pi_u^x, or 0 when x is absent or outside u's symbol set.
double regular_likelihood(const std::optional<std::string>& x, std::string_view unit,
                          const ModelParams& params);

// p(x | z = missing): indicator of an absent symbol.
double missing_likelihood(const std::optional<std::string>& x);

// p(x | z = anomalous): (1/|A|)^n (1/2)^n (1/2) for a symbol of n characters
// (UTF-8 code points), 0 for an absent symbol. Sums to at most 1 over all
// strings.
double anomaly_likelihood(const std::optional<std::string>& x, const ModelParams& params);
// Log of the above; -inf for an absent symbol. Does not underflow.
double log_anomaly_likelihood(const std::optional<std::string>& x, const ModelParams& params);

// Number of UTF-8 code points; invalid bytes count one each.
std::size_t utf8_length(std::string_view s);

}  // namespace puc
