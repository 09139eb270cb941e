#include "puc/prob_model.hpp"

#include <cmath>
#include <limits>

#include "puc/error.hpp"

namespace puc {

void MixingProportions::validate() const {
  for (double w : {regular, missing, anomalous}) {
    if (!(w > 0.0 && w < 1.0)) {
      throw InvalidArgument("mixing proportions must lie strictly between 0 and 1");
    }
  }
  if (std::abs(regular + missing + anomalous - 1.0) > 1e-12) {
    throw InvalidArgument("mixing proportions must sum to 1");
  }
  if (!(missing < regular && anomalous < regular)) {
    throw InvalidArgument("missing and anomalous proportions must be below the regular one");
  }
}

ModelParams::ModelParams(std::shared_ptr<const KnowledgeBase> kb, MixingProportions mixing,
                         ObservationParams obs)
    : kb_(std::move(kb)), mixing_(mixing), obs_(std::move(obs)) {
  if (!kb_) throw InvalidArgument("model parameters need a knowledge base");
  mixing_.validate();
  if (obs_.anomaly_alphabet_size < 1) {
    throw InvalidArgument("anomaly alphabet size must be positive");
  }
  if (obs_.pi.size() != kb_->size()) {
    throw InvalidArgument("symbol distributions must cover every unit of the knowledge base");
  }
  for (const auto& [unit, dist] : obs_.pi) {
    const auto support = kb_->entry(unit).symbol_set();
    double total = 0.0;
    for (const auto& [symbol, p] : dist) {
      if (!(p > 0.0) || !support.count(symbol)) {
        throw InvalidArgument("symbol distribution of '" + unit +
                              "' must be positive on exactly its symbol set");
      }
      total += p;
    }
    if (dist.size() != support.size() || std::abs(total - 1.0) > 1e-12) {
      throw InvalidArgument("symbol distribution of '" + unit + "' must sum to 1");
    }
  }
}

const MixingProportions& ModelParams::mixing_for(std::string_view unit) const {
  auto it = per_unit_.find(unit);
  return it == per_unit_.end() ? mixing_ : it->second;
}

void ModelParams::set_unit_mixing(const std::string& unit, MixingProportions w) {
  kb_->entry(unit);
  w.validate();
  per_unit_[unit] = w;
}

ModelParams make_params(std::shared_ptr<const KnowledgeBase> kb, MixingProportions mixing,
                        int anomaly_alphabet_size) {
  if (!kb) throw InvalidArgument("model parameters need a knowledge base");
  ObservationParams obs;
  obs.anomaly_alphabet_size = anomaly_alphabet_size;
  for (const auto& [name, e] : kb->entries()) {
    const auto symbols = e.symbol_set();
    auto& dist = obs.pi[name];
    for (const auto& s : symbols) dist[s] = 1.0 / static_cast<double>(symbols.size());
  }
  return ModelParams(std::move(kb), mixing, std::move(obs));
}

ModelParams default_params(std::shared_ptr<const KnowledgeBase> kb) {
  return make_params(std::move(kb), MixingProportions{});
}

double regular_likelihood(const std::optional<std::string>& x, std::string_view unit,
                          const ModelParams& params) {
  auto it = params.obs().pi.find(unit);
  if (it == params.obs().pi.end()) throw UnknownUnit(std::string(unit));
  if (!x) return 0.0;
  auto s = it->second.find(*x);
  return s == it->second.end() ? 0.0 : s->second;
}

double missing_likelihood(const std::optional<std::string>& x) {
  return (!x || x->empty()) ? 1.0 : 0.0;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++n) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t width = 1;
    if (c >= 0xF0 && c < 0xF8) {
      width = 4;
    } else if (c >= 0xE0) {
      width = 3;
    } else if (c >= 0xC0) {
      width = 2;
    }
    bool valid = i + width <= s.size();
    for (std::size_t k = 1; valid && k < width; ++k) {
      valid = (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    }
    i += valid ? width : 1;
  }
  return n;
}

double log_anomaly_likelihood(const std::optional<std::string>& x, const ModelParams& params) {
  if (!x || x->empty()) return -std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(utf8_length(*x));
  const double per_char = -std::log(static_cast<double>(params.obs().anomaly_alphabet_size)) -
                          std::log(2.0);
  return n * per_char - std::log(2.0);
}

double anomaly_likelihood(const std::optional<std::string>& x, const ModelParams& params) {
  return std::exp(log_anomaly_likelihood(x, params));
}

}  // namespace puc
