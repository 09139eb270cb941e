#include "puc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "puc/error.hpp"

namespace puc {

namespace {

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    throw InvalidArgument("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

bool same_value(const std::optional<double>& a, const std::optional<double>& b) {
  if (!a || !b) return !a && !b;
  const double scale = std::max({1.0, std::abs(*a), std::abs(*b)});
  return std::abs(*a - *b) <= 1e-9 * scale;
}

}  // namespace

double overall_accuracy(std::span<const std::string> pred, std::span<const std::string> truth) {
  require_same_length(pred.size(), truth.size());
  if (pred.empty()) throw InvalidArgument("no predictions");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

ConfusionCounts confusion_counts(std::span<const std::string> pred,
                                 std::span<const std::string> truth, std::string_view dimension) {
  require_same_length(pred.size(), truth.size());
  ConfusionCounts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] == dimension;
    const bool t = truth[i] == dimension;
    if (p && t) ++c.true_positive;
    if (p && !t) ++c.false_positive;
    if (!p && t) ++c.false_negative;
  }
  return c;
}

std::optional<double> jaccard_per_dimension(std::span<const std::string> pred,
                                            std::span<const std::string> truth,
                                            std::string_view dimension) {
  const auto c = confusion_counts(pred, truth, dimension);
  const std::size_t denominator = c.true_positive + c.false_positive + c.false_negative;
  if (denominator == 0) return std::nullopt;
  return static_cast<double>(c.true_positive) / static_cast<double>(denominator);
}

UnitAccuracy unit_identification_accuracy(std::span<const RowValueUnit> pred,
                                          std::span<const RowValueUnit> truth) {
  require_same_length(pred.size(), truth.size());
  if (pred.empty()) throw InvalidArgument("no rows");
  std::size_t units = 0;
  std::size_t values = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    units += pred[i].unit == truth[i].unit ? 1 : 0;
    values += same_value(pred[i].value, truth[i].value) ? 1 : 0;
  }
  const auto n = static_cast<double>(pred.size());
  return {static_cast<double>(units) / n, static_cast<double>(values) / n, pred.size()};
}

double mean_accuracy(std::span<const double> per_dataset) {
  if (per_dataset.empty()) throw InvalidArgument("no datasets");
  return std::accumulate(per_dataset.begin(), per_dataset.end(), 0.0) /
         static_cast<double>(per_dataset.size());
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size());
  const std::size_t n = a.size();
  if (n < 2) throw InvalidArgument("paired t-test needs at least two pairs");

  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  const double variance = ss / static_cast<double>(n - 1);
  // Differences equal up to rounding (a constant offset in floating point)
  // count as degenerate too.
  double scale = 0.0;
  for (double x : d) scale = std::max(scale, std::abs(x));
  if (!(variance > 1e-24 * scale * scale)) throw InvalidArgument("zero-variance differences");

  TTestResult r;
  r.degrees_of_freedom = n - 1;
  r.t = mean / std::sqrt(variance / static_cast<double>(n));
  boost::math::students_t dist(static_cast<double>(r.degrees_of_freedom));
  r.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t))));
  return r;
}

double mcnemar_exact(std::size_t n01, std::size_t n10) {
  const std::size_t n = n01 + n10;
  if (n == 0) throw InvalidArgument("no discordant pairs");
  const std::size_t k = std::max(n01, n10);
  boost::math::binomial_distribution<double> dist(static_cast<double>(n), 0.5);
  // P(X >= k) = 1 - P(X <= k - 1)
  const double tail =
      k == 0 ? 1.0
             : boost::math::cdf(boost::math::complement(dist, static_cast<double>(k - 1)));
  return std::min(1.0, 2.0 * tail);
}

}  // namespace puc
