#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace puc {

// Fraction of positions where pred == truth.
double overall_accuracy(std::span<const std::string> pred, std::span<const std::string> truth);

struct ConfusionCounts {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t false_negative = 0;
};

ConfusionCounts confusion_counts(std::span<const std::string> pred,
                                 std::span<const std::string> truth, std::string_view dimension);

// TP / (TP + FP + FN) for one dimension; nullopt when the denominator is 0.
std::optional<double> jaccard_per_dimension(std::span<const std::string> pred,
                                            std::span<const std::string> truth,
                                            std::string_view dimension);

// A row's value and unit, predicted or annotated.
struct RowValueUnit {
  std::optional<double> value;
  std::optional<std::string> unit;
};

struct UnitAccuracy {
  double unit_accuracy = 0.0;
  double value_accuracy = 0.0;  // values equal within 1e-9 relative
  std::size_t rows = 0;
};

UnitAccuracy unit_identification_accuracy(std::span<const RowValueUnit> pred,
                                          std::span<const RowValueUnit> truth);

// Unweighted mean over datasets.
double mean_accuracy(std::span<const double> per_dataset);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;  // two-sided
  std::size_t degrees_of_freedom = 0;
};

// Paired t-test on d_i = a_i - b_i with n - 1 degrees of freedom.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

// Exact two-sided McNemar p-value for n01/n10 discordant pairs:
// 2 * P(X >= max(n01, n10)) for X ~ Binomial(n01 + n10, 1/2), capped at 1.
double mcnemar_exact(std::size_t n01, std::size_t n10);

}  // namespace puc
