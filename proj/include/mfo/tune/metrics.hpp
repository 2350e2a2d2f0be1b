#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mfo::tune {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fn + fp + tn; }
};

/// Counts relative to `positive`; every other label value is the negative
/// class. Throws ParameterError on a length mismatch.
ConfusionCounts confusion(std::span<const int> preds, std::span<const int> labels, int positive);

struct MetricsReport {
  double accuracy = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  // Set when the matching ratio had a zero denominator and was reported as 0.
  bool sensitivity_degenerate = false;
  bool specificity_degenerate = false;
  bool precision_degenerate = false;
  bool f1_degenerate = false;
  std::vector<std::pair<double, double>> roc;  // (fpr, tpr)
};

/// Throws ParameterError when the counts are all zero.
MetricsReport metrics(const ConfusionCounts& c);

/**
 * Threshold sweep from the highest score down, one point per distinct score,
 * starting at (0,0) and ending at (1,1). `labels` uses 1 for the positive
 * class. Throws ParameterError on a length mismatch or when only one class
 * is present.
 */
std::vector<std::pair<double, double>> roc_points(std::span<const double> scores,
                                                  std::span<const int> labels);

/// Trapezoidal area under a ROC polyline.
double auc(std::span<const std::pair<double, double>> roc);

}  // namespace mfo::tune
