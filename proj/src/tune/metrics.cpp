#include "mfo/tune/metrics.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "mfo/errors.hpp"

namespace mfo::tune {
namespace {

double ratio(std::size_t num, std::size_t den, bool& degenerate) {
  degenerate = den == 0;
  return degenerate ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionCounts confusion(std::span<const int> preds, std::span<const int> labels, int positive) {
  if (preds.size() != labels.size())
    throw ParameterError(fmt::format("confusion: {} predictions vs {} labels", preds.size(), labels.size()));
  ConfusionCounts c;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const bool p = preds[i] == positive;
    const bool y = labels[i] == positive;
    if (p && y) ++c.tp;
    else if (!p && y) ++c.fn;
    else if (p && !y) ++c.fp;
    else ++c.tn;
  }
  return c;
}

MetricsReport metrics(const ConfusionCounts& c) {
  if (c.total() == 0) throw ParameterError("metrics need at least one counted item");
  MetricsReport r;
  r.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  r.sensitivity = ratio(c.tp, c.tp + c.fn, r.sensitivity_degenerate);
  r.specificity = ratio(c.tn, c.tn + c.fp, r.specificity_degenerate);
  r.precision = ratio(c.tp, c.tp + c.fp, r.precision_degenerate);
  const double sum = r.precision + r.sensitivity;
  r.f1_degenerate = sum == 0.0;
  r.f1 = r.f1_degenerate ? 0.0 : 2.0 * r.precision * r.sensitivity / sum;
  return r;
}

std::vector<std::pair<double, double>> roc_points(std::span<const double> scores,
                                                  std::span<const int> labels) {
  if (scores.size() != labels.size())
    throw ParameterError(fmt::format("roc: {} scores vs {} labels", scores.size(), labels.size()));
  const auto pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) throw ParameterError("roc needs both classes in the labels");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::vector<std::pair<double, double>> out{{0.0, 0.0}};
  std::size_t tp = 0, fp = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (labels[order[k]] == 1) ++tp; else ++fp;
    // tied scores move together: emit only after the last member of a tie
    if (k + 1 < order.size() && scores[order[k + 1]] == scores[order[k]]) continue;
    out.emplace_back(static_cast<double>(fp) / static_cast<double>(neg),
                     static_cast<double>(tp) / static_cast<double>(pos));
  }
  return out;
}

double auc(std::span<const std::pair<double, double>> roc) {
  double area = 0.0;
  for (std::size_t k = 1; k < roc.size(); ++k)
    area += (roc[k].first - roc[k - 1].first) * (roc[k].second + roc[k - 1].second) / 2.0;
  return area;
}

}  // namespace mfo::tune
