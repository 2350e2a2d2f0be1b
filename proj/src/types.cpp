#include "mfo/types.hpp"

#include <fmt/format.h>

#include "mfo/errors.hpp"

namespace mfo {

SearchSpace::SearchSpace(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw ParameterError("search space needs dim >= 1");
  if (lower_.size() != upper_.size())
    throw ParameterError(fmt::format("bound sizes differ: {} lower vs {} upper", lower_.size(),
                                     upper_.size()));
  for (std::size_t j = 0; j < lower_.size(); ++j) {
    if (!(lower_[j] < upper_[j]))
      throw ParameterError(
          fmt::format("degenerate bounds at coordinate {}: [{}, {}]", j, lower_[j], upper_[j]));
  }
}

SearchSpace SearchSpace::uniform(std::size_t dim, double lower, double upper) {
  return SearchSpace(std::vector<double>(dim, lower), std::vector<double>(dim, upper));
}

bool SearchSpace::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (!(x[j] >= lower_[j] && x[j] <= upper_[j])) return false;
  return true;
}

}  // namespace mfo
