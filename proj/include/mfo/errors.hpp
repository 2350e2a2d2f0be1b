#pragma once

#include <stdexcept>
#include <string>

namespace mfo {

/// State outside a chaotic map's native domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid algorithm or model parameter (Lévy index, bounds, sizes, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Objective returned a non-finite value; the run is aborted.
class ObjectiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown benchmark id, missing composite pack, or id collision.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Invalid experiment configuration, detected before any run starts.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace mfo
