#pragma once

#include <stdexcept>

namespace trifreq {

/// Malformed input text (bad token, bad CSV field); message carries the location.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation that needs at least one transaction got zero.
struct EmptyDataset : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A raw item id that is not present in the dataset (or was pruned away).
struct UnknownItem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Cell construction produced a probability below -1e-12.
struct InfeasibleCells : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// No joint distribution is consistent with the given marginals (l > r).
struct InfeasibleMarginals : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of the operation.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A closed-form ratio whose denominator vanished.
struct ZeroDenominator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Aggregate statistic requested over an empty or all-excluded input.
struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace trifreq
