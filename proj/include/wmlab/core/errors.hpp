#pragma once

#include <stdexcept>
#include <string>

namespace wmlab {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

/// Raised for inputs that are valid in type but have no meaningful result,
/// e.g. normalizing the zero vector.
struct DegenerateInput : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Broken internal invariant (should be unreachable).
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require_same_dim(long long a, long long b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                            " != " + std::to_string(b));
  }
}

}  // namespace wmlab
