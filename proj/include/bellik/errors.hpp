#pragma once

#include <stdexcept>
#include <string>

namespace bellik {

/// Conjunctive conflict reached 1: Dempster normalization is undefined.
class TotalConflictError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A frame or product frame exceeds the configured size cap.
class SizeCapError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace bellik
