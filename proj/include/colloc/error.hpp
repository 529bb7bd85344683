#pragma once

#include <stdexcept>
#include <string>

namespace colloc {

/// Raised for every domain failure in the library (degenerate nodes, invalid
/// stage counts, failed root isolation, stalled iterations).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace colloc
