#pragma once

#include <stdexcept>
#include <string>

namespace modwalk {

/// Thrown when a request exceeds the configured memory/size budget
/// (e.g. a tiling ball too large to enumerate). Maps to CLI exit code 2.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace modwalk
