#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geoaudit {

// Bad caller input: wrong dimensions, invalid parameters, unmet preconditions.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Evaluation left the domain of a node (division by zero, sqrt/log of a nonpositive value).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A derivative-order budget was too small for the requested operator chain.
class OrderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace geoaudit
