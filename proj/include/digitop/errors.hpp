#pragma once

#include <stdexcept>
#include <string>

namespace digitop {

// Precondition violations: bad parameters, mixed dimensions, points outside
// the image they are looked up in.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A bounded search ran out of budget. The question is undecided, which is
// not the same thing as a negative answer.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or schema-violating input documents.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace digitop
