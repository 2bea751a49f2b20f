#pragma once

#include <stdexcept>
#include <string>

namespace pwaeb {

/// Malformed input: dimension mismatches, unparsable rationals, bad set files.
class InputError : public std::invalid_argument {
public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A well-formed request whose mathematical precondition fails
/// (empty sublevel set, recession cone of an empty polyhedron, ...).
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Refusal to run an operation beyond its configured size caps.
class LimitError : public std::length_error {
public:
  explicit LimitError(const std::string& what) : std::length_error(what) {}
};

}  // namespace pwaeb
