#pragma once

#include <stdexcept>
#include <string>

namespace khw {

// Malformed text input (PD codes, braid words, tangle files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A well-formed request that is invalid for the given data
// (bad crossing index, letter out of range, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation refused because it would exceed a configured budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace khw
