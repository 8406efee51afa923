#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amalgam {

/// Malformed or inconsistent input (bad descriptor, failed embedding check, ...).
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured resource knob (group order, ball size, ideal count) was exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Signals corrupted data or a bug,
/// never a property of valid input.
class DefectError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Limits {
  std::size_t max_group_order = 5040;
  std::size_t ball_budget = 2'000'000;
  std::size_t max_hereditary_subsets = 4096;
};

}  // namespace amalgam
