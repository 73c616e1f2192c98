#pragma once
//! Error types shared across the toolkit.
//!
//! scenario_error marks malformed or inconsistent user input; numeric_error
//! marks a computation that left its validity domain (guard trips, non-finite
//! values).  The CLI maps them to distinct exit codes.

#include <stdexcept>

namespace tcs {

struct scenario_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tcs
