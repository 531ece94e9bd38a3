#pragma once

#include <stdexcept>
#include <string>

namespace aprec {

/// A search whose input lies outside the configured budget.
class budget_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bisection refused: sampled values of a function expected to be increasing were not.
class monotonicity_violation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exact computation was requested for data that only exists in floating point.
class mode_mismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class precondition_violation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace aprec
