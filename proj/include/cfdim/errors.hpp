#pragma once

#include <stdexcept>
#include <string>

namespace cfdim {

// Schedule cannot produce the requested structure (empty window range,
// unsatisfiable sandwich, bad parameters).
struct ScheduleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An enumeration or summation would exceed its term/node budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gap query on a word with no same-order neighbor on either side.
struct NoSiblingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cassels tail requested past the end of a finite expansion.
struct TailUndefinedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cfdim
