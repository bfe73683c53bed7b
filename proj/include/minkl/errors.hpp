#pragma once

#include <stdexcept>
#include <string>

namespace minkl {

// Malformed user input: negative weights, weight sum off by more than the
// construction tolerance, bad index sets, unparsable values.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation (v not in (0,2),
// beta = 1, t <= 0, ...).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Request exceeds a configured resource limit, e.g. support size above K_max
// for exact subset enumeration.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace minkl
