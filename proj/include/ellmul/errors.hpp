#pragma once

#include <stdexcept>
#include <string>

namespace ellmul {

// Bad arguments or out-of-range requests (CLI exit code 2).
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A construction step ran out of retries or hit an infeasible instance
// (CLI exit code 3).
struct construction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A finished artifact failed its correctness checks (CLI exit code 4).
struct verification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Broken internal invariant: always a bug, never a user error.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace ellmul
