#pragma once

#include <stdexcept>

namespace topicbench {

// Bad user input (malformed files, invalid parameters). CLI maps this to exit 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Broken internal invariant. CLI maps this to exit 2.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace topicbench
