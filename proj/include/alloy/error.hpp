#pragma once

#include <stdexcept>
#include <string>

namespace alloy {

// Bad arguments or violated preconditions.
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A linear solve that could not be carried out (singular or near-singular matrix).
struct solve_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw precondition_error(what);
}

}  // namespace alloy
