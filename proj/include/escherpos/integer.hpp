#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace escherpos {

using Int = std::int64_t;

inline Int checked_add(Int a, Int b)
{
    Int r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in addition: " + std::to_string(a) + " + " + std::to_string(b));
    return r;
}

inline Int checked_sub(Int a, Int b)
{
    Int r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in subtraction: " + std::to_string(a) + " - " + std::to_string(b));
    return r;
}

inline Int checked_mul(Int a, Int b)
{
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in multiplication: " + std::to_string(a) + " * " + std::to_string(b));
    return r;
}

inline Int factorial(int n)
{
    Int r = 1;
    for (int i = 2; i <= n; ++i)
        r = checked_mul(r, i);
    return r;
}

/// Raised when a mathematical invariant that the library relies on is observed
/// to be false. Such an error is a counterexample, not a usage mistake.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace escherpos
