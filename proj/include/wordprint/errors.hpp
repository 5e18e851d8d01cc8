#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wordprint {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed textual input: unknown glyph, duplicate letters in an alphabet, ...
class parse_error : public error {
public:
    using error::error;
};

// Precondition violation: empty word where a nonempty one is required,
// symbols outside the expected alphabet, inconsistent arguments.
class domain_error : public error {
public:
    using error::error;
};

// A 64-bit occurrence counter would wrap. Counts are exact or an error,
// never silently truncated.
class count_overflow_error : public error {
public:
    using error::error;
};

// A configured cap or budget ran out before the result was complete.
class budget_error : public error {
public:
    using error::error;
};

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw count_overflow_error("64-bit occurrence counter overflow");
    return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw count_overflow_error("64-bit occurrence counter overflow");
    return r;
}

} // namespace wordprint
