#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rtbound {

using Rat = mpq_class;

struct SyntaxError : std::runtime_error {
    std::size_t position;
    std::string expected;
    SyntaxError(std::size_t pos, const std::string& what_expected)
        : std::runtime_error("syntax error at offset " + std::to_string(pos) +
                             ": expected " + what_expected),
          position(pos),
          expected(what_expected) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg)
        : std::runtime_error("validation error: " + msg) {}
};

struct StructureError : std::runtime_error {
    explicit StructureError(const std::string& msg)
        : std::runtime_error("structure error: " + msg) {}
};

struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg)
        : std::runtime_error("resource limit exceeded: " + msg) {}
};

inline Rat rat_of(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses a non-negative decimal literal ("17", "8.091") into an exact rational.
Rat rat_from_decimal(const std::string& text);

/// Smallest integer multiple of 10^-3 strictly greater than x.
Rat round_up_step_1e3(const Rat& x);

/// Nearest IEEE double (round-to-nearest, unlike mpq_get_d's truncation).
double to_double(const Rat& x);

/// Decimal rendering: exact ("17.8") when the denominator is of the form
/// 2^a*5^b, otherwise "num/den".
std::string decimal_string(const Rat& x);

/// Fixed three-decimal rendering of an exact multiple of 10^-3.
std::string fixed3_string(const Rat& x);

}  // namespace rtbound
