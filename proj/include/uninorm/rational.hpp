#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "uninorm/errors.hpp"

namespace uninorm {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

/// Prints "p/q", or just "p" when the denominator is 1.
inline std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (!is_integer(r)) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

/// Accepts "n" or "p/q" with optional leading minus signs.
Rat parse_rat(std::string_view text);

} // namespace uninorm
