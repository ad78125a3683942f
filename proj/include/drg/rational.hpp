#pragma once

#include <gmpxx.h>
#include <string>

namespace drg {

using Rational = mpq_class;

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string to_string(const Rational& r) {
    return r.get_str();   // "p" or "p/q", canonical form
}

// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
Rational parse_rational(const std::string& text);

} // namespace drg
