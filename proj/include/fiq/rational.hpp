#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "fiq/errors.hpp"

namespace fiq {

// Exact arithmetic backbone. All probabilistic semantics (sampling,
// comparison, LP pivoting) run on these; binary64 is used only for
// reporting quantities that are generically irrational (entropies,
// frequencies, bounds).
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& r) { return numerator(r); }
inline Int den(const Rational& r) { return denominator(r); }

/// Nearest-double conversion. Exact for dyadics with small exponents.
inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

/// Prints an exact rational: `a/b`, or just `a` when b = 1.
inline std::string to_string(const Rational& r) {
    return r.str();
}

namespace detail {
inline Int parse_decimal_int(const std::string& text, const std::string& context) {
    std::size_t i = (!text.empty() && text[0] == '-') ? 1 : 0;
    if (i == text.size()) {
        throw ParseError(context + ": '" + text + "' is not an integer");
    }
    for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw ParseError(context + ": '" + text + "' is not an integer");
        }
    }
    return Int(text);
}
} // namespace detail

/// Parses `a/b` or a bare integer `a`. Whitespace is not accepted.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) {
        throw ParseError("rational: empty string");
    }
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(detail::parse_decimal_int(text, "rational"));
    }
    const Int n = detail::parse_decimal_int(text.substr(0, slash), "rational numerator");
    const Int d = detail::parse_decimal_int(text.substr(slash + 1), "rational denominator");
    if (d == 0) {
        throw ParseError("rational: zero denominator in '" + text + "'");
    }
    return Rational(n, d);
}

/// 2^(-n) as an exact rational.
inline Rational dyadic_unit(std::size_t n) {
    Int d = Int(1) << n;
    return Rational(Int(1), d);
}

} // namespace fiq
