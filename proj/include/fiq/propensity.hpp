#pragma once

#include <cmath>
#include <compare>
#include <string>

#include "fiq/rational.hpp"

namespace fiq {

/// A single-case tendency: an exact rational in [0, 1].
///
/// The value quantifies how strongly one specific outcome is disposed to
/// obtain under its complete causally relevant conditions. 1 means the
/// outcome follows necessarily, 0 that it is causally excluded; anything in
/// between is a genuinely indeterminate bias. Kept in lowest terms.
class Propensity {
public:
    /// Defaults to 1/2: no bias either way.
    Propensity() : value_(1, 2) {}

    explicit Propensity(Rational value) : value_(std::move(value)) {
        if (value_ < 0 || value_ > 1) {
            throw DomainError("propensity " + fiq::to_string(value_) + " outside [0,1]");
        }
    }

    Propensity(long long numerator, long long denominator)
        : Propensity(Rational(Int(numerator), Int(denominator))) {}

    static Propensity zero() { return Propensity(Rational(0)); }
    static Propensity one() { return Propensity(Rational(1)); }
    static Propensity half() { return Propensity(); }

    /// Certainty of occurrence or of failure; everything else is potential.
    bool is_determined() const { return value_ == 0 || value_ == 1; }

    /// For a determined propensity, the bit it fixes.
    int determined_bit() const {
        if (!is_determined()) {
            throw DomainError("determined_bit on indeterminate propensity");
        }
        return value_ == 1 ? 1 : 0;
    }

    const Rational& value() const { return value_; }

    /// The propensity of the complementary outcome, 1 - q.
    Propensity complement() const { return Propensity(Rational(1) - value_); }

    friend bool operator==(const Propensity& a, const Propensity& b) = default;
    friend auto operator<=>(const Propensity& a, const Propensity& b) {
        return a.value_ < b.value_   ? std::strong_ordering::less
               : a.value_ > b.value_ ? std::strong_ordering::greater
                                     : std::strong_ordering::equal;
    }

private:
    Rational value_;
};

inline std::string to_string(const Propensity& p) { return to_string(p.value()); }

/// Binary entropy H(q) = -q lg q - (1-q) lg(1-q) in bits, with 0 lg 0 = 0.
///
/// Propensities are exact but H(q) is generically irrational, so this is the
/// one place the library answers in binary64 (a few ulp off at worst). Both
/// terms convert through the exact rational, which makes H(q) == H(1-q) hold
/// bitwise.
inline double binary_entropy(const Propensity& q) {
    if (q.is_determined()) {
        return 0.0;
    }
    const double p = to_double(q.value());
    const double pc = to_double(q.complement().value());
    return -(p * std::log2(p) + pc * std::log2(pc));
}

/// Information content I(q) = 1 - H(q) in bits. 1 iff determined, 0 iff q = 1/2.
inline double info_content(const Propensity& q) {
    return 1.0 - binary_entropy(q);
}

} // namespace fiq
