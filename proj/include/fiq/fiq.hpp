#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "fiq/prng.hpp"
#include "fiq/propensity.hpp"

namespace fiq {

/// Resource guard: operations refuse to grow a digit list past this unless
/// told otherwise. Chaotic runs with actualization can only allocate up to
/// the configured bound.
inline constexpr std::size_t kDefaultMaxExplicitDigits = 4096;

/// The interval of the unit line pinned down by a quantity's determined
/// prefix. Width is exactly 2^(-n) for prefix length n; every value the
/// quantity could still actualize to lies inside.
struct DeterminedInterval {
    Rational lower;
    Rational upper;

    Rational width() const { return upper - lower; }
};

struct DeterminedPrefix {
    std::string bits;   // leading run of determined digits, msb first
    std::size_t length; // == bits.size()
};

/// A binary quantity in [0,1] whose digits are propensities rather than bits.
///
/// Digit j (j = 1, 2, ...) holds the propensity for the j-th binary digit
/// after the radix point to be 1. Only finitely many digits are stored;
/// every digit beyond the explicit list implicitly carries propensity 1/2
/// and hence zero information, so the total information of any representable
/// quantity is finite by construction.
///
/// Equality is semantic: explicit trailing 1/2 digits do not distinguish two
/// quantities, since they spell the same digit stream. The stored form is
/// otherwise preserved as built (a shift that leaves a bare trailing (1/2)
/// prints it), and canonical() trims to the minimal representation.
///
/// Text form: `0.` followed by `0`/`1` for determined digits and `(a/b)` for
/// indeterminate ones, e.g. `0.10(1/2)(3/4)`. Printing uses lowest terms;
/// parse/print round-trip.
class Fiq {
public:
    Fiq() = default;

    explicit Fiq(std::vector<Propensity> digits) : digits_(std::move(digits)) {}

    Fiq(std::initializer_list<Propensity> digits) : digits_(digits) {}

    /// A fully determined quantity from a bit string, msb first.
    static Fiq from_bits(const std::string& bits) {
        std::vector<Propensity> ds;
        ds.reserve(bits.size());
        for (char c : bits) {
            if (c == '0') {
                ds.push_back(Propensity::zero());
            } else if (c == '1') {
                ds.push_back(Propensity::one());
            } else {
                throw ParseError(std::string("fiq bits: unexpected character '") + c + "'");
            }
        }
        return Fiq(std::move(ds));
    }

    std::size_t explicit_size() const { return digits_.size(); }

    /// Digit j >= 1; implicitly 1/2 past the explicit list.
    Propensity digit(std::size_t j) const {
        if (j == 0) {
            throw DomainError("fiq digit index starts at 1");
        }
        return j <= digits_.size() ? digits_[j - 1] : Propensity::half();
    }

    const std::vector<Propensity>& explicit_digits() const { return digits_; }

    /// Copy with digit j replaced, growing the explicit list with 1/2 fill
    /// if needed. `max_explicit` guards the growth.
    Fiq with_digit(std::size_t j, const Propensity& p,
                   std::size_t max_explicit = kDefaultMaxExplicitDigits) const {
        if (j == 0) {
            throw DomainError("fiq digit index starts at 1");
        }
        if (j > max_explicit) {
            throw ResourceCapError("digit index " + std::to_string(j) +
                                   " exceeds explicit-digit cap " + std::to_string(max_explicit));
        }
        Fiq out = *this;
        if (j > out.digits_.size()) {
            out.digits_.resize(j, Propensity::half());
        }
        out.digits_[j - 1] = p;
        return out;
    }

    /// Minimal representation: trailing explicit 1/2 digits removed.
    Fiq canonical() const {
        Fiq out = *this;
        while (!out.digits_.empty() && out.digits_.back() == Propensity::half()) {
            out.digits_.pop_back();
        }
        return out;
    }

    /// Maximal leading run of determined digits. Stops at the first digit
    /// with 0 < q < 1 even if later digits are determined.
    DeterminedPrefix determined_prefix() const {
        DeterminedPrefix out{"", 0};
        for (const Propensity& q : digits_) {
            if (!q.is_determined()) {
                break;
            }
            out.bits.push_back(q.determined_bit() ? '1' : '0');
        }
        out.length = out.bits.size();
        return out;
    }

    /// [prefix value, prefix value + 2^(-n)]: where the quantity can still land.
    DeterminedInterval interval() const {
        const DeterminedPrefix p = determined_prefix();
        Rational lower(0);
        for (std::size_t j = 0; j < p.length; ++j) {
            if (p.bits[j] == '1') {
                lower += dyadic_unit(j + 1);
            }
        }
        return DeterminedInterval{lower, lower + dyadic_unit(p.length)};
    }

    /// Sum of per-digit information contents, in bits. Finite always; 0 for
    /// pure potentiality (every digit 1/2).
    double total_information() const {
        double sum = 0.0;
        for (const Propensity& q : digits_) {
            sum += info_content(q);
        }
        return sum;
    }

    /// Semantic comparison: the underlying digit streams, tail included.
    friend bool operator==(const Fiq& a, const Fiq& b) {
        const std::size_t n = std::max(a.digits_.size(), b.digits_.size());
        for (std::size_t j = 1; j <= n; ++j) {
            if (a.digit(j) != b.digit(j)) {
                return false;
            }
        }
        return true;
    }

private:
    std::vector<Propensity> digits_;
};

/// Outcome of actualizing one digit.
struct ActualizedDigit {
    Fiq state;           // post-state; digit j determined
    int bit;             // the resulting binary digit
    bool consumed_draw;  // whether a random draw was spent
};

/// Resolves digit j to 0 or 1: samples bit = 1 with probability exactly q_j,
/// then pins the digit to the sampled value. A digit that is already
/// determined echoes its value and consumes no randomness, which makes the
/// operation idempotent. Never destroys information.
inline ActualizedDigit actualize_digit(const Fiq& x, std::size_t j, Prng& rng,
                                       std::size_t max_explicit = kDefaultMaxExplicitDigits) {
    const Propensity q = x.digit(j); // validates j >= 1
    if (q.is_determined()) {
        return ActualizedDigit{x, q.determined_bit(), false};
    }
    if (j > max_explicit) {
        throw ResourceCapError("digit index " + std::to_string(j) +
                               " exceeds explicit-digit cap " + std::to_string(max_explicit));
    }
    const bool bit = rng.bernoulli(q.value());
    const Propensity pinned = bit ? Propensity::one() : Propensity::zero();
    return ActualizedDigit{x.with_digit(j, pinned, max_explicit), bit ? 1 : 0, true};
}

/// `0.` followed by one token per explicit digit.
inline std::string to_string(const Fiq& x) {
    std::string out = "0.";
    for (const Propensity& q : x.explicit_digits()) {
        if (q.is_determined()) {
            out.push_back(q.determined_bit() ? '1' : '0');
        } else {
            out += "(" + to_string(q.value()) + ")";
        }
    }
    return out;
}

/// Inverse of to_string. Accepts any valid propensity inside parentheses,
/// including determined ones; lowest terms are restored on printing.
inline Fiq parse_fiq(const std::string& text,
                     std::size_t max_explicit = kDefaultMaxExplicitDigits) {
    if (text.size() < 2 || text[0] != '0' || text[1] != '.') {
        throw ParseError("fiq '" + text + "': must start with '0.'");
    }
    std::vector<Propensity> digits;
    std::size_t i = 2;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '0') {
            digits.push_back(Propensity::zero());
            ++i;
        } else if (c == '1') {
            digits.push_back(Propensity::one());
            ++i;
        } else if (c == '(') {
            const std::size_t close = text.find(')', i + 1);
            if (close == std::string::npos) {
                throw ParseError("fiq '" + text + "': unterminated '('");
            }
            const Rational q = parse_rational(text.substr(i + 1, close - i - 1));
            if (q < 0 || q > 1) {
                throw ParseError("fiq '" + text + "': digit propensity " +
                                 to_string(q) + " outside [0,1]");
            }
            digits.emplace_back(q);
            i = close + 1;
        } else {
            throw ParseError(std::string("fiq '") + text + "': unexpected character '" + c + "'");
        }
        if (digits.size() > max_explicit) {
            throw ResourceCapError("fiq '" + text + "': more than " +
                                   std::to_string(max_explicit) + " explicit digits");
        }
    }
    return Fiq(std::move(digits));
}

} // namespace fiq
