#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fiq/fiq.hpp"

namespace fiq {

/// One digit resolving to a definite bit, with the mechanism that forced it.
struct ActualizationEvent {
    std::size_t step;        // dynamics step the event happened at (0 outside a trajectory)
    std::size_t digit_index; // 1-based
    int resulting_bit;
    std::string mechanism_tag; // "measurement" or "spontaneous"
};

/// How potentialities become actual along a trajectory.
///
/// kNone leaves propensities untouched (the map only transports them).
/// kMeasurementInduced pins the first `precision` digits after every step,
/// as if an external read-out imposed a determination. kSpontaneous gives
/// every indeterminate explicit digit with index <= `window` an independent
/// chance `rate` to resolve on its own at each step.
class Mechanism {
public:
    enum class Kind { kNone, kMeasurementInduced, kSpontaneous };

    static Mechanism none() { return Mechanism(Kind::kNone, 0, Rational(0), 0); }

    static Mechanism measurement_induced(std::size_t precision) {
        if (precision < 1) {
            throw DomainError("mechanism: measurement precision must be >= 1");
        }
        return Mechanism(Kind::kMeasurementInduced, precision, Rational(0), 0);
    }

    static Mechanism spontaneous(const Rational& rate, std::size_t window) {
        if (rate < 0 || rate > 1) {
            throw DomainError("mechanism: spontaneous rate outside [0,1]");
        }
        if (window < 1) {
            throw DomainError("mechanism: spontaneous window must be >= 1");
        }
        return Mechanism(Kind::kSpontaneous, 0, rate, window);
    }

    Kind kind() const { return kind_; }
    std::size_t precision() const { return precision_; }
    const Rational& rate() const { return rate_; }
    std::size_t window() const { return window_; }

private:
    Mechanism(Kind kind, std::size_t precision, Rational rate, std::size_t window)
        : kind_(kind), precision_(precision), rate_(std::move(rate)), window_(window) {}

    Kind kind_;
    std::size_t precision_;
    Rational rate_;
    std::size_t window_;
};

/// CLI-facing descriptor strings: `none`, `measure:m=<int>`,
/// `spont:lambda=<a/b>,w=<int>`.
inline Mechanism parse_mechanism(const std::string& text) {
    if (text == "none") {
        return Mechanism::none();
    }
    if (text.rfind("measure:", 0) == 0) {
        const std::string rest = text.substr(8);
        if (rest.rfind("m=", 0) != 0) {
            throw ParseError("mechanism '" + text + "': expected field m=<int>");
        }
        const std::string value = rest.substr(2);
        const Int m = detail::parse_decimal_int(value, "mechanism field m");
        if (m < 1) {
            throw ParseError("mechanism field m: must be >= 1, got " + value);
        }
        return Mechanism::measurement_induced(m.convert_to<std::size_t>());
    }
    if (text.rfind("spont:", 0) == 0) {
        std::string rest = text.substr(6);
        const std::size_t comma = rest.find(',');
        if (comma == std::string::npos) {
            throw ParseError("mechanism '" + text + "': expected fields lambda=<a/b>,w=<int>");
        }
        const std::string lam = rest.substr(0, comma);
        const std::string win = rest.substr(comma + 1);
        if (lam.rfind("lambda=", 0) != 0) {
            throw ParseError("mechanism '" + text + "': expected field lambda=<a/b>");
        }
        if (win.rfind("w=", 0) != 0) {
            throw ParseError("mechanism '" + text + "': expected field w=<int>");
        }
        const Rational rate = parse_rational(lam.substr(7));
        if (rate < 0 || rate > 1) {
            throw ParseError("mechanism field lambda: " + to_string(rate) + " outside [0,1]");
        }
        const Int w = detail::parse_decimal_int(win.substr(2), "mechanism field w");
        if (w < 1) {
            throw ParseError("mechanism field w: must be >= 1, got " + win.substr(2));
        }
        return Mechanism::spontaneous(rate, w.convert_to<std::size_t>());
    }
    throw ParseError("mechanism '" + text + "': expected none, measure:m=<int>, or spont:lambda=<a/b>,w=<int>");
}

inline std::string to_string(const Mechanism& m) {
    switch (m.kind()) {
        case Mechanism::Kind::kNone:
            return "none";
        case Mechanism::Kind::kMeasurementInduced:
            return "measure:m=" + std::to_string(m.precision());
        case Mechanism::Kind::kSpontaneous:
            return "spont:lambda=" + to_string(m.rate()) + ",w=" + std::to_string(m.window());
    }
    return "none";
}

/// Result of reading a quantity to `m` binary digits.
struct MeasurementOutcome {
    std::string bits;                // the m leading bits, now all determined
    Fiq collapsed_state;             // digits 1..m pinned, everything past m untouched
    std::size_t consumed_randomness; // number of digits that actually had to be sampled
};

/// An ideal read-out at precision m: digits 1..m actualize in ascending
/// order; already-determined digits pass through and cost nothing. The
/// post-state interval has width <= 2^(-m), the localization the read-out
/// imposes. Measuring the collapsed state again at the same precision
/// returns the same bits with zero draws.
inline MeasurementOutcome measure(const Fiq& x, std::size_t m, Prng& rng,
                                  std::size_t max_explicit = kDefaultMaxExplicitDigits) {
    if (m < 1) {
        throw DomainError("measure: precision must be >= 1");
    }
    MeasurementOutcome out{"", x, 0};
    for (std::size_t j = 1; j <= m; ++j) {
        ActualizedDigit a = actualize_digit(out.collapsed_state, j, rng, max_explicit);
        out.collapsed_state = std::move(a.state);
        out.bits.push_back(a.bit ? '1' : '0');
        if (a.consumed_draw) {
            ++out.consumed_randomness;
        }
    }
    return out;
}

struct HookResult {
    Fiq state;
    std::vector<ActualizationEvent> events;
};

/// Spontaneous-collapse hook, invoked once per dynamics step: every
/// indeterminate explicit digit with index <= window independently resolves
/// with probability `rate`. Digits beyond the explicit list are left as
/// pure potentiality; resolving unexpressed tail digits would spend
/// randomness on digits with no causal role.
inline HookResult spontaneous_hook(const Fiq& x, const Rational& rate, std::size_t window,
                                   Prng& rng, std::size_t step = 0,
                                   std::size_t max_explicit = kDefaultMaxExplicitDigits) {
    if (rate < 0 || rate > 1) {
        throw DomainError("spontaneous_hook: rate outside [0,1]");
    }
    HookResult out{x, {}};
    const std::size_t last = std::min(window, x.explicit_size());
    for (std::size_t j = 1; j <= last; ++j) {
        if (out.state.digit(j).is_determined()) {
            continue;
        }
        if (rng.bernoulli(rate)) {
            ActualizedDigit a = actualize_digit(out.state, j, rng, max_explicit);
            out.state = std::move(a.state);
            out.events.push_back(ActualizationEvent{step, j, a.bit, "spontaneous"});
        }
    }
    return out;
}

/// Applies one step of the mechanism; used by trajectory evolution.
inline HookResult apply_mechanism(const Fiq& x, const Mechanism& mech, Prng& rng,
                                  std::size_t step,
                                  std::size_t max_explicit = kDefaultMaxExplicitDigits) {
    switch (mech.kind()) {
        case Mechanism::Kind::kNone:
            return HookResult{x, {}};
        case Mechanism::Kind::kMeasurementInduced: {
            HookResult out{x, {}};
            for (std::size_t j = 1; j <= mech.precision(); ++j) {
                const bool was_determined = out.state.digit(j).is_determined();
                ActualizedDigit a = actualize_digit(out.state, j, rng, max_explicit);
                out.state = std::move(a.state);
                if (!was_determined) {
                    out.events.push_back(ActualizationEvent{step, j, a.bit, "measurement"});
                }
            }
            return out;
        }
        case Mechanism::Kind::kSpontaneous:
            return spontaneous_hook(x, mech.rate(), mech.window(), rng, step, max_explicit);
    }
    return HookResult{x, {}};
}

} // namespace fiq
