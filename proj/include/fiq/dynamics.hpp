#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fiq/measurement.hpp"

namespace fiq {

/// Digit-shift dynamics. The doubling map x -> 2x mod 1 acts on a binary
/// expansion as a left shift by one, so it is implemented as an exact
/// sequence shift and never through floating-point multiplication: what
/// moves is significance, not rounded values. ShiftBy(k) composes k of them.
class MapKind {
public:
    static MapKind doubling() { return MapKind(1, true); }

    static MapKind shift_by(std::size_t k) {
        if (k < 1) {
            throw DomainError("map: shift amount must be >= 1");
        }
        return MapKind(k, false);
    }

    std::size_t shift_amount() const { return shift_; }
    bool is_doubling() const { return doubling_; }

private:
    MapKind(std::size_t shift, bool doubling) : shift_(shift), doubling_(doubling) {}

    std::size_t shift_;
    bool doubling_;
};

/// `doubling` or `shift:<k>`.
inline MapKind parse_map(const std::string& text) {
    if (text == "doubling") {
        return MapKind::doubling();
    }
    if (text.rfind("shift:", 0) == 0) {
        const std::string value = text.substr(6);
        const Int k = detail::parse_decimal_int(value, "map field shift");
        if (k < 1) {
            throw ParseError("map field shift: must be >= 1, got " + value);
        }
        return MapKind::shift_by(k.convert_to<std::size_t>());
    }
    throw ParseError("map '" + text + "': expected doubling or shift:<k>");
}

inline std::string to_string(const MapKind& map) {
    return map.is_doubling() ? "doubling" : "shift:" + std::to_string(map.shift_amount());
}

struct ShiftResult {
    Fiq state;
    std::vector<Propensity> discarded; // the leading digits shifted out, in order
};

/// One exact application of the map: digit j of the result is digit j+k of
/// the input; the k leading digits are returned as discarded. Discarded
/// digits are logged, never actualized -- once shifted past the radix point
/// they cannot influence anything downstream, so sampling them would spend
/// randomness without causal consequence. Propensities move unchanged: the
/// map itself determines nothing.
inline ShiftResult step_map(const Fiq& x, const MapKind& map) {
    const std::size_t k = map.shift_amount();
    ShiftResult out;
    out.discarded.reserve(k);
    for (std::size_t j = 1; j <= k; ++j) {
        out.discarded.push_back(x.digit(j)); // implicit 1/2 beyond the list
    }
    const auto& digits = x.explicit_digits();
    if (k < digits.size()) {
        out.state = Fiq(std::vector<Propensity>(digits.begin() + static_cast<std::ptrdiff_t>(k),
                                                digits.end()));
    }
    return out;
}

struct TrajectoryStep {
    std::size_t step;
    Fiq state;
    std::vector<Propensity> discarded;       // empty at step 0
    std::vector<ActualizationEvent> events;  // empty under Mechanism::none()
};

/// Full history of one seeded run: states, shifted-out digits, and every
/// actualization event. Bit-exact reproducible from the seed.
struct TrajectoryRecord {
    std::uint64_t seed = 0;
    std::vector<TrajectoryStep> steps;

    const Fiq& final_state() const { return steps.back().state; }
};

/// Evolves x0 for `steps` map applications, alternating the exact shift with
/// the mechanism's actualization hook. Step 0 records the initial state
/// untouched; each later record holds the state after shift-then-hook.
inline TrajectoryRecord run_trajectory(const Fiq& x0, const MapKind& map, std::size_t steps,
                                       const Mechanism& mechanism, std::uint64_t rng_seed,
                                       std::size_t max_explicit = kDefaultMaxExplicitDigits) {
    Prng rng(rng_seed);
    TrajectoryRecord record;
    record.seed = rng_seed;
    record.steps.reserve(steps + 1);
    record.steps.push_back(TrajectoryStep{0, x0, {}, {}});
    Fiq x = x0;
    for (std::size_t s = 1; s <= steps; ++s) {
        ShiftResult shifted = step_map(x, map);
        HookResult hooked = apply_mechanism(shifted.state, mechanism, rng, s, max_explicit);
        x = hooked.state;
        record.steps.push_back(TrajectoryStep{s, x, std::move(shifted.discarded),
                                              std::move(hooked.events)});
    }
    return record;
}

/// Empirical distribution over coarse final outcomes.
struct EnsembleResult {
    std::map<std::string, std::size_t> histogram; // m-bit outcome -> count
    std::size_t trials = 0;
    std::size_t precision = 0;
};

/// Runs `trials` independently seeded trajectories (trial i uses
/// derive_seed(rng_seed, i)), evolves each with no mechanism, then fully
/// actualizes the final state by measuring it at `precision` digits.
/// Aggregation is by trial index, so the histogram is schedule-independent.
inline EnsembleResult ensemble_spread(const Fiq& x0, const MapKind& map, std::size_t steps,
                                      std::size_t trials, std::size_t precision,
                                      std::uint64_t rng_seed,
                                      std::size_t max_explicit = kDefaultMaxExplicitDigits) {
    if (trials < 1) {
        throw DomainError("ensemble_spread: trials must be >= 1");
    }
    if (precision < 1) {
        throw DomainError("ensemble_spread: precision must be >= 1");
    }
    EnsembleResult out;
    out.trials = trials;
    out.precision = precision;
    for (std::size_t i = 0; i < trials; ++i) {
        Prng rng(derive_seed(rng_seed, i));
        Fiq x = x0;
        for (std::size_t s = 0; s < steps; ++s) {
            x = step_map(x, map).state;
        }
        const MeasurementOutcome mo = measure(x, precision, rng, max_explicit);
        ++out.histogram[mo.bits];
    }
    return out;
}

/// One line per step: step number, state text, discarded digits as exact
/// rationals, events as index:bit:tag. Empty columns print `-`.
inline std::string format_step_line(const TrajectoryStep& s) {
    std::ostringstream os;
    os << s.step << ' ' << to_string(s.state) << ' ';
    if (s.discarded.empty()) {
        os << '-';
    } else {
        for (std::size_t i = 0; i < s.discarded.size(); ++i) {
            if (i) os << ',';
            os << to_string(s.discarded[i].value());
        }
    }
    os << ' ';
    if (s.events.empty()) {
        os << '-';
    } else {
        for (std::size_t i = 0; i < s.events.size(); ++i) {
            if (i) os << ',';
            os << s.events[i].digit_index << ':' << s.events[i].resulting_bit << ':'
               << s.events[i].mechanism_tag;
        }
    }
    return os.str();
}

} // namespace fiq
