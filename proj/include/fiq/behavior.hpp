#pragma once

#include <cmath>
#include <cstddef>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fiq/rational.hpp"

namespace fiq {

/// A measurement label together with its outcome alphabet 0..n_outcomes-1.
struct Measurement {
    std::string label;
    std::size_t n_outcomes = 0;
};

/// Per-context outcome distributions for a multi-measurement experiment:
/// one row per jointly measured tuple of measurements, one probability per
/// joint outcome. Whether such a family embeds into a single probability
/// space is exactly what the feasibility check decides.
///
/// Joint outcomes are flattened row-major with the last measurement in the
/// context tuple varying fastest.
template <class P>
struct BasicBehavior {
    struct Context {
        std::vector<std::size_t> measurement_ids; // indices into `measurements`
        std::vector<P> probabilities;             // size = product of alphabets
    };

    std::vector<Measurement> measurements;
    std::vector<Context> contexts;

    std::size_t joint_size(const Context& c) const {
        std::size_t n = 1;
        for (std::size_t id : c.measurement_ids) {
            n *= measurements[id].n_outcomes;
        }
        return n;
    }

    /// Flat index of an outcome tuple within a context.
    std::size_t outcome_index(const Context& c, const std::vector<std::size_t>& outcomes) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < c.measurement_ids.size(); ++i) {
            idx = idx * measurements[c.measurement_ids[i]].n_outcomes + outcomes[i];
        }
        return idx;
    }

    /// Inverse of outcome_index.
    std::vector<std::size_t> outcome_tuple(const Context& c, std::size_t index) const {
        std::vector<std::size_t> outcomes(c.measurement_ids.size());
        for (std::size_t i = c.measurement_ids.size(); i-- > 0;) {
            const std::size_t k = measurements[c.measurement_ids[i]].n_outcomes;
            outcomes[i] = index % k;
            index /= k;
        }
        return outcomes;
    }

    std::string context_label(const Context& c) const {
        std::string out;
        for (std::size_t i = 0; i < c.measurement_ids.size(); ++i) {
            if (i) out += ' ';
            out += measurements[c.measurement_ids[i]].label;
        }
        return out;
    }
};

/// Exact-rational behavior: the form the feasibility verdict is stated on.
using Behavior = BasicBehavior<Rational>;

/// Binary64 behavior, as produced by quantum computations; feed through
/// rationalize() before asking for a feasibility verdict.
using RealBehavior = BasicBehavior<double>;

namespace detail {
template <class P>
void validate_structure(const BasicBehavior<P>& b) {
    std::map<std::string, std::size_t> seen;
    for (const Measurement& m : b.measurements) {
        if (m.label.empty() || m.n_outcomes < 1) {
            throw DomainError("behavior: measurement '" + m.label + "' needs a label and >= 1 outcome");
        }
        if (!seen.emplace(m.label, m.n_outcomes).second) {
            throw DomainError("behavior: duplicate measurement label '" + m.label + "'");
        }
    }
    if (b.contexts.empty()) {
        throw DomainError("behavior: no contexts");
    }
    for (const auto& c : b.contexts) {
        if (c.measurement_ids.empty()) {
            throw DomainError("behavior: empty context");
        }
        std::vector<bool> used(b.measurements.size(), false);
        for (std::size_t id : c.measurement_ids) {
            if (id >= b.measurements.size()) {
                throw DomainError("behavior: context references unknown measurement");
            }
            if (used[id]) {
                throw DomainError("behavior: measurement '" + b.measurements[id].label +
                                  "' repeated within a context");
            }
            used[id] = true;
        }
        if (c.probabilities.size() != b.joint_size(c)) {
            throw DomainError("behavior: context '" + b.context_label(c) + "' has " +
                              std::to_string(c.probabilities.size()) + " probabilities, expected " +
                              std::to_string(b.joint_size(c)));
        }
    }
}
} // namespace detail

/// Exact validation: non-negative entries, each context summing to exactly 1.
inline void validate(const Behavior& b) {
    detail::validate_structure(b);
    for (const auto& c : b.contexts) {
        Rational sum(0);
        for (const Rational& p : c.probabilities) {
            if (p < 0) {
                throw DomainError("behavior: negative probability in context '" +
                                  b.context_label(c) + "'");
            }
            sum += p;
        }
        if (sum != 1) {
            throw DomainError("behavior: context '" + b.context_label(c) +
                              "' sums to " + to_string(sum) + ", expected exactly 1");
        }
    }
}

/// Float validation: entries in [0,1] up to rounding, sums within `sum_tol`.
inline void validate(const RealBehavior& b, double sum_tol = 1e-10) {
    detail::validate_structure(b);
    for (const auto& c : b.contexts) {
        double sum = 0.0;
        for (double p : c.probabilities) {
            if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) {
                throw DomainError("behavior: probability outside [0,1] in context '" +
                                  b.context_label(c) + "'");
            }
            sum += p;
        }
        if (std::fabs(sum - 1.0) > sum_tol) {
            throw DomainError("behavior: context '" + b.context_label(c) +
                              "' sums to " + std::to_string(sum));
        }
    }
}

// ---------------------------------------------------------------------------
// File format
//
//   # comment and blank lines are ignored
//   measurement <label> <n_outcomes>
//   context <label> [<label> ...] : <p_0> <p_1> ... <p_{k-1}>
//
// Probabilities are exact rationals `a/b` (or integers), or decimals; a file
// with any decimal entry parses as a RealBehavior and must be rationalized
// before feasibility checking. Joint outcomes are ordered row-major with the
// last measurement varying fastest.
// ---------------------------------------------------------------------------

using AnyBehavior = std::variant<Behavior, RealBehavior>;

inline AnyBehavior read_behavior(std::istream& in) {
    std::vector<Measurement> measurements;
    std::map<std::string, std::size_t> id_of;
    struct RawContext {
        std::vector<std::size_t> ids;
        std::vector<std::string> tokens;
    };
    std::vector<RawContext> raw;
    bool any_decimal = false;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#') {
            continue;
        }
        if (word == "measurement") {
            std::string label;
            long long n = 0;
            if (!(ls >> label >> n) || n < 1) {
                throw ParseError("behavior line " + std::to_string(lineno) +
                                 ": expected `measurement <label> <n_outcomes>`");
            }
            if (!id_of.emplace(label, measurements.size()).second) {
                throw ParseError("behavior line " + std::to_string(lineno) +
                                 ": duplicate measurement '" + label + "'");
            }
            measurements.push_back(Measurement{label, static_cast<std::size_t>(n)});
        } else if (word == "context") {
            RawContext rc;
            std::string tok;
            bool in_probs = false;
            while (ls >> tok) {
                if (tok == ":") {
                    in_probs = true;
                } else if (!in_probs) {
                    auto it = id_of.find(tok);
                    if (it == id_of.end()) {
                        throw ParseError("behavior line " + std::to_string(lineno) +
                                         ": unknown measurement '" + tok + "' in context");
                    }
                    rc.ids.push_back(it->second);
                } else {
                    if (tok.find_first_of(".eE") != std::string::npos) {
                        any_decimal = true;
                    }
                    rc.tokens.push_back(tok);
                }
            }
            if (!in_probs || rc.ids.empty() || rc.tokens.empty()) {
                throw ParseError("behavior line " + std::to_string(lineno) +
                                 ": expected `context <label>... : <p>...`");
            }
            raw.push_back(std::move(rc));
        } else {
            throw ParseError("behavior line " + std::to_string(lineno) +
                             ": unknown directive '" + word + "'");
        }
    }
    if (raw.empty()) {
        throw ParseError("behavior: no contexts in input");
    }

    if (any_decimal) {
        RealBehavior b;
        b.measurements = measurements;
        for (auto& rc : raw) {
            RealBehavior::Context c;
            c.measurement_ids = rc.ids;
            for (const std::string& t : rc.tokens) {
                if (t.find('/') != std::string::npos) {
                    c.probabilities.push_back(to_double(parse_rational(t)));
                } else {
                    std::size_t pos = 0;
                    double v = 0.0;
                    try {
                        v = std::stod(t, &pos);
                    } catch (const std::exception&) {
                        throw ParseError("behavior: probability '" + t + "' is not a number");
                    }
                    if (pos != t.size()) {
                        throw ParseError("behavior: probability '" + t + "' is not a number");
                    }
                    c.probabilities.push_back(v);
                }
            }
            b.contexts.push_back(std::move(c));
        }
        validate(b, 1e-6); // file input may be loosely rounded; rationalize fixes the residue
        return b;
    }

    Behavior b;
    b.measurements = measurements;
    for (auto& rc : raw) {
        Behavior::Context c;
        c.measurement_ids = rc.ids;
        for (const std::string& t : rc.tokens) {
            c.probabilities.push_back(parse_rational(t));
        }
        b.contexts.push_back(std::move(c));
    }
    validate(b);
    return b;
}

inline void write_behavior(std::ostream& out, const Behavior& b) {
    for (const Measurement& m : b.measurements) {
        out << "measurement " << m.label << ' ' << m.n_outcomes << '\n';
    }
    for (const auto& c : b.contexts) {
        out << "context " << b.context_label(c) << " :";
        for (const Rational& p : c.probabilities) {
            out << ' ' << to_string(p);
        }
        out << '\n';
    }
}

inline void write_behavior(std::ostream& out, const RealBehavior& b) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    for (const Measurement& m : b.measurements) {
        out << "measurement " << m.label << ' ' << m.n_outcomes << '\n';
    }
    for (const auto& c : b.contexts) {
        out << "context " << b.context_label(c) << " :";
        for (double p : c.probabilities) {
            out << ' ' << p;
        }
        out << '\n';
    }
    out.precision(old_precision);
}

} // namespace fiq
