#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "fiq/prng.hpp"
#include "fiq/propensity.hpp"

namespace fiq {

/// Two causally related events: a cause C with tendency p_C to obtain, and
/// an effect E with conditional tendencies given C and given not-C.
struct CausalModel {
    Propensity cause;                 // p(C)
    Propensity effect_given_cause;    // p(E|C)
    Propensity effect_given_not_cause; // p(E|notC)
};

/// Total tendency of the effect: p(C) p(E|C) + (1 - p(C)) p(E|notC).
/// Lands in [0,1] automatically. Exact.
inline Propensity marginal_effect(const CausalModel& m) {
    const Rational pc = m.cause.value();
    return Propensity(pc * m.effect_given_cause.value() +
                      (Rational(1) - pc) * m.effect_given_not_cause.value());
}

/// What the Bayes reversal does to a causal reading of the model.
///
/// `cause_given_effect` is P(C|E) computed from the joint measure -- plain
/// probability arithmetic. If one also insists, reading the numbers
/// causally, that the effect cannot influence its cause (P(C|E) = P(C)),
/// then Bayes' rule forces P(E|C) = P(E): any causally nontrivial model
/// contradicts that constraint. `contradiction` is therefore true exactly
/// when the cause matters at all -- the demonstration that "causal tendency"
/// and "Kolmogorov conditional probability" cannot be the same thing.
struct HumphreysVerdict {
    bool causally_nontrivial;     // p(E|C) != p(E), exact comparison
    Propensity cause_given_effect; // P(C|E) by Bayes, exact
    bool contradiction;
};

/// All arithmetic exact; no tolerances. Throws DegenerateModelError when
/// p(C) = 0 or the marginal p(E) = 0, where the reversal is undefined --
/// that is a degenerate model, not a contradiction.
inline HumphreysVerdict humphreys_check(const CausalModel& m) {
    const Rational pc = m.cause.value();
    if (pc == 0) {
        throw DegenerateModelError("humphreys_check: p(C) = 0, Bayes reversal undefined");
    }
    const Rational pe = marginal_effect(m).value();
    if (pe == 0) {
        throw DegenerateModelError("humphreys_check: marginal p(E) = 0, Bayes reversal undefined");
    }
    const Rational pec = m.effect_given_cause.value();
    HumphreysVerdict v{
        pec != pe,
        Propensity(pc * pec / pe),
        false,
    };
    // Imposing P(C|E) = P(C) in Bayes' rule forces P(E|C) = P(E); a model
    // where that fails cannot keep both the causal reading and the rule.
    v.contradiction = v.causally_nontrivial;
    return v;
}

/// One row of a law-of-large-numbers experiment.
struct LlnReport {
    std::size_t n = 0;          // trials per run
    std::size_t runs = 0;
    Rational epsilon;           // deviation threshold
    std::size_t deviating_runs = 0;
    double deviation_fraction = 0.0; // fraction of runs with |f_n - p| >= eps
    double hoeffding_bound = 0.0;    // 2 exp(-2 n eps^2), analytic reference
};

/// For each run: n exact-threshold Bernoulli(p) trials, relative frequency
/// f_n, and an exact-rational test |f_n - p| >= eps. Runs are independently
/// seeded by derive_seed(rng_seed, run). The returned fraction is what the
/// law of large numbers says must die out as n grows; the Hoeffding bound
/// is reported alongside for reference.
inline LlnReport lln_experiment(const Propensity& p, std::size_t n, std::size_t runs,
                                const Rational& epsilon, std::uint64_t rng_seed) {
    if (n < 1 || runs < 1) {
        throw DomainError("lln_experiment: n and runs must be >= 1");
    }
    if (epsilon <= 0 || epsilon >= 1) {
        throw DomainError("lln_experiment: epsilon must lie in (0,1)");
    }
    LlnReport report;
    report.n = n;
    report.runs = runs;
    report.epsilon = epsilon;
    for (std::size_t run = 0; run < runs; ++run) {
        Prng rng(derive_seed(rng_seed, run));
        std::size_t successes = 0;
        for (std::size_t t = 0; t < n; ++t) {
            if (rng.bernoulli(p.value())) {
                ++successes;
            }
        }
        const Rational f = Rational(Int(successes), Int(n));
        const Rational dev = f >= p.value() ? f - p.value() : p.value() - f;
        if (dev >= epsilon) {
            ++report.deviating_runs;
        }
    }
    report.deviation_fraction =
        static_cast<double>(report.deviating_runs) / static_cast<double>(runs);
    const double eps = to_double(epsilon);
    report.hoeffding_bound = 2.0 * std::exp(-2.0 * static_cast<double>(n) * eps * eps);
    return report;
}

} // namespace fiq
