#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fiq/behavior.hpp"

namespace fiq {

inline constexpr std::size_t kDefaultAssignmentCap = 1000000;
inline constexpr long long kDefaultMaxDenominator = 1000000;

// ---------------------------------------------------------------------------
// Rationalization of binary64 behaviors
// ---------------------------------------------------------------------------

/// Best rational approximation to x with denominator <= max_den, by the
/// continued-fraction expansion run in exact arithmetic (the double is first
/// read as the exact dyadic it is). Between the last convergent that fits
/// and the best semiconvergent, whichever is closer wins.
inline Rational best_rational_approx(const Rational& x, const Int& max_den) {
    if (max_den < 1) {
        throw DomainError("best_rational_approx: max_den must be >= 1");
    }
    if (den(x) <= max_den) {
        return x;
    }
    // Convergents h/k of the continued fraction of x.
    Int h_prev = 0, k_prev = 1; // h_{-2}/k_{-2}
    Int h_cur = 1, k_cur = 0;   // h_{-1}/k_{-1}
    Rational rem = x;
    bool first = true;
    for (;;) {
        const Int a = first ? Int(num(rem) / den(rem) - (num(rem) % den(rem) < 0 ? 1 : 0))
                            : Int(num(rem) / den(rem));
        const Int h_next = a * h_cur + h_prev;
        const Int k_next = a * k_cur + k_prev;
        if (k_next > max_den) {
            // Largest admissible semiconvergent on top of h_cur/k_cur.
            const Int t = (max_den - k_prev) / k_cur;
            const Int h_semi = t * h_cur + h_prev;
            const Int k_semi = t * k_cur + k_prev;
            const Rational conv(h_cur, k_cur);
            if (k_semi <= 0) {
                return conv;
            }
            const Rational semi(h_semi, k_semi);
            return abs(x - semi) < abs(x - conv) ? semi : conv;
        }
        h_prev = std::exchange(h_cur, h_next);
        k_prev = std::exchange(k_cur, k_next);
        first = false;
        const Rational frac = rem - a;
        if (frac == 0) {
            return Rational(h_cur, k_cur); // x itself, exactly representable
        }
        rem = Rational(1) / frac;
    }
}

/// Converts a binary64 behavior to an exact one: every entry is replaced by
/// its best rational approximation with denominator <= max_den, which must
/// land within `tolerance` of the input. Each context is then renormalized
/// to sum to exactly 1 by adding the residue to its largest entry (first of
/// the largest on ties). Entries that are already bounded-denominator
/// rationals in a context summing to 1 pass through unchanged.
inline Behavior rationalize(const RealBehavior& input, double tolerance = 1e-9,
                            long long max_denominator = kDefaultMaxDenominator) {
    validate(input, 1e-6);
    if (!(tolerance > 0)) {
        throw DomainError("rationalize: tolerance must be positive");
    }
    const Int max_den(max_denominator);
    const Rational tol(tolerance); // exact dyadic value of the double

    Behavior out;
    out.measurements = input.measurements;
    for (const auto& ic : input.contexts) {
        Behavior::Context c;
        c.measurement_ids = ic.measurement_ids;
        c.probabilities.reserve(ic.probabilities.size());
        for (double p : ic.probabilities) {
            const Rational exact(p);
            const Rational approx = best_rational_approx(exact, max_den);
            if (abs(approx - exact) > tol) {
                throw ApproximationError(
                    "rationalize: no rational with denominator <= " +
                    std::to_string(max_denominator) + " lies within tolerance of " +
                    std::to_string(p));
            }
            c.probabilities.push_back(approx);
        }
        // Distribute the residue onto the largest entry.
        Rational sum(0);
        for (const Rational& p : c.probabilities) {
            sum += p;
        }
        if (sum != 1) {
            std::size_t largest = 0;
            for (std::size_t i = 1; i < c.probabilities.size(); ++i) {
                if (c.probabilities[i] > c.probabilities[largest]) {
                    largest = i;
                }
            }
            c.probabilities[largest] += Rational(1) - sum;
            if (c.probabilities[largest] < 0 || c.probabilities[largest] > 1) {
                throw ApproximationError("rationalize: residue pushed an entry outside [0,1]");
            }
        }
        out.contexts.push_back(std::move(c));
    }
    validate(out);
    return out;
}

// ---------------------------------------------------------------------------
// Global probability space feasibility
// ---------------------------------------------------------------------------

/// One deterministic global assignment with its mixture weight: an outcome
/// for every measurement at once, i.e. one candidate hidden-variable value.
struct AssignmentWeight {
    std::vector<std::size_t> assignment; // outcome per measurement, in declaration order
    Rational weight;
};

/// Exact witness of infeasibility: a linear functional on behavior space
/// whose value on the behavior strictly exceeds its maximum over all
/// deterministic global assignments.
struct SeparatingFunctional {
    std::vector<std::vector<Rational>> coefficients; // same shape as the contexts
    Rational deterministic_max; // max of the functional over all assignments
    Rational behavior_value;    // functional evaluated on the behavior
    Rational violation;         // behavior_value - deterministic_max, strictly positive
};

/// Exactly one of `weights` / `functional` is populated.
struct FeasibilityVerdict {
    bool feasible = false;
    std::vector<AssignmentWeight> weights;
    std::optional<SeparatingFunctional> functional;
};

namespace detail {

/// Mixed-radix enumeration state over one outcome per measurement.
inline bool next_assignment(std::vector<std::size_t>& a, const std::vector<Measurement>& ms) {
    for (std::size_t i = a.size(); i-- > 0;) {
        if (++a[i] < ms[i].n_outcomes) {
            return true;
        }
        a[i] = 0;
    }
    return false;
}

/// Row index layout: contexts stacked in order, then one normalization row.
struct RowLayout {
    std::vector<std::size_t> context_base;
    std::size_t total_rows = 0; // includes the normalization row
};

inline RowLayout make_row_layout(const Behavior& b) {
    RowLayout layout;
    std::size_t row = 0;
    for (const auto& c : b.contexts) {
        layout.context_base.push_back(row);
        row += c.probabilities.size();
    }
    layout.total_rows = row + 1;
    return layout;
}

/// The 0/1 behavior column of one deterministic assignment (normalization
/// row included).
inline std::vector<std::size_t> assignment_rows(const Behavior& b, const RowLayout& layout,
                                                const std::vector<std::size_t>& assignment) {
    std::vector<std::size_t> rows;
    rows.reserve(b.contexts.size() + 1);
    for (std::size_t ci = 0; ci < b.contexts.size(); ++ci) {
        const auto& c = b.contexts[ci];
        std::size_t idx = 0;
        for (std::size_t mi : c.measurement_ids) {
            idx = idx * b.measurements[mi].n_outcomes + assignment[mi];
        }
        rows.push_back(layout.context_base[ci] + idx);
    }
    rows.push_back(layout.total_rows - 1);
    return rows;
}

/// Phase-1 simplex over exact rationals with Bland's rule: decides whether
/// A w = rhs, w >= 0 has a solution, returning either w or a Farkas vector y
/// with y^T A <= 0 and y^T rhs > 0. Columns of A arrive as sparse 0/1 row
/// lists; rhs must be non-negative.
class ExactFeasibilitySolver {
public:
    ExactFeasibilitySolver(std::size_t rows, const std::vector<std::vector<std::size_t>>& columns,
                           std::vector<Rational> rhs)
        : m_(rows), n_(columns.size()) {
        // Tableau: structural columns, artificial columns, rhs. Objective:
        // minimize the sum of artificials.
        tableau_.assign(m_, std::vector<Rational>(n_ + m_ + 1, Rational(0)));
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t r : columns[j]) {
                tableau_[r][j] = 1;
            }
        }
        for (std::size_t i = 0; i < m_; ++i) {
            tableau_[i][n_ + i] = 1;
            tableau_[i][n_ + m_] = std::move(rhs[i]);
        }
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            basis_[i] = n_ + i;
        }
        // Reduced-cost row for the all-artificial basis: r_j = c_j - sum_i a_ij.
        objective_.assign(n_ + m_ + 1, Rational(0));
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            Rational colsum(0);
            for (std::size_t i = 0; i < m_; ++i) {
                colsum += tableau_[i][j];
            }
            objective_[j] = (j >= n_ ? Rational(1) : Rational(0)) - colsum;
        }
        Rational rhssum(0);
        for (std::size_t i = 0; i < m_; ++i) {
            rhssum += tableau_[i][n_ + m_];
        }
        objective_[n_ + m_] = -rhssum; // negative of the current objective value
    }

    /// Runs the pivoting to optimality. True iff the system is feasible.
    bool solve() {
        for (;;) {
            // Bland: first improving column.
            std::size_t enter = n_ + m_;
            for (std::size_t j = 0; j < n_ + m_; ++j) {
                if (objective_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_ + m_) {
                break; // optimal
            }
            // Min ratio; Bland tie-break on the smallest basis label.
            std::size_t leave = m_;
            for (std::size_t i = 0; i < m_; ++i) {
                if (tableau_[i][enter] <= 0) {
                    continue;
                }
                if (leave == m_) {
                    leave = i;
                    continue;
                }
                const Rational lhs = tableau_[i][n_ + m_] * tableau_[leave][enter];
                const Rational rhs2 = tableau_[leave][n_ + m_] * tableau_[i][enter];
                if (lhs < rhs2 || (lhs == rhs2 && basis_[i] < basis_[leave])) {
                    leave = i;
                }
            }
            if (leave == m_) {
                // Phase-1 objective is bounded below by 0; unboundedness
                // cannot happen with a correct tableau.
                throw Error("feasibility solver: unbounded phase-1 objective");
            }
            pivot(leave, enter);
        }
        return objective_[n_ + m_] == 0; // optimum == 0
    }

    /// Structural solution (call only after solve() returned true).
    std::vector<Rational> solution() const {
        std::vector<Rational> w(n_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) {
                w[basis_[i]] = tableau_[i][n_ + m_];
            }
        }
        return w;
    }

    /// Farkas vector (call only after solve() returned false): y_i recovered
    /// from the reduced cost of artificial i, y_i = 1 - r_{n+i}.
    std::vector<Rational> farkas() const {
        std::vector<Rational> y(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            y[i] = Rational(1) - objective_[n_ + i];
        }
        return y;
    }

private:
    void pivot(std::size_t row, std::size_t col) {
        const Rational inv = Rational(1) / tableau_[row][col];
        for (auto& v : tableau_[row]) {
            v *= inv;
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || tableau_[i][col] == 0) {
                continue;
            }
            const Rational factor = tableau_[i][col];
            for (std::size_t j = 0; j <= n_ + m_; ++j) {
                tableau_[i][j] -= factor * tableau_[row][j];
            }
        }
        if (objective_[col] != 0) {
            const Rational factor = objective_[col];
            for (std::size_t j = 0; j <= n_ + m_; ++j) {
                objective_[j] -= factor * tableau_[row][j];
            }
        }
        basis_[row] = col;
    }

    std::size_t m_;
    std::size_t n_;
    std::vector<std::vector<Rational>> tableau_;
    std::vector<Rational> objective_;
    std::vector<std::size_t> basis_;
};

} // namespace detail

/// Decides whether the behavior is a convex mixture of deterministic global
/// assignments -- whether one probability space underneath all contexts
/// could produce it. The assignments are enumerated outright (one outcome
/// per measurement; these are the candidate hidden variables) and exact
/// rational linear programming settles membership, so the verdict is an
/// algebraic fact, not a tolerance call: either mixing weights that
/// reproduce every context distribution exactly, or a separating functional
/// with strictly positive violation.
inline FeasibilityVerdict check_global_space(const Behavior& behavior,
                                             std::size_t assignment_cap = kDefaultAssignmentCap) {
    validate(behavior);

    Int count(1);
    for (const Measurement& m : behavior.measurements) {
        count *= Int(m.n_outcomes);
        if (count > Int(assignment_cap)) {
            throw ResourceCapError("check_global_space: more than " +
                                   std::to_string(assignment_cap) +
                                   " deterministic assignments");
        }
    }
    const std::size_t n_assignments = count.convert_to<std::size_t>();

    const detail::RowLayout layout = detail::make_row_layout(behavior);

    std::vector<std::vector<std::size_t>> columns;
    columns.reserve(n_assignments);
    std::vector<std::vector<std::size_t>> assignments;
    assignments.reserve(n_assignments);
    {
        std::vector<std::size_t> a(behavior.measurements.size(), 0);
        do {
            assignments.push_back(a);
            columns.push_back(detail::assignment_rows(behavior, layout, a));
        } while (detail::next_assignment(a, behavior.measurements));
    }

    std::vector<Rational> rhs;
    rhs.reserve(layout.total_rows);
    for (const auto& c : behavior.contexts) {
        for (const Rational& p : c.probabilities) {
            rhs.push_back(p);
        }
    }
    rhs.push_back(Rational(1));

    detail::ExactFeasibilitySolver solver(layout.total_rows, columns, std::move(rhs));
    FeasibilityVerdict verdict;
    if (solver.solve()) {
        verdict.feasible = true;
        const std::vector<Rational> w = solver.solution();
        for (std::size_t j = 0; j < n_assignments; ++j) {
            if (w[j] != 0) {
                verdict.weights.push_back(AssignmentWeight{assignments[j], w[j]});
            }
        }
        // Soundness: the mixture must reproduce every context exactly.
        for (std::size_t ci = 0; ci < behavior.contexts.size(); ++ci) {
            const auto& c = behavior.contexts[ci];
            std::vector<Rational> mixed(c.probabilities.size(), Rational(0));
            for (const auto& aw : verdict.weights) {
                std::size_t idx = 0;
                for (std::size_t mi : c.measurement_ids) {
                    idx = idx * behavior.measurements[mi].n_outcomes + aw.assignment[mi];
                }
                mixed[idx] += aw.weight;
            }
            for (std::size_t k = 0; k < mixed.size(); ++k) {
                if (mixed[k] != c.probabilities[k]) {
                    throw Error("check_global_space: internal error, mixture fails to reproduce "
                                "context '" + behavior.context_label(c) + "'");
                }
            }
        }
        return verdict;
    }

    // Infeasible: turn the Farkas vector into a separating functional over
    // behavior space. The normalization row's multiplier folds into the
    // threshold; the true deterministic maximum is then computed outright.
    const std::vector<Rational> y = solver.farkas();
    SeparatingFunctional f;
    f.coefficients.resize(behavior.contexts.size());
    for (std::size_t ci = 0; ci < behavior.contexts.size(); ++ci) {
        const std::size_t base = layout.context_base[ci];
        const std::size_t len = behavior.contexts[ci].probabilities.size();
        f.coefficients[ci].assign(y.begin() + static_cast<std::ptrdiff_t>(base),
                                  y.begin() + static_cast<std::ptrdiff_t>(base + len));
    }

    bool have_max = false;
    for (const auto& assignment : assignments) {
        const auto rows = detail::assignment_rows(behavior, layout, assignment);
        Rational value(0);
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) { // skip normalization row
            value += y[rows[i]];
        }
        if (!have_max || value > f.deterministic_max) {
            f.deterministic_max = value;
            have_max = true;
        }
    }

    f.behavior_value = 0;
    for (std::size_t ci = 0; ci < behavior.contexts.size(); ++ci) {
        const auto& c = behavior.contexts[ci];
        for (std::size_t k = 0; k < c.probabilities.size(); ++k) {
            f.behavior_value += f.coefficients[ci][k] * c.probabilities[k];
        }
    }
    f.violation = f.behavior_value - f.deterministic_max;
    if (f.violation <= 0) {
        throw Error("check_global_space: internal error, certificate does not separate");
    }
    verdict.feasible = false;
    verdict.functional = std::move(f);
    return verdict;
}

/// The behavior a single deterministic assignment induces: probability 1 on
/// the induced outcome tuple of every context.
inline Behavior deterministic_behavior(const Behavior& shape,
                                       const std::vector<std::size_t>& assignment) {
    Behavior out;
    out.measurements = shape.measurements;
    for (const auto& c : shape.contexts) {
        Behavior::Context dc;
        dc.measurement_ids = c.measurement_ids;
        dc.probabilities.assign(c.probabilities.size(), Rational(0));
        std::size_t idx = 0;
        for (std::size_t mi : c.measurement_ids) {
            idx = idx * out.measurements[mi].n_outcomes + assignment[mi];
        }
        dc.probabilities[idx] = 1;
        out.contexts.push_back(std::move(dc));
    }
    return out;
}

} // namespace fiq
