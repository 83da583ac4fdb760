#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "fiq/behavior.hpp"

namespace fiq {

/// Desk-scale cap: this module exists to generate behaviors for the
/// feasibility check, not to be a quantum simulator.
inline constexpr Eigen::Index kMaxLocalDimension = 8;

inline constexpr double kNormTolerance = 1e-12;

/// A pure state: complex amplitudes with unit norm (within 1e-12).
class StateVector {
public:
    explicit StateVector(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
        if (amps_.size() < 2) {
            throw DimensionError("state: dimension must be >= 2");
        }
        if (std::abs(amps_.squaredNorm() - 1.0) > kNormTolerance) {
            throw DomainError("state: amplitudes are not normalized");
        }
    }

    Eigen::Index dimension() const { return amps_.size(); }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }

private:
    Eigen::VectorXcd amps_;
};

/// A labeled orthonormal basis: the causally relevant "choice of
/// measurement" for Born propensities. Columns are the basis vectors.
class ObservableBasis {
public:
    ObservableBasis(std::string label, Eigen::MatrixXcd vectors)
        : label_(std::move(label)), vectors_(std::move(vectors)) {
        if (vectors_.rows() != vectors_.cols() || vectors_.rows() < 2) {
            throw DimensionError("basis '" + label_ + "': need d >= 2 vectors of dimension d");
        }
        const Eigen::MatrixXcd gram = vectors_.adjoint() * vectors_;
        const double defect =
            (gram - Eigen::MatrixXcd::Identity(vectors_.cols(), vectors_.cols())).cwiseAbs().maxCoeff();
        if (defect > kNormTolerance) {
            throw DomainError("basis '" + label_ + "': vectors are not orthonormal (defect " +
                              std::to_string(defect) + ")");
        }
    }

    /// Standard (computational) basis in dimension d.
    static ObservableBasis standard(std::string label, Eigen::Index d) {
        return ObservableBasis(std::move(label), Eigen::MatrixXcd::Identity(d, d));
    }

    /// Real rotation of the 2-dimensional standard basis by `angle`.
    static ObservableBasis rotated_qubit(std::string label, double angle) {
        Eigen::MatrixXcd m(2, 2);
        m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
        return ObservableBasis(std::move(label), m);
    }

    const std::string& label() const { return label_; }
    Eigen::Index dimension() const { return vectors_.rows(); }
    Eigen::VectorXcd vector(Eigen::Index i) const { return vectors_.col(i); }
    const Eigen::MatrixXcd& vectors() const { return vectors_; }

private:
    std::string label_;
    Eigen::MatrixXcd vectors_; // columns are the basis vectors
};

/// Outcome propensities of one measurement context.
struct ContextDistribution {
    std::string context_label;
    std::vector<double> outcome_propensities;
};

/// Born rule: propensity |<a_i|psi>|^2 for each basis vector. The outputs of
/// incompatible bases on one state are the "generalized probabilities" the
/// feasibility module probes: each context normalizes, but nothing promises
/// a joint space across contexts.
inline ContextDistribution born_propensities(const StateVector& psi, const ObservableBasis& basis) {
    if (basis.dimension() != psi.dimension()) {
        throw DimensionError("born_propensities: basis '" + basis.label() + "' has dimension " +
                             std::to_string(basis.dimension()) + ", state has " +
                             std::to_string(psi.dimension()));
    }
    const Eigen::VectorXcd overlaps = basis.vectors().adjoint() * psi.amplitudes();
    ContextDistribution out{basis.label(), {}};
    out.outcome_propensities.reserve(static_cast<std::size_t>(overlaps.size()));
    for (Eigen::Index i = 0; i < overlaps.size(); ++i) {
        out.outcome_propensities.push_back(std::norm(overlaps[i]));
    }
    return out;
}

/// Joint outcome tables p(a,b | x,y) for a bipartite state and two lists of
/// local bases, computed on product projectors. One behavior context per
/// setting pair; party-0 measurements keep their own labels, likewise
/// party-1. Marginals of one party do not depend on the other's setting.
inline RealBehavior bipartite_behavior(const StateVector& psi,
                                       const std::vector<ObservableBasis>& party0,
                                       const std::vector<ObservableBasis>& party1) {
    if (party0.size() < 2 || party1.size() < 2) {
        throw DomainError("bipartite_behavior: each party needs >= 2 settings");
    }
    const Eigen::Index d0 = party0.front().dimension();
    const Eigen::Index d1 = party1.front().dimension();
    if (d0 > kMaxLocalDimension || d1 > kMaxLocalDimension) {
        throw DimensionError("bipartite_behavior: local dimension above cap 8");
    }
    for (const auto& b : party0) {
        if (b.dimension() != d0) {
            throw DimensionError("bipartite_behavior: party-0 settings disagree on dimension");
        }
    }
    for (const auto& b : party1) {
        if (b.dimension() != d1) {
            throw DimensionError("bipartite_behavior: party-1 settings disagree on dimension");
        }
    }
    if (psi.dimension() != d0 * d1) {
        throw DimensionError("bipartite_behavior: state dimension " +
                             std::to_string(psi.dimension()) + " is not " +
                             std::to_string(d0) + "*" + std::to_string(d1));
    }

    RealBehavior behavior;
    for (const auto& b : party0) {
        behavior.measurements.push_back(Measurement{b.label(), static_cast<std::size_t>(d0)});
    }
    for (const auto& b : party1) {
        behavior.measurements.push_back(Measurement{b.label(), static_cast<std::size_t>(d1)});
    }

    for (std::size_t x = 0; x < party0.size(); ++x) {
        for (std::size_t y = 0; y < party1.size(); ++y) {
            RealBehavior::Context ctx;
            ctx.measurement_ids = {x, party0.size() + y};
            ctx.probabilities.reserve(static_cast<std::size_t>(d0 * d1));
            for (Eigen::Index a = 0; a < d0; ++a) {
                for (Eigen::Index b = 0; b < d1; ++b) {
                    // <a (x) b | psi> with the product-state index convention
                    // |i,j> = |i>|j> at flat index i*d1 + j.
                    std::complex<double> overlap(0.0, 0.0);
                    const Eigen::VectorXcd va = party0[x].vector(a);
                    const Eigen::VectorXcd vb = party1[y].vector(b);
                    for (Eigen::Index i = 0; i < d0; ++i) {
                        for (Eigen::Index j = 0; j < d1; ++j) {
                            overlap += std::conj(va[i]) * std::conj(vb[j]) *
                                       psi.amplitudes()[i * d1 + j];
                        }
                    }
                    ctx.probabilities.push_back(std::norm(overlap));
                }
            }
            behavior.contexts.push_back(std::move(ctx));
        }
    }
    validate(behavior);
    return behavior;
}

/// (|01> - |10>)/sqrt(2): the maximally anti-correlated two-qubit state.
inline StateVector singlet_state() {
    Eigen::VectorXcd v(4);
    const double r = 1.0 / std::sqrt(2.0);
    v << 0.0, r, -r, 0.0;
    return StateVector(v);
}

} // namespace fiq
