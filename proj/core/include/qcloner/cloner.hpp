#pragma once

// Analytic model of the post-selected 1->3 phase-covariant cloner.

#include <array>

#include "qcloner/quantum.hpp"

namespace qcloner {

/// Branching ratio at which Bob's and Eve's clones have equal fidelity.
inline constexpr double kSymmetricRatio = 1.0 / 3.0;

/// Largest disturbance the cloner can impose (reached at kSymmetricRatio).
inline constexpr double kMaxDisturbance = 1.0 / 6.0;

enum class Basis { X, Y };

/// One of the four BB84 preparations on the Bloch equator.
struct Bb84Symbol {
    Basis basis;
    int bit;

    /// Equatorial phase: X/0 -> 0, X/1 -> pi, Y/0 -> -pi/2, Y/1 -> pi/2.
    double phase() const;
};

/// The two equatorial phases of a basis, ordered (bit 0, bit 1).
std::array<double, 2> basis_phases(Basis basis);

struct CloneParams {
    double r;
    double phi;

    void validate() const;
};

/// Which qubit slot of the cloner output belongs to whom.
struct SlotAssignment {
    int eve1 = 1;
    int eve2 = 0;
    int bob = 2;

    /// The labels exactly as printed next to the cloner state
    /// (Bob, Eve1, Eve2 = slots 0, 1, 2). They fail the fidelity identity.
    static constexpr SlotAssignment as_printed() { return {1, 2, 0}; }

    void validate() const;
};

enum class Party { Bob, Eve1, Eve2, EvePair };

/// The two disturbance branches: r in [0, 1/3] and r in [1/3, 1].
enum class Branch { Low, High };

Branch branch_of(double r);

/// (|0> + e^{i phi}|1>)/sqrt2.
PureState input_state(double phi);

/// Three-qubit post-selected cloner output. Unnormalized: its squared norm is
/// the success probability.
PureState xi_state(const CloneParams& params);

double success_probability(double r);
double bob_fidelity(double r);
/// Shared by both of Eve's clones.
double eve_fidelity(double r);
/// 1 - bob_fidelity(r).
double disturbance(double r);

/// Inverse of disturbance() on one branch, by bisection to 1e-10.
double r_for_disturbance(double d, Branch branch);

/// Normalized reduced state of one party. EvePair is ordered (Eve1, Eve2).
DensityOperator reduced_state(const CloneParams& params, Party party,
                              const SlotAssignment& slots = {});

}  // namespace qcloner
