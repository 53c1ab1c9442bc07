#pragma once

// Attack analysis: Bob's error rate and what Eve can learn from her two
// clones once the basis is announced.

#include <array>

#include "qcloner/cloner.hpp"
#include "qcloner/quantum.hpp"

namespace qcloner {

struct ChannelParams {
    double p_d = 0.0;   ///< dark-count probability per detection window
    double p_b0 = 0.0;  ///< probability that Bob detects no photon

    void validate() const;
};

/// Bob's error rate including dark counts. Reduces to d when p_d = 0.
double qber(double d, const ChannelParams& channel);

/// Eve's two candidate states for one basis, with equal priors.
struct EveEnsemble {
    Basis basis = Basis::X;
    std::array<DensityOperator, 2> states;
    std::array<double, 2> priors{0.5, 0.5};

    Eigen::Index dim() const { return states[0].dim(); }
};

EveEnsemble eve_ensemble(double r, Basis basis, const SlotAssignment& slots = {});

/// Shannon mutual information (bits) between the ensemble label and the
/// measurement outcome.
double mutual_information(const EveEnsemble& ensemble, const Povm& povm);

/// Product projectors onto |+-x>|+-x>, ordered ++, +-, -+, --.
Povm conventional_povm();

/// The conventional measurement rotated onto a basis: every equatorial phase
/// shifted by pi/2 for Y. X returns conventional_povm().
Povm conventional_povm(Basis basis);

/// arccos(2 sqrt(d) / sqrt(1 - 2d)), defined for d in [0, 1/6].
double theta_of_disturbance(double d);

/// Separable projective measurement built from |chi_theta>. On the High
/// branch theta changes sign, which swaps the roles of Eve's two qubits.
Povm optimal_povm(double d, Basis basis, Branch branch = Branch::Low);

/// (|0> + e^{i theta}|1>)/sqrt2.
PureState chi_state(double theta);

}  // namespace qcloner
