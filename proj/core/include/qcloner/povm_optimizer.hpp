#pragma once

// Numerical maximization of the mutual information between a two-state
// ensemble and a POVM (accessible information).

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "qcloner/eavesdrop.hpp"
#include "qcloner/quantum.hpp"

namespace qcloner {

struct OptimizerConfig {
    int n_elements = 4;
    int max_iter = 2000;
    double tol = 1e-10;  ///< stop once an accepted step gains less than this (bits)
    int restarts = 16;
    std::uint64_t seed = 42;

    void validate() const;
};

struct OptimizationReport {
    double best_info = 0.0;
    Povm best_povm;
    int iterations_used = 0;
    int restart_index = 0;
    bool converged = false;
};

/// Clips negative eigenvalues of every element, then rescales symmetrically
/// with S^{-1/2} so the elements sum to identity. Throws if S is singular.
Povm project_to_valid_povm(std::span<const Matrix> raw);

/// Element generators with i.i.d. standard-normal real and imaginary parts,
/// squared and projected.
Povm random_povm(int n_elements, Eigen::Index dim, std::mt19937_64& rng);

/// Generator for one restart, derived from (seed, restart_index) only.
std::mt19937_64 restart_stream(std::uint64_t seed, int restart_index);

struct AscentResult {
    Povm povm;
    double info;
    int iterations;
    bool converged;
};

/// Called after every accepted step with the current POVM and information.
using AscentObserver = std::function<void(const Povm&, double)>;

/// Fixed-point ascent from a given start. Information never decreases
/// between accepted steps.
AscentResult ascend(const EveEnsemble& ensemble, Povm start, const OptimizerConfig& cfg,
                    const AscentObserver& observer = {});

/// Splits every element of rank >= 2 into its weighted eigenprojectors.
Povm split_to_rank_one(const Povm& povm);

/// Seeded multi-restart search; deterministic for a fixed config.
OptimizationReport optimize_accessible_info(const EveEnsemble& ensemble, const OptimizerConfig& cfg = {});

}  // namespace qcloner
