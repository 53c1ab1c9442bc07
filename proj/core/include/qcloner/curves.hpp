#pragma once

// Disturbance-versus-information sweeps.

#include <span>
#include <vector>

#include "qcloner/cloner.hpp"
#include "qcloner/povm_optimizer.hpp"

namespace qcloner {

enum class Scheme { Conventional, OptimalClosedForm, OptimalNumeric };

/// n evenly spaced ratios covering one branch: [0, 1/3] for Low, [1/3, 1] for
/// High. Both ends included.
std::vector<double> branch_grid(Branch branch, int n);

/// n evenly spaced ratios on [0, 1].
std::vector<double> unit_grid(int n);

struct InformationRow {
    double r;
    double d;
    double info;
    bool converged = true;
};

/// X-basis information at each r (all of which must lie on `branch`), sorted
/// by disturbance. `cfg` is used only by OptimalNumeric.
std::vector<InformationRow> information_curve(std::span<const double> r_grid, Branch branch, Scheme scheme,
                                              const OptimizerConfig& cfg = {});

struct SweepRow {
    double r;
    double d;
    double info_numeric;
    double info_closed_form;
    double gap;  ///< info_numeric - info_closed_form
    double holevo;
    bool converged;
};

/// Numerical optimum versus the closed-form measurement at each r. The closed
/// form uses the branch that r lies on.
std::vector<SweepRow> sweep_optimal_info(std::span<const double> r_grid, const OptimizerConfig& cfg = {});

/// Holevo quantity of the X-basis ensemble at r.
double eve_holevo(double r);

}  // namespace qcloner
