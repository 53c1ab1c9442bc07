#include "qcloner/curves.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qcloner/eavesdrop.hpp"
#include "qcloner/parallel.hpp"

namespace qcloner {

namespace {

bool on_branch(double r, Branch branch)
{
    return branch == Branch::Low ? r <= kSymmetricRatio : r >= kSymmetricRatio;
}

// Disturbance clipped to the closed form's domain; the unclipped value can
// exceed 1/6 by one ulp at r = 1/3.
double clipped_disturbance(double r)
{
    return std::clamp(disturbance(r), 0.0, kMaxDisturbance);
}

}  // namespace

std::vector<double> branch_grid(Branch branch, int n)
{
    if (n < 2)
        throw std::invalid_argument("grid needs at least two points");
    const double lo = branch == Branch::Low ? 0.0 : kSymmetricRatio;
    const double hi = branch == Branch::Low ? kSymmetricRatio : 1.0;
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    grid.back() = hi;
    return grid;
}

std::vector<double> unit_grid(int n)
{
    if (n < 2)
        throw std::invalid_argument("grid needs at least two points");
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
    return grid;
}

std::vector<InformationRow> information_curve(std::span<const double> r_grid, Branch branch, Scheme scheme,
                                              const OptimizerConfig& cfg)
{
    for (const double r : r_grid)
        if (!(r >= 0.0 && r <= 1.0) || !on_branch(r, branch))
            throw std::invalid_argument("grid point r=" + std::to_string(r) + " is not on the requested branch");

    auto rows = parallel_map(r_grid.size(), [&](std::size_t i) {
        const double r = r_grid[i];
        const double d = clipped_disturbance(r);
        const auto ens = eve_ensemble(r, Basis::X);
        switch (scheme) {
        case Scheme::Conventional:
            return InformationRow{r, d, mutual_information(ens, conventional_povm())};
        case Scheme::OptimalClosedForm:
            return InformationRow{r, d, mutual_information(ens, optimal_povm(d, Basis::X, branch))};
        case Scheme::OptimalNumeric: {
            const auto report = optimize_accessible_info(ens, cfg);
            return InformationRow{r, d, report.best_info, report.converged};
        }
        }
        throw std::invalid_argument("unknown scheme");
    });
    std::stable_sort(rows.begin(), rows.end(), [](const InformationRow& a, const InformationRow& b) {
        return a.d < b.d || (a.d == b.d && a.r < b.r);
    });
    return rows;
}

std::vector<SweepRow> sweep_optimal_info(std::span<const double> r_grid, const OptimizerConfig& cfg)
{
    cfg.validate();
    return parallel_map(r_grid.size(), [&](std::size_t i) {
        const double r = r_grid[i];
        const double d = clipped_disturbance(r);
        const auto ens = eve_ensemble(r, Basis::X);
        const auto report = optimize_accessible_info(ens, cfg);
        const double closed = mutual_information(ens, optimal_povm(d, Basis::X, branch_of(r)));
        const std::array<EnsembleMember, 2> members{{{0.5, ens.states[0]}, {0.5, ens.states[1]}}};
        return SweepRow{r, d, report.best_info, closed, report.best_info - closed, holevo_bound(members),
                        report.converged};
    });
}

double eve_holevo(double r)
{
    const auto ens = eve_ensemble(r, Basis::X);
    const std::array<EnsembleMember, 2> members{{{ens.priors[0], ens.states[0]}, {ens.priors[1], ens.states[1]}}};
    return holevo_bound(members);
}

}  // namespace qcloner
