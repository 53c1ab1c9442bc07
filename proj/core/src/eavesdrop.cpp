#include "qcloner/eavesdrop.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcloner {

namespace {

using std::numbers::pi;

// Round-off slack on the upper end of the disturbance range; disturbance(1/3)
// evaluates a hair above 1/6 in floating point.
constexpr double kDisturbanceSlack = 1e-12;

Povm product_povm(std::array<double, 2> first, std::array<double, 2> second)
{
    std::vector<Matrix> elements;
    for (const double a : first)
        for (const double b : second)
            elements.push_back(projector(tensor_product(chi_state(a), chi_state(b))));
    return Povm(std::move(elements));
}

}  // namespace

void ChannelParams::validate() const
{
    if (!(p_d >= 0.0 && p_d <= 1.0) || !(p_b0 >= 0.0 && p_b0 <= 1.0))
        throw std::domain_error("channel probabilities must lie in [0, 1]");
}

double qber(double d, const ChannelParams& channel)
{
    channel.validate();
    if (!(d >= 0.0 && d <= kMaxDisturbance + kDisturbanceSlack))
        throw std::domain_error("disturbance outside [0, 1/6]");
    const double denom = 1.0 - channel.p_b0 + 2.0 * channel.p_b0 * channel.p_d;
    if (!(denom > 0.0))
        throw std::domain_error("error rate undefined: Bob never registers a click");
    return ((1.0 - channel.p_b0) * d + channel.p_b0 * channel.p_d) / denom;
}

EveEnsemble eve_ensemble(double r, Basis basis, const SlotAssignment& slots)
{
    const auto phases = basis_phases(basis);
    return EveEnsemble{
        basis,
        {reduced_state({r, phases[0]}, Party::EvePair, slots),
         reduced_state({r, phases[1]}, Party::EvePair, slots)},
        {0.5, 0.5},
    };
}

double mutual_information(const EveEnsemble& ensemble, const Povm& povm)
{
    if (povm.dim() != ensemble.dim() || ensemble.states[1].dim() != ensemble.dim())
        throw std::invalid_argument("mutual_information: POVM and ensemble dimensions differ");

    const std::size_t outcomes = povm.size();
    std::vector<std::array<double, 2>> joint(outcomes);
    std::vector<double> p_outcome(outcomes, 0.0);
    std::array<double, 2> p_label{0.0, 0.0};
    for (std::size_t k = 0; k < outcomes; ++k)
        for (std::size_t j = 0; j < 2; ++j) {
            const double p = ensemble.priors[j] *
                             std::max(0.0, (ensemble.states[j].matrix() * povm[k]).trace().real());
            joint[k][j] = p;
            p_outcome[k] += p;
            p_label[j] += p;
        }

    double info = 0.0;
    for (std::size_t k = 0; k < outcomes; ++k)
        for (std::size_t j = 0; j < 2; ++j) {
            const double p = joint[k][j];
            if (p > 0.0)
                info += p * std::log2(p / (p_label[j] * p_outcome[k]));
        }
    return std::max(0.0, info);
}

PureState chi_state(double theta)
{
    return input_state(theta);
}

Povm conventional_povm()
{
    return product_povm({0.0, pi}, {0.0, pi});
}

Povm conventional_povm(Basis basis)
{
    const double shift = basis == Basis::X ? 0.0 : pi / 2;
    return product_povm({shift, pi + shift}, {shift, pi + shift});
}

double theta_of_disturbance(double d)
{
    if (!(d >= 0.0 && d <= kMaxDisturbance + kDisturbanceSlack))
        throw std::domain_error("theta is real only for disturbance in [0, 1/6], got " + std::to_string(d));
    const double c = 2.0 * std::sqrt(d) / std::sqrt(1.0 - 2.0 * d);
    return std::acos(std::min(1.0, c));
}

Povm optimal_povm(double d, Basis basis, Branch branch)
{
    double theta = theta_of_disturbance(d);
    if (branch == Branch::High)
        theta = -theta;
    const double shift = basis == Basis::X ? 0.0 : pi / 2;
    return product_povm({-theta + shift, pi - theta + shift}, {theta + shift, pi + theta + shift});
}

}  // namespace qcloner
