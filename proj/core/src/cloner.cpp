#include "qcloner/cloner.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcloner {

namespace {

using std::numbers::pi;

void require_ratio(double r)
{
    if (!(r >= 0.0 && r <= 1.0))
        throw std::domain_error("branching ratio " + std::to_string(r) + " outside [0, 1]");
}

}  // namespace

double Bb84Symbol::phase() const
{
    if (bit != 0 && bit != 1)
        throw std::invalid_argument("BB84 bit must be 0 or 1");
    return basis_phases(basis)[static_cast<std::size_t>(bit)];
}

std::array<double, 2> basis_phases(Basis basis)
{
    return basis == Basis::X ? std::array{0.0, pi} : std::array{-pi / 2, pi / 2};
}

void CloneParams::validate() const
{
    require_ratio(r);
    if (!std::isfinite(phi))
        throw std::domain_error("phase must be finite");
}

void SlotAssignment::validate() const
{
    const bool in_range = eve1 >= 0 && eve1 < 3 && eve2 >= 0 && eve2 < 3 && bob >= 0 && bob < 3;
    if (!in_range || eve1 == eve2 || eve1 == bob || eve2 == bob)
        throw std::invalid_argument("slot assignment must be a permutation of {0, 1, 2}");
}

Branch branch_of(double r)
{
    return r <= kSymmetricRatio ? Branch::Low : Branch::High;
}

PureState input_state(double phi)
{
    Vector v(2);
    v << 1.0, std::polar(1.0, phi);
    return PureState(1, v / std::sqrt(2.0));
}

PureState xi_state(const CloneParams& params)
{
    params.validate();
    const double r = params.r;
    const double sr = std::sqrt(r);
    const double r32 = r * sr;
    const Complex i{0.0, 1.0};
    const Complex phase = std::polar(1.0, params.phi);

    const Complex a = i * (r - 1.0) * sr / 2.0;
    const Complex b = (2.0 * i * r32 + 3.0 * r - 2.0 * i * sr - 1.0) / 4.0;
    const Complex c = (2.0 * i * r32 - 3.0 * r - 2.0 * i * sr + 1.0) / 4.0;

    // Kets in printed order, leftmost label = slot 0.
    Vector v = Vector::Zero(8);
    v(0b001) = a;
    v(0b010) = b;
    v(0b100) = c;
    v(0b110) = phase * a;
    v(0b101) = phase * c;
    v(0b011) = phase * b;
    return PureState(3, std::move(v));
}

double success_probability(double r)
{
    require_ratio(r);
    return (1.0 - 3.0 * r * r + 6.0 * r * r * r) / 4.0;
}

double bob_fidelity(double r)
{
    require_ratio(r);
    const double r2 = r * r;
    const double r3 = r2 * r;
    return -(-1.0 + r + r2 - 5.0 * r3) / (1.0 - 3.0 * r2 + 6.0 * r3);
}

double eve_fidelity(double r)
{
    require_ratio(r);
    const double r2 = r * r;
    const double r3 = r2 * r;
    return (1.0 + 4.0 * r - 11.0 * r2 + 10.0 * r3) / (2.0 - 6.0 * r2 + 12.0 * r3);
}

double disturbance(double r)
{
    return 1.0 - bob_fidelity(r);
}

double r_for_disturbance(double d, Branch branch)
{
    if (!(d >= 0.0 && d <= kMaxDisturbance + 1e-12))
        throw std::domain_error("disturbance " + std::to_string(d) + " is not reachable");

    // Orient the bracket so that disturbance increases from lo to hi.
    double lo = branch == Branch::Low ? 0.0 : 1.0;
    double hi = kSymmetricRatio;
    if (d >= kMaxDisturbance)
        return kSymmetricRatio;
    for (int iter = 0; iter < 200 && std::abs(hi - lo) > 1e-15; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (disturbance(mid) < d)
            lo = mid;
        else
            hi = mid;
    }
    return std::abs(disturbance(lo) - d) <= std::abs(disturbance(hi) - d) ? lo : hi;
}

DensityOperator reduced_state(const CloneParams& params, Party party, const SlotAssignment& slots)
{
    slots.validate();
    const auto rho = DensityOperator::from_pure(xi_state(params)).normalized();
    switch (party) {
    case Party::Bob:
        return partial_trace(rho, {slots.bob});
    case Party::Eve1:
        return partial_trace(rho, {slots.eve1});
    case Party::Eve2:
        return partial_trace(rho, {slots.eve2});
    case Party::EvePair:
        return partial_trace(rho, {slots.eve1, slots.eve2});
    }
    throw std::invalid_argument("unknown party");
}

}  // namespace qcloner
