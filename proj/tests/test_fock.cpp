#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "qcloner/cloner.hpp"
#include "qcloner/fock.hpp"

using namespace qcloner;
using namespace qcloner::fock;
using std::numbers::pi;

namespace {

Occupation occ(std::initializer_list<int> counts)
{
    Occupation o{};
    std::size_t k = 0;
    for (const int c : counts)
        o[k++] = static_cast<std::uint8_t>(c);
    return o;
}

std::vector<Occupation> three_photon_basis()
{
    std::vector<Occupation> out;
    Occupation o{};
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
            for (int c = 0; a + b + c <= 3; ++c)
                for (int d = 0; a + b + c + d <= 3; ++d)
                    for (int e = 0; a + b + c + d + e <= 3; ++e) {
                        o = occ({a, b, c, d, e, 3 - a - b - c - d - e});
                        out.push_back(o);
                    }
    return out;
}

FockState random_state(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    FockState s;
    double norm = 0.0;
    std::vector<std::pair<Occupation, Complex>> terms;
    for (const auto& o : three_photon_basis()) {
        const Complex a{g(rng), g(rng)};
        norm += std::norm(a);
        terms.emplace_back(o, a);
    }
    for (const auto& [o, a] : terms)
        s.add(o, a / std::sqrt(norm));
    return s;
}

double distance(const FockState& a, const FockState& b)
{
    double d = 0.0;
    for (const auto& [o, amp] : a.terms())
        d += std::norm(amp - b.amplitude(o));
    for (const auto& [o, amp] : b.terms())
        if (a.terms().count(o) == 0)
            d += std::norm(amp);
    return std::sqrt(d);
}

CircuitTopology best_known()
{
    CircuitTopology t;
    t.splitters = {{1, 2, 0.5, Convention::SymmetricI},
                   {0, 1, 0.5, Convention::SymmetricI},
                   {0, 2, 0.5, Convention::SymmetricI}};
    t.vbs_index = 1;
    t.r_meaning = RatioMeaning::Reflectance;
    t.slot_of_mode = {1, 2, 0};
    return t;
}

}  // namespace

TEST_CASE("encode_inputs")
{
    const auto plus = encode_inputs(0.0);
    CHECK(plus.terms().size() == 2);
    const Occupation a = occ({1, 0, 1, 0, 0, 1});
    const Occupation b = occ({0, 1, 1, 0, 0, 1});
    CHECK(std::abs(plus.amplitude(a) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(plus.amplitude(b) - 1.0 / std::sqrt(2.0)) < 1e-15);

    const auto minus = encode_inputs(pi);
    CHECK(std::abs(minus.amplitude(a) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(minus.amplitude(b) + 1.0 / std::sqrt(2.0)) < 1e-15);

    for (const double phi : {0.0, 0.7, -2.0, pi / 2}) {
        const auto s = encode_inputs(phi);
        CHECK(s.squared_norm() == doctest::Approx(1.0).epsilon(1e-15));
        for (const auto& [o, amp] : s.terms())
            CHECK(photon_count(o) == 3);
    }
    CHECK_THROWS_AS(encode_inputs(std::nan("")), std::domain_error);
}

TEST_CASE("beam splitter examples")
{
    FockState single;
    single.add(occ({1, 0, 0, 0, 0, 0}), 1.0);

    SUBCASE("t = 1 is transparent")
    {
        for (const auto conv : {Convention::SymmetricI, Convention::RealAsym}) {
            const auto out = apply_beam_splitter(single, {0, 1, 1.0, conv});
            CHECK(distance(out, single) < 1e-15);
        }
    }
    SUBCASE("50:50 symmetric splits into (1/sqrt2, i/sqrt2)")
    {
        const auto out = apply_beam_splitter(single, {0, 1, 0.5, Convention::SymmetricI});
        CHECK(out.terms().size() == 2);
        CHECK(std::abs(out.amplitude(occ({1, 0, 0, 0, 0, 0})) - 1.0 / std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(out.amplitude(occ({0, 0, 1, 0, 0, 0})) - Complex(0.0, 1.0 / std::sqrt(2.0))) < 1e-15);
    }
    SUBCASE("rail b is routed like rail a")
    {
        FockState b;
        b.add(occ({0, 1, 0, 0, 0, 0}), 1.0);
        const auto out = apply_beam_splitter(b, {0, 2, 0.5, Convention::RealAsym});
        CHECK(std::abs(out.amplitude(occ({0, 1, 0, 0, 0, 0})) - 1.0 / std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(out.amplitude(occ({0, 0, 0, 0, 0, 1})) + 1.0 / std::sqrt(2.0)) < 1e-15);
    }
    SUBCASE("Hong-Ou-Mandel")
    {
        FockState pair;
        pair.add(occ({1, 0, 1, 0, 0, 0}), 1.0);
        for (const auto conv : {Convention::SymmetricI, Convention::RealAsym}) {
            const auto out = apply_beam_splitter(pair, {0, 1, 0.5, conv});
            CHECK(std::abs(out.amplitude(occ({1, 0, 1, 0, 0, 0}))) < 1e-15);
            CHECK(std::abs(out.amplitude(occ({2, 0, 0, 0, 0, 0}))) == doctest::Approx(1.0 / std::sqrt(2.0)));
            CHECK(std::abs(out.amplitude(occ({0, 0, 2, 0, 0, 0}))) == doctest::Approx(1.0 / std::sqrt(2.0)));
        }
        const auto sym = apply_beam_splitter(pair, {0, 1, 0.5, Convention::SymmetricI});
        CHECK(std::abs(sym.amplitude(occ({2, 0, 0, 0, 0, 0})) - Complex(0.0, 1.0 / std::sqrt(2.0))) < 1e-15);
    }
    SUBCASE("matrices are unitary")
    {
        for (const double t : {0.0, 0.2, 0.5, 0.93, 1.0})
            for (const auto conv : {Convention::SymmetricI, Convention::RealAsym}) {
                const auto u = BeamSplitterSpec{0, 1, t, conv}.matrix();
                CHECK((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm() < 1e-12);
            }
    }
    SUBCASE("invalid specs")
    {
        CHECK_THROWS_AS(apply_beam_splitter(single, {1, 1, 0.5, Convention::SymmetricI}), std::invalid_argument);
        CHECK_THROWS_AS(apply_beam_splitter(single, {0, 3, 0.5, Convention::SymmetricI}), std::invalid_argument);
        CHECK_THROWS_AS(apply_beam_splitter(single, {0, 1, 1.2, Convention::SymmetricI}), std::domain_error);
    }
}

TEST_CASE("beam splitters preserve norm and photon number")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u01;
    const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (int trial = 0; trial < 30; ++trial) {
        const auto in = random_state(rng);
        const auto& [i, j] = pairs[static_cast<std::size_t>(trial) % 3];
        const auto conv = trial % 2 ? Convention::SymmetricI : Convention::RealAsym;
        const auto out = apply_beam_splitter(in, {i, j, u01(rng), conv});
        CHECK(std::abs(out.squared_norm() - in.squared_norm()) <= 1e-12);
        for (const auto& [o, amp] : out.terms())
            CHECK(photon_count(o) == 3);
    }
}

TEST_CASE("splitters sharing a mode pair commute")
{
    // Three spatial modes admit no two disjoint pairs; splitters on the same
    // pair are commuting one-parameter rotations, which exercises the same
    // re-expansion path.
    std::mt19937_64 rng(11);
    for (const auto conv : {Convention::SymmetricI, Convention::RealAsym}) {
        const auto in = random_state(rng);
        const BeamSplitterSpec s1{0, 2, 0.3, conv};
        const BeamSplitterSpec s2{0, 2, 0.8, conv};
        const auto ab = apply_beam_splitter(apply_beam_splitter(in, s1), s2);
        const auto ba = apply_beam_splitter(apply_beam_splitter(in, s2), s1);
        CHECK(distance(ab, ba) <= 1e-12);
    }
}

TEST_CASE("post_select")
{
    SUBCASE("one photon per spatial mode")
    {
        FockState s;
        s.add(occ({0, 1, 1, 0, 0, 1}), 1.0);
        const auto sel = post_select(s);
        CHECK(sel.probability == doctest::Approx(1.0));
        CHECK(std::abs(sel.state.amplitude(0b101) - 1.0) < 1e-15);
    }
    SUBCASE("fully bunched")
    {
        FockState s;
        s.add(occ({2, 1, 0, 0, 0, 0}), 1.0);
        const auto sel = post_select(s);
        CHECK(sel.probability == 0.0);
        CHECK(sel.state.squared_norm() == 0.0);
    }
    SUBCASE("partial")
    {
        FockState s;
        s.add(occ({1, 0, 1, 0, 1, 0}), 0.6);
        s.add(occ({0, 0, 2, 0, 1, 0}), 0.8);
        const auto sel = post_select(s);
        CHECK(sel.probability == doctest::Approx(0.36));
        CHECK(sel.state.squared_norm() == doctest::Approx(sel.probability));
    }
}

TEST_CASE("circuit output agrees with the permanent oracle")
{
    const std::array<std::pair<int, int>, 2> pairs{{{0, 1}, {0, 2}}};
    for (const auto& vbs : pairs)
        for (const auto& hbs2 : pairs)
            for (const double t : {0.0, 0.25, 0.5, 0.9})
                for (const double phi : {0.0, pi, 1.1}) {
                    FockState s = encode_inputs(phi);
                    s = apply_beam_splitter(s, {1, 2, 0.5, Convention::SymmetricI});
                    s = apply_beam_splitter(s, {vbs.first, vbs.second, t, Convention::SymmetricI});
                    s = apply_beam_splitter(s, {hbs2.first, hbs2.second, 0.5, Convention::SymmetricI});
                    const auto sel = post_select(s);

                    auto u = oracle::splitter(1, 2, 0.5);
                    u = oracle::multiply(oracle::splitter(vbs.first, vbs.second, t), u);
                    u = oracle::multiply(oracle::splitter(hbs2.first, hbs2.second, 0.5), u);
                    const auto ref = oracle::one_per_mode_amplitudes(u, phi);
                    for (std::size_t k = 0; k < 8; ++k)
                        CHECK(std::abs(sel.state.amplitude(k) - ref[k]) < 1e-14);
                }
}

TEST_CASE("phase-aligned distance")
{
    const auto a = input_state(0.4);
    const auto rotated = PureState(1, a.amplitudes() * std::polar(1.0, 2.2));
    CHECK(phase_aligned_distance(a, rotated) < 1e-15);
    CHECK(phase_aligned_distance(input_state(0.0), input_state(pi)) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(phase_aligned_distance(a, xi_state({0.5, 0.0})), std::invalid_argument);
}

TEST_CASE("calibration")
{
    CHECK(enumerate_candidates().size() == 96);
    CHECK(calibration_grid().size() == 44);

    const auto cal = calibrate_topology();
    CHECK(cal.candidates_evaluated == 96);

    // Regression on the selected candidate and its figures.
    const auto expected = best_known();
    CHECK(cal.topology.slot_of_mode == expected.slot_of_mode);
    CHECK(cal.topology.r_meaning == expected.r_meaning);
    CHECK(cal.topology.splitters[1].mode_j == 1);
    CHECK(cal.topology.splitters[2].mode_j == 2);
    CHECK(cal.topology.splitters[0].convention == Convention::SymmetricI);

    // The normalized state is reproduced on the whole grid; the rate is half of P_suc.
    CHECK(cal.evaluation.shape_residual <= 1e-9);
    CHECK(cal.evaluation.min_probability_ratio == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cal.evaluation.max_probability_ratio == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cal.residual == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-9));

    const auto half = run_cloner_circuit(0.5, pi, cal.topology);
    CHECK(phase_aligned_distance(half.state.normalized(), xi_state({0.5, pi}).normalized()) <= 1e-9);
}

TEST_CASE("a wrong output permutation is far from the cloner state")
{
    auto wrong = best_known();
    std::swap(wrong.slot_of_mode[0], wrong.slot_of_mode[2]);
    const auto ev = evaluate_topology(wrong);
    CHECK(ev.residual >= 0.1);
    CHECK(ev.shape_residual >= 0.1);
}

TEST_CASE("topology persistence")
{
    const auto t = best_known();
    std::stringstream buf;
    write_topology(buf, t, 0.25);
    const auto back = read_topology(buf);
    CHECK(back.splitters.size() == t.splitters.size());
    for (std::size_t k = 0; k < t.splitters.size(); ++k) {
        CHECK(back.splitters[k].mode_i == t.splitters[k].mode_i);
        CHECK(back.splitters[k].mode_j == t.splitters[k].mode_j);
        CHECK(back.splitters[k].transmittance == t.splitters[k].transmittance);
        CHECK(back.splitters[k].convention == t.splitters[k].convention);
    }
    CHECK(back.vbs_index == t.vbs_index);
    CHECK(back.r_meaning == t.r_meaning);
    CHECK(back.slot_of_mode == t.slot_of_mode);
    CHECK(back.global_phase_free == t.global_phase_free);

    std::stringstream missing("splitters=1\n");
    CHECK_THROWS_AS(read_topology(missing), std::invalid_argument);
    std::stringstream garbage("no equals sign here\n");
    CHECK_THROWS_AS(read_topology(garbage), std::invalid_argument);
    std::stringstream bad_perm("splitters=1\nsplitter.0=0,1,0.5,real_asym\nvbs_index=0\n"
                               "r_meaning=transmittance\nslot_of_mode=0,0,1\n");
    CHECK_THROWS_AS(read_topology(bad_perm), std::invalid_argument);
}
