#include "qcloner/fock.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qcloner/cloner.hpp"

namespace qcloner::fock {

namespace {

constexpr double kPruneTol = 1e-14;

double factorial(int n)
{
    double f = 1.0;
    for (int k = 2; k <= n; ++k)
        f *= k;
    return f;
}

double binomial(int n, int k)
{
    return factorial(n) / (factorial(k) * factorial(n - k));
}

Complex ipow(Complex base, int e)
{
    Complex out = 1.0;
    for (int k = 0; k < e; ++k)
        out *= base;
    return out;
}

// Rewrites the creation operators of modes (i, j) on one rail by the 2x2
// matrix u and re-expands in the occupation basis.
FockState transform_rail(const FockState& in, int mode_i, int mode_j, const Eigen::Matrix2cd& u)
{
    FockState out;
    for (const auto& [occ, amp] : in.terms()) {
        const int ni = occ[static_cast<std::size_t>(mode_i)];
        const int nj = occ[static_cast<std::size_t>(mode_j)];
        const double in_norm = std::sqrt(factorial(ni) * factorial(nj));
        // (u00 a_i + u10 a_j)^ni (u01 a_i + u11 a_j)^nj
        for (int k = 0; k <= ni; ++k)
            for (int l = 0; l <= nj; ++l) {
                const int p = k + l;
                const int q = ni - k + nj - l;
                const Complex coeff = binomial(ni, k) * ipow(u(0, 0), k) * ipow(u(1, 0), ni - k) *
                                      binomial(nj, l) * ipow(u(0, 1), l) * ipow(u(1, 1), nj - l);
                Occupation next = occ;
                next[static_cast<std::size_t>(mode_i)] = static_cast<std::uint8_t>(p);
                next[static_cast<std::size_t>(mode_j)] = static_cast<std::uint8_t>(q);
                out.add(next, amp * coeff * std::sqrt(factorial(p) * factorial(q)) / in_norm);
            }
    }
    out.prune();
    return out;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        parts.push_back(trim(item));
    return parts;
}

}  // namespace

int photon_count(const Occupation& occ)
{
    return std::accumulate(occ.begin(), occ.end(), 0);
}

void FockState::add(const Occupation& occ, Complex amplitude)
{
    terms_[occ] += amplitude;
}

void FockState::prune()
{
    std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kPruneTol; });
}

Complex FockState::amplitude(const Occupation& occ) const
{
    const auto it = terms_.find(occ);
    return it == terms_.end() ? Complex{} : it->second;
}

double FockState::squared_norm() const
{
    double s = 0.0;
    for (const auto& [occ, amp] : terms_)
        s += std::norm(amp);
    return s;
}

const char* to_string(Convention c)
{
    return c == Convention::SymmetricI ? "symmetric_i" : "real_asym";
}

Convention convention_from_string(const std::string& name)
{
    if (name == "symmetric_i")
        return Convention::SymmetricI;
    if (name == "real_asym")
        return Convention::RealAsym;
    throw std::invalid_argument("unknown beam splitter convention '" + name + "'");
}

const char* to_string(RatioMeaning m)
{
    return m == RatioMeaning::Transmittance ? "transmittance" : "reflectance";
}

RatioMeaning ratio_meaning_from_string(const std::string& name)
{
    if (name == "transmittance")
        return RatioMeaning::Transmittance;
    if (name == "reflectance")
        return RatioMeaning::Reflectance;
    throw std::invalid_argument("unknown ratio meaning '" + name + "'");
}

Eigen::Matrix2cd BeamSplitterSpec::matrix() const
{
    const double st = std::sqrt(transmittance);
    const double sr = std::sqrt(1.0 - transmittance);
    Eigen::Matrix2cd u;
    if (convention == Convention::SymmetricI)
        u << st, Complex(0.0, sr), Complex(0.0, sr), st;
    else
        u << st, sr, -sr, st;
    return u;
}

void BeamSplitterSpec::validate() const
{
    if (mode_i == mode_j || mode_i < 0 || mode_j < 0 || mode_i >= kSpatialModes || mode_j >= kSpatialModes)
        throw std::invalid_argument("beam splitter needs two distinct spatial modes");
    if (!(transmittance >= 0.0 && transmittance <= 1.0))
        throw std::domain_error("transmittance outside [0, 1]");
}

void CircuitTopology::validate() const
{
    if (vbs_index < 0 || vbs_index >= static_cast<int>(splitters.size()))
        throw std::invalid_argument("vbs_index does not name a splitter");
    for (const auto& s : splitters)
        s.validate();
    auto sorted = slot_of_mode;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, kSpatialModes>{0, 1, 2})
        throw std::invalid_argument("slot_of_mode is not a permutation");
}

FockState encode_inputs(double phi)
{
    if (!std::isfinite(phi))
        throw std::domain_error("phase must be finite");
    FockState s;
    Occupation rail_a{};
    rail_a[mode_index(0, 0)] = 1;
    rail_a[mode_index(1, 0)] = 1;
    rail_a[mode_index(2, 1)] = 1;
    Occupation rail_b{};
    rail_b[mode_index(0, 1)] = 1;
    rail_b[mode_index(1, 0)] = 1;
    rail_b[mode_index(2, 1)] = 1;
    s.add(rail_a, 1.0 / std::sqrt(2.0));
    s.add(rail_b, std::polar(1.0 / std::sqrt(2.0), phi));
    return s;
}

FockState apply_beam_splitter(const FockState& state, const BeamSplitterSpec& spec)
{
    spec.validate();
    const auto u = spec.matrix();
    FockState out = state;
    for (int rail = 0; rail < kRails; ++rail)
        out = transform_rail(out, mode_index(spec.mode_i, rail), mode_index(spec.mode_j, rail), u);
    return out;
}

PostSelection post_select(const FockState& state)
{
    Vector v = Vector::Zero(1 << kSpatialModes);
    for (const auto& [occ, amp] : state.terms()) {
        std::size_t index = 0;
        bool keep = true;
        for (int m = 0; m < kSpatialModes && keep; ++m) {
            const int a = occ[static_cast<std::size_t>(mode_index(m, 0))];
            const int b = occ[static_cast<std::size_t>(mode_index(m, 1))];
            keep = a + b == 1;
            index = (index << 1) | static_cast<std::size_t>(b);
        }
        if (keep)
            v(static_cast<Eigen::Index>(index)) += amp;
    }
    const double p = v.squaredNorm();
    return {PureState(kSpatialModes, std::move(v)), p};
}

PostSelection run_cloner_circuit(double r, double phi, const CircuitTopology& topology)
{
    topology.validate();
    if (!(r >= 0.0 && r <= 1.0))
        throw std::domain_error("branching ratio outside [0, 1]");

    FockState state = encode_inputs(phi);
    for (std::size_t k = 0; k < topology.splitters.size(); ++k) {
        BeamSplitterSpec spec = topology.splitters[k];
        if (static_cast<int>(k) == topology.vbs_index)
            spec.transmittance = topology.r_meaning == RatioMeaning::Transmittance ? r : 1.0 - r;
        state = apply_beam_splitter(state, spec);
    }
    const auto selected = post_select(state);

    Vector permuted = Vector::Zero(1 << kSpatialModes);
    for (std::size_t idx = 0; idx < (1U << kSpatialModes); ++idx) {
        std::size_t target = 0;
        for (int m = 0; m < kSpatialModes; ++m) {
            const std::size_t bit = (idx >> (kSpatialModes - 1 - m)) & 1U;
            target |= bit << (kSpatialModes - 1 - topology.slot_of_mode[static_cast<std::size_t>(m)]);
        }
        permuted(static_cast<Eigen::Index>(target)) = selected.state.amplitude(idx);
    }
    return {PureState(kSpatialModes, std::move(permuted)), selected.probability};
}

double phase_aligned_distance(const PureState& x, const PureState& y)
{
    if (x.dim() != y.dim())
        throw std::invalid_argument("phase_aligned_distance: dimension mismatch");
    // Rotate x so that <x|y> is real and non-negative, then subtract.
    const Complex overlap = x.amplitudes().dot(y.amplitudes());
    const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0};
    return (phase * x.amplitudes() - y.amplitudes()).norm();
}

std::vector<GridPoint> calibration_grid()
{
    constexpr double pi = 3.14159265358979323846;
    std::vector<GridPoint> grid;
    for (int k = 0; k <= 10; ++k)
        for (const double phi : {0.0, pi, -pi / 2, pi / 2})
            grid.push_back({k / 10.0, phi});
    return grid;
}

TopologyEvaluation evaluate_topology(const CircuitTopology& topology, const std::vector<GridPoint>& grid)
{
    TopologyEvaluation ev;
    ev.min_probability_ratio = std::numeric_limits<double>::infinity();
    ev.max_probability_ratio = -std::numeric_limits<double>::infinity();
    for (const auto& pt : grid) {
        const auto out = run_cloner_circuit(pt.r, pt.phi, topology);
        const auto ref = xi_state({pt.r, pt.phi});
        ev.residual = std::max(ev.residual, phase_aligned_distance(out.state, ref));

        const double shape = out.probability > 0.0
                                 ? phase_aligned_distance(out.state.normalized(), ref.normalized())
                                 : 1.0;
        ev.shape_residual = std::max(ev.shape_residual, shape);

        const double expected = success_probability(pt.r);
        ev.probability_residual = std::max(ev.probability_residual, std::abs(out.probability - expected));
        const double ratio = out.probability / expected;
        ev.min_probability_ratio = std::min(ev.min_probability_ratio, ratio);
        ev.max_probability_ratio = std::max(ev.max_probability_ratio, ratio);
    }
    return ev;
}

std::vector<CircuitTopology> enumerate_candidates(const CandidateBounds& bounds)
{
    const std::array<std::pair<int, int>, 2> pairs{{{0, 1}, {0, 2}}};
    std::array<int, kSpatialModes> perm{0, 1, 2};
    std::vector<std::array<int, kSpatialModes>> perms;
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<CircuitTopology> out;
    for (const auto& vbs : pairs)
        for (const auto& hbs2 : pairs)
            for (const auto conv : bounds.conventions)
                for (const auto meaning : bounds.meanings)
                    for (const auto& p : perms) {
                        CircuitTopology t;
                        t.splitters = {
                            {1, 2, 0.5, conv},
                            {vbs.first, vbs.second, 0.5, conv},
                            {hbs2.first, hbs2.second, 0.5, conv},
                        };
                        t.vbs_index = 1;
                        t.r_meaning = meaning;
                        t.slot_of_mode = p;
                        out.push_back(std::move(t));
                    }
    return out;
}

CalibrationResult calibrate_topology(const CandidateBounds& bounds)
{
    const auto candidates = enumerate_candidates(bounds);
    if (candidates.empty())
        throw std::invalid_argument("empty candidate family");
    const auto grid = calibration_grid();

    std::size_t best = 0;
    TopologyEvaluation best_eval;
    best_eval.residual = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        const auto ev = evaluate_topology(candidates[k], grid);
        if (ev.residual < best_eval.residual) {
            best = k;
            best_eval = ev;
        }
    }
    return {candidates[best], best_eval, best_eval.residual, static_cast<int>(candidates.size())};
}

void write_topology(std::ostream& out, const CircuitTopology& topology, double residual)
{
    out.precision(17);
    out << "# qcloner circuit topology\n";
    out << "splitters=" << topology.splitters.size() << '\n';
    for (std::size_t k = 0; k < topology.splitters.size(); ++k) {
        const auto& s = topology.splitters[k];
        out << "splitter." << k << '=' << s.mode_i << ',' << s.mode_j << ',' << s.transmittance << ','
            << to_string(s.convention) << '\n';
    }
    out << "vbs_index=" << topology.vbs_index << '\n';
    out << "r_meaning=" << to_string(topology.r_meaning) << '\n';
    out << "slot_of_mode=" << topology.slot_of_mode[0] << ',' << topology.slot_of_mode[1] << ','
        << topology.slot_of_mode[2] << '\n';
    out << "global_phase_free=" << (topology.global_phase_free ? "true" : "false") << '\n';
    out << "residual=" << residual << '\n';
}

CircuitTopology read_topology(std::istream& in)
{
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line.front() == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed topology line: " + line);
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    const auto get = [&](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument("topology file missing key '" + key + "'");
        return it->second;
    };

    CircuitTopology t;
    const int count = std::stoi(get("splitters"));
    for (int k = 0; k < count; ++k) {
        const auto f = split(get("splitter." + std::to_string(k)), ',');
        if (f.size() != 4)
            throw std::invalid_argument("splitter entry needs 4 fields");
        t.splitters.push_back({std::stoi(f[0]), std::stoi(f[1]), std::stod(f[2]), convention_from_string(f[3])});
    }
    t.vbs_index = std::stoi(get("vbs_index"));
    t.r_meaning = ratio_meaning_from_string(get("r_meaning"));
    const auto p = split(get("slot_of_mode"), ',');
    if (p.size() != kSpatialModes)
        throw std::invalid_argument("slot_of_mode needs 3 entries");
    for (int m = 0; m < kSpatialModes; ++m)
        t.slot_of_mode[static_cast<std::size_t>(m)] = std::stoi(p[static_cast<std::size_t>(m)]);
    if (kv.count("global_phase_free"))
        t.global_phase_free = kv["global_phase_free"] == "true";
    t.validate();
    return t;
}

}  // namespace qcloner::fock
