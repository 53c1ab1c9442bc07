#pragma once

// Bosonic simulation of the dual-rail linear-optics cloner: three spatial
// modes, two rails each, three photons, followed by post-selection on one
// photon per spatial mode.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qcloner/quantum.hpp"

namespace qcloner::fock {

inline constexpr int kSpatialModes = 3;
inline constexpr int kRails = 2;
inline constexpr int kModes = kSpatialModes * kRails;

/// Photon counts indexed by mode_index(spatial, rail).
using Occupation = std::array<std::uint8_t, kModes>;

constexpr int mode_index(int spatial, int rail) { return spatial * kRails + rail; }

int photon_count(const Occupation& occ);

/// Sparse superposition over occupation-number basis states.
class FockState {
  public:
    FockState() = default;

    void add(const Occupation& occ, Complex amplitude);
    /// Drops terms with |amplitude| below 1e-14.
    void prune();

    const std::map<Occupation, Complex>& terms() const { return terms_; }
    Complex amplitude(const Occupation& occ) const;
    double squared_norm() const;

  private:
    std::map<Occupation, Complex> terms_;
};

enum class Convention { SymmetricI, RealAsym };

const char* to_string(Convention c);
Convention convention_from_string(const std::string& name);

/// Beam splitter between two spatial modes (0-based), acting identically on
/// both rails.
struct BeamSplitterSpec {
    int mode_i;
    int mode_j;
    double transmittance;
    Convention convention;

    /// 2x2 mode transformation: column k is the image of input mode (i, j)[k].
    Eigen::Matrix2cd matrix() const;
    void validate() const;
};

enum class RatioMeaning { Transmittance, Reflectance };

const char* to_string(RatioMeaning m);
RatioMeaning ratio_meaning_from_string(const std::string& name);

struct CircuitTopology {
    std::vector<BeamSplitterSpec> splitters;
    /// Entry of `splitters` whose ratio is set from r at run time.
    int vbs_index = 1;
    RatioMeaning r_meaning = RatioMeaning::Transmittance;
    /// slot_of_mode[m] is the qubit slot read from output spatial mode m.
    std::array<int, kSpatialModes> slot_of_mode{0, 1, 2};
    bool global_phase_free = true;

    void validate() const;
};

/// Alice's photon in spatial mode 0 (equatorial superposition of rails),
/// ancillas in mode 1 rail a and mode 2 rail b.
FockState encode_inputs(double phi);

FockState apply_beam_splitter(const FockState& state, const BeamSplitterSpec& spec);

struct PostSelection {
    PureState state;  ///< Unnormalized; squared norm equals probability.
    double probability;
};

/// Keeps terms with exactly one photon per spatial mode; rail a -> |0>,
/// rail b -> |1>, spatial mode m -> qubit slot m.
PostSelection post_select(const FockState& state);

PostSelection run_cloner_circuit(double r, double phi, const CircuitTopology& topology);

/// min over global phases of || e^{i a} x - y ||.
double phase_aligned_distance(const PureState& x, const PureState& y);

struct GridPoint {
    double r;
    double phi;
};

/// r in {0, 0.1, ..., 1} x phi in {0, pi, -pi/2, pi/2}.
std::vector<GridPoint> calibration_grid();

struct TopologyEvaluation {
    /// Max phase-aligned distance between circuit output and xi_state.
    double residual = 0.0;
    /// Same distance after normalizing both states.
    double shape_residual = 0.0;
    /// Max |P_circuit - P_suc|.
    double probability_residual = 0.0;
    /// Range of P_circuit / P_suc over the grid.
    double min_probability_ratio = 0.0;
    double max_probability_ratio = 0.0;
};

TopologyEvaluation evaluate_topology(const CircuitTopology& topology,
                                     const std::vector<GridPoint>& grid = calibration_grid());

/// Bounds of the candidate family searched by calibrate_topology.
struct CandidateBounds {
    std::vector<Convention> conventions{Convention::SymmetricI, Convention::RealAsym};
    std::vector<RatioMeaning> meanings{RatioMeaning::Transmittance, RatioMeaning::Reflectance};
};

std::vector<CircuitTopology> enumerate_candidates(const CandidateBounds& bounds = {});

struct CalibrationResult {
    CircuitTopology topology;
    TopologyEvaluation evaluation;
    double residual;
    int candidates_evaluated;
};

inline constexpr double kCalibrationTol = 1e-9;

CalibrationResult calibrate_topology(const CandidateBounds& bounds = {});

/// Plain-text key=value serialization of a topology.
void write_topology(std::ostream& out, const CircuitTopology& topology, double residual);
CircuitTopology read_topology(std::istream& in);

}  // namespace qcloner::fock
