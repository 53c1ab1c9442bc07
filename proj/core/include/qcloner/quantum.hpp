#pragma once

// Dense linear algebra for small qubit registers: pure states, density
// operators, POVMs, partial trace and the entropic quantities built on them.
//
// Qubit slots are big-endian: slot 0 is the leftmost ket label and the most
// significant bit of a basis index.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qcloner {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerance used for structural checks (Hermiticity, PSD, completeness).
inline constexpr double kStructuralTol = 1e-10;

/// Eigenvalues below this are treated as exact zeros in entropies.
inline constexpr double kEigenFloor = 1e-12;

/// Number of qubits spanned by a dimension; throws unless dim is a power of 2.
int qubit_count(Eigen::Index dim);

/// Amplitude vector over the computational basis of n qubits. May be
/// unnormalized.
class PureState {
  public:
    PureState(int n_qubits, Vector amplitudes);

    static PureState basis(int n_qubits, std::size_t index);

    int n_qubits() const { return n_qubits_; }
    Eigen::Index dim() const { return amplitudes_.size(); }
    const Vector& amplitudes() const { return amplitudes_; }
    Complex amplitude(std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }

    double squared_norm() const { return amplitudes_.squaredNorm(); }
    PureState normalized() const;

  private:
    int n_qubits_;
    Vector amplitudes_;
};

/// Hermitian operator on a finite-dimensional space. The constructor checks
/// shape, finiteness and Hermiticity; positivity and unit trace are checked
/// on demand since intermediate operators (e.g. sums) need not satisfy them.
class DensityOperator {
  public:
    explicit DensityOperator(Matrix matrix);

    /// |psi><psi| without normalization.
    static DensityOperator from_pure(const PureState& psi);
    static DensityOperator maximally_mixed(Eigen::Index dim);

    Eigen::Index dim() const { return matrix_.rows(); }
    const Matrix& matrix() const { return matrix_; }
    double trace() const { return matrix_.trace().real(); }

    DensityOperator normalized() const;

    bool is_normalized(double tol = kStructuralTol) const;
    bool is_positive(double tol = kStructuralTol) const;

  private:
    Matrix matrix_;
};

/// Ordered list of PSD operators that sum to identity.
class Povm {
  public:
    explicit Povm(std::vector<Matrix> elements, double tol = kStructuralTol);

    std::size_t size() const { return elements_.size(); }
    Eigen::Index dim() const { return elements_.front().rows(); }
    const Matrix& operator[](std::size_t k) const { return elements_[k]; }
    const std::vector<Matrix>& elements() const { return elements_; }

    /// Largest entrywise deviation of the element sum from identity.
    double completeness_error() const;

  private:
    std::vector<Matrix> elements_;
};

/// Eigenvalues of a Hermitian matrix in ascending order.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

/// Returns true if m is Hermitian within tol (max entrywise deviation).
bool is_hermitian(const Matrix& m, double tol = 1e-12);

/// |psi><psi| for a normalized single- or multi-qubit state.
Matrix projector(const PureState& psi);

PureState tensor_product(const PureState& a, const PureState& b);
DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);

/// Reduced operator on the kept slots, in the order listed. Keeping every
/// slot in ascending order returns rho unchanged.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep);
DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<int> keep);

/// <psi|rho|psi>, clamped to [0, 1].
double fidelity(const DensityOperator& rho, const PureState& psi);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityOperator& rho);

struct EnsembleMember {
    double prior;
    DensityOperator state;
};

/// S(sum p_i rho_i) - sum p_i S(rho_i), in bits.
double holevo_bound(std::span<const EnsembleMember> ensemble);

/// Frobenius norm of a - b.
double frobenius_distance(const Matrix& a, const Matrix& b);

}  // namespace qcloner
