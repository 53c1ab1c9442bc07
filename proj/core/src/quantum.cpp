#include "qcloner/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcloner {

namespace {

bool all_finite(const Matrix& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                return false;
    return true;
}

// Basis index of a register whose slot `slots[p]` holds bit `p` of `bits`
// (most significant first), all other slots set from `rest`.
std::size_t compose_index(int n_qubits, std::span<const int> slots, std::size_t bits,
                          std::span<const int> rest_slots, std::size_t rest)
{
    std::size_t index = 0;
    const auto place = [&](std::span<const int> where, std::size_t value) {
        const auto count = where.size();
        for (std::size_t p = 0; p < count; ++p) {
            const std::size_t bit = (value >> (count - 1 - p)) & 1U;
            index |= bit << (n_qubits - 1 - where[p]);
        }
    };
    place(slots, bits);
    place(rest_slots, rest);
    return index;
}

double entropy_bits(const Eigen::VectorXd& eigenvalues)
{
    double s = 0.0;
    for (const double lambda : eigenvalues)
        if (lambda > kEigenFloor)
            s -= lambda * std::log2(lambda);
    return std::max(0.0, s);
}

}  // namespace

int qubit_count(Eigen::Index dim)
{
    if (dim < 1 || (dim & (dim - 1)) != 0)
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
    int n = 0;
    while ((Eigen::Index{1} << n) < dim)
        ++n;
    return n;
}

PureState::PureState(int n_qubits, Vector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes))
{
    if (n_qubits < 0 || n_qubits > 16)
        throw std::invalid_argument("qubit count out of range");
    if (amplitudes_.size() != (Eigen::Index{1} << n_qubits))
        throw std::invalid_argument("amplitude vector length must be 2^n");
    if (!all_finite(amplitudes_))
        throw std::invalid_argument("non-finite amplitude");
}

PureState PureState::basis(int n_qubits, std::size_t index)
{
    Vector v = Vector::Zero(Eigen::Index{1} << n_qubits);
    if (static_cast<Eigen::Index>(index) >= v.size())
        throw std::out_of_range("basis index out of range");
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(n_qubits, std::move(v));
}

PureState PureState::normalized() const
{
    const double norm = amplitudes_.norm();
    if (norm == 0.0)
        throw std::domain_error("cannot normalize the zero vector");
    return PureState(n_qubits_, amplitudes_ / norm);
}

DensityOperator::DensityOperator(Matrix matrix) : matrix_(std::move(matrix))
{
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
        throw std::invalid_argument("density operator must be a non-empty square matrix");
    if (!all_finite(matrix_))
        throw std::invalid_argument("non-finite operator entry");
    if (!is_hermitian(matrix_))
        throw std::invalid_argument("operator is not Hermitian");
    // Remove the anti-Hermitian round-off so eigen solvers see an exact input.
    matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();
}

DensityOperator DensityOperator::from_pure(const PureState& psi)
{
    return DensityOperator(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index dim)
{
    return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::normalized() const
{
    const double tr = trace();
    if (!(tr > 0.0))
        throw std::domain_error("cannot normalize an operator with non-positive trace");
    return DensityOperator(matrix_ / tr);
}

bool DensityOperator::is_normalized(double tol) const
{
    return std::abs(trace() - 1.0) <= tol;
}

bool DensityOperator::is_positive(double tol) const
{
    return hermitian_eigenvalues(matrix_).minCoeff() >= -tol;
}

Povm::Povm(std::vector<Matrix> elements, double tol) : elements_(std::move(elements))
{
    if (elements_.empty())
        throw std::invalid_argument("POVM needs at least one element");
    const auto dim = elements_.front().rows();
    for (auto& e : elements_) {
        if (e.rows() != dim || e.cols() != dim)
            throw std::invalid_argument("POVM elements must share one square shape");
        if (!all_finite(e) || !is_hermitian(e, tol))
            throw std::invalid_argument("POVM element is not a finite Hermitian operator");
        e = (0.5 * (e + e.adjoint())).eval();
        if (hermitian_eigenvalues(e).minCoeff() < -tol)
            throw std::invalid_argument("POVM element is not positive semidefinite");
    }
    if (completeness_error() > tol)
        throw std::invalid_argument("POVM elements do not sum to identity");
}

double Povm::completeness_error() const
{
    Matrix sum = Matrix::Zero(dim(), dim());
    for (const auto& e : elements_)
        sum += e;
    return (sum - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m)
{
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("Hermitian eigensolver failed");
    return solver.eigenvalues();
}

bool is_hermitian(const Matrix& m, double tol)
{
    if (m.rows() != m.cols())
        return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix projector(const PureState& psi)
{
    return psi.amplitudes() * psi.amplitudes().adjoint();
}

PureState tensor_product(const PureState& a, const PureState& b)
{
    Vector v(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        v.segment(i * b.dim(), b.dim()) = a.amplitudes()(i) * b.amplitudes();
    return PureState(a.n_qubits() + b.n_qubits(), std::move(v));
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b)
{
    const auto db = b.dim();
    Matrix m(a.dim() * db, a.dim() * db);
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        for (Eigen::Index j = 0; j < a.dim(); ++j)
            m.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    return DensityOperator(std::move(m));
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep)
{
    const int n = qubit_count(rho.dim());
    if (keep.empty())
        throw std::invalid_argument("partial_trace needs at least one kept slot");
    std::vector<bool> kept(static_cast<std::size_t>(n), false);
    for (const int slot : keep) {
        if (slot < 0 || slot >= n)
            throw std::out_of_range("slot " + std::to_string(slot) + " out of range for " +
                                    std::to_string(n) + " qubits");
        if (kept[static_cast<std::size_t>(slot)])
            throw std::invalid_argument("duplicate slot in partial_trace");
        kept[static_cast<std::size_t>(slot)] = true;
    }
    std::vector<int> traced;
    for (int s = 0; s < n; ++s)
        if (!kept[static_cast<std::size_t>(s)])
            traced.push_back(s);

    const std::size_t dk = std::size_t{1} << keep.size();
    const std::size_t dt = std::size_t{1} << traced.size();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::size_t i = 0; i < dk; ++i)
        for (std::size_t j = 0; j < dk; ++j) {
            Complex acc = 0.0;
            for (std::size_t t = 0; t < dt; ++t) {
                const auto row = compose_index(n, keep, i, traced, t);
                const auto col = compose_index(n, keep, j, traced, t);
                acc += rho.matrix()(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    return DensityOperator(std::move(out));
}

DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<int> keep)
{
    return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

double fidelity(const DensityOperator& rho, const PureState& psi)
{
    if (rho.dim() != psi.dim())
        throw std::invalid_argument("fidelity: dimension mismatch");
    const Complex f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
    return std::clamp(f.real(), 0.0, 1.0);
}

double von_neumann_entropy(const DensityOperator& rho)
{
    return entropy_bits(hermitian_eigenvalues(rho.matrix()));
}

double holevo_bound(std::span<const EnsembleMember> ensemble)
{
    if (ensemble.empty())
        throw std::invalid_argument("empty ensemble");
    const auto dim = ensemble.front().state.dim();
    Matrix average = Matrix::Zero(dim, dim);
    double prior_sum = 0.0;
    double mixed_entropy = 0.0;
    for (const auto& member : ensemble) {
        if (member.state.dim() != dim)
            throw std::invalid_argument("holevo_bound: dimension mismatch among ensemble members");
        if (!(member.prior > 0.0))
            throw std::invalid_argument("holevo_bound: priors must be positive");
        average += member.prior * member.state.matrix();
        prior_sum += member.prior;
        mixed_entropy += member.prior * von_neumann_entropy(member.state);
    }
    if (std::abs(prior_sum - 1.0) > 1e-12)
        throw std::invalid_argument("holevo_bound: priors must sum to one");
    return std::max(0.0, von_neumann_entropy(DensityOperator(average)) - mixed_entropy);
}

double frobenius_distance(const Matrix& a, const Matrix& b)
{
    return (a - b).norm();
}

}  // namespace qcloner
