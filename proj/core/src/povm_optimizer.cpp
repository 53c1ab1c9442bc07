#include "qcloner/povm_optimizer.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "qcloner/parallel.hpp"

namespace qcloner {

namespace {

constexpr double kInitialStep = 0.5;
constexpr double kMaxStep = 8.0;
constexpr double kMinStep = 1e-12;

// Gradient of the mutual information (in nats) with respect to each element:
// R_k = sum_j p_j rho_j ln[ Tr(rho_j M_k) / Tr(rho_avg M_k) ].
std::vector<Matrix> reward_operators(const EveEnsemble& ens, const Povm& povm)
{
    const auto dim = ens.dim();
    Matrix average = Matrix::Zero(dim, dim);
    for (std::size_t j = 0; j < 2; ++j)
        average += ens.priors[j] * ens.states[j].matrix();

    std::vector<Matrix> rewards;
    rewards.reserve(povm.size());
    for (std::size_t k = 0; k < povm.size(); ++k) {
        Matrix r = Matrix::Zero(dim, dim);
        const double pk = (average * povm[k]).trace().real();
        if (pk > 0.0)
            for (std::size_t j = 0; j < 2; ++j) {
                const double pjk = (ens.states[j].matrix() * povm[k]).trace().real();
                if (pjk > 0.0)
                    r += ens.priors[j] * std::log(pjk / pk) * ens.states[j].matrix();
            }
        rewards.push_back(std::move(r));
    }
    return rewards;
}

}  // namespace

void OptimizerConfig::validate() const
{
    if (n_elements < 2 || n_elements > 16)
        throw std::invalid_argument("n_elements must lie in [2, 16]");
    if (max_iter < 1 || restarts < 1)
        throw std::invalid_argument("max_iter and restarts must be positive");
    if (!(tol > 0.0))
        throw std::invalid_argument("tol must be positive");
}

Povm project_to_valid_povm(std::span<const Matrix> raw)
{
    if (raw.empty())
        throw std::invalid_argument("project_to_valid_povm: no elements");
    const auto dim = raw.front().rows();

    std::vector<Matrix> clipped;
    clipped.reserve(raw.size());
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& m : raw) {
        if (m.rows() != dim || m.cols() != dim || !is_hermitian(m, kStructuralTol))
            throw std::invalid_argument("project_to_valid_povm: elements must be Hermitian of one shape");
        Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.adjoint()));
        const Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
        Matrix psd = eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().adjoint();
        sum += psd;
        clipped.push_back(std::move(psd));
    }

    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (sum + sum.adjoint()));
    const Eigen::VectorXd lambda = eig.eigenvalues();
    if (lambda.minCoeff() <= 1e-14 * std::max(1.0, lambda.maxCoeff()))
        throw std::domain_error("project_to_valid_povm: element sum is singular");
    const Matrix inv_sqrt = eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal() *
                            eig.eigenvectors().adjoint();

    std::vector<Matrix> out;
    out.reserve(clipped.size());
    for (const auto& m : clipped) {
        Matrix e = inv_sqrt * m * inv_sqrt;
        out.push_back(0.5 * (e + e.adjoint()));
    }
    return Povm(std::move(out));
}

Povm random_povm(int n_elements, Eigen::Index dim, std::mt19937_64& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Matrix> raw;
    raw.reserve(static_cast<std::size_t>(n_elements));
    for (int k = 0; k < n_elements; ++k) {
        Matrix g(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j) {
                const double re = normal(rng);
                const double im = normal(rng);
                g(i, j) = Complex(re, im);
            }
        raw.push_back(g * g.adjoint());
    }
    return project_to_valid_povm(raw);
}

std::mt19937_64 restart_stream(std::uint64_t seed, int restart_index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffU), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart_index)};
    return std::mt19937_64(seq);
}

AscentResult ascend(const EveEnsemble& ensemble, Povm start, const OptimizerConfig& cfg,
                    const AscentObserver& observer)
{
    Povm current = std::move(start);
    double info = mutual_information(ensemble, current);
    if (observer)
        observer(current, info);

    const auto dim = ensemble.dim();
    const Matrix identity = Matrix::Identity(dim, dim);
    double step = kInitialStep;
    int iter = 0;
    bool converged = false;

    while (iter < cfg.max_iter) {
        ++iter;
        const auto rewards = reward_operators(ensemble, current);
        std::vector<Matrix> raw;
        raw.reserve(current.size());
        for (std::size_t k = 0; k < current.size(); ++k) {
            const Matrix a = identity + step * rewards[k];
            raw.push_back(a * current[k] * a.adjoint());
        }

        std::optional<Povm> candidate;
        try {
            candidate.emplace(project_to_valid_povm(raw));
        } catch (const std::domain_error&) {
            // Singular sum: treat like an overshoot.
        }
        const double next = candidate ? mutual_information(ensemble, *candidate) : -1.0;

        if (candidate && next >= info) {
            const double gain = next - info;
            current = std::move(*candidate);
            info = next;
            if (observer)
                observer(current, info);
            if (gain < cfg.tol) {
                converged = true;
                break;
            }
            step = std::min(step * 1.5, kMaxStep);
        } else {
            step *= 0.5;
            if (step < kMinStep) {
                converged = true;
                break;
            }
        }
    }
    return {std::move(current), info, iter, converged};
}

Povm split_to_rank_one(const Povm& povm)
{
    std::vector<Matrix> pieces;
    for (const auto& m : povm.elements()) {
        Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
        const auto& lambda = eig.eigenvalues();
        const double top = std::max(lambda.maxCoeff(), 0.0);
        int rank = 0;
        for (Eigen::Index i = 0; i < lambda.size(); ++i)
            if (lambda(i) > 1e-12 * std::max(1.0, top))
                ++rank;
        if (rank < 2) {
            pieces.push_back(m);
            continue;
        }
        for (Eigen::Index i = 0; i < lambda.size(); ++i)
            if (lambda(i) > 1e-12 * std::max(1.0, top)) {
                const Vector v = eig.eigenvectors().col(i);
                pieces.push_back(lambda(i) * v * v.adjoint());
            }
    }
    return project_to_valid_povm(pieces);
}

OptimizationReport optimize_accessible_info(const EveEnsemble& ensemble, const OptimizerConfig& cfg)
{
    cfg.validate();
    const auto results = parallel_map(static_cast<std::size_t>(cfg.restarts), [&](std::size_t idx) {
        auto rng = restart_stream(cfg.seed, static_cast<int>(idx));
        return ascend(ensemble, random_povm(cfg.n_elements, ensemble.dim(), rng), cfg);
    });

    std::size_t best = 0;
    for (std::size_t k = 1; k < results.size(); ++k)
        if (results[k].info > results[best].info)
            best = k;

    // Rank-one refinement of the winner.
    auto refined = ascend(ensemble, split_to_rank_one(results[best].povm), cfg);
    const bool take_refined = refined.info >= results[best].info;
    const auto& chosen = take_refined ? refined : results[best];

    return OptimizationReport{
        chosen.info,
        chosen.povm,
        results[best].iterations + (take_refined ? refined.iterations : 0),
        static_cast<int>(best),
        chosen.converged,
    };
}

}  // namespace qcloner
