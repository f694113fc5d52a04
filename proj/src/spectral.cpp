#include "cesaro/spectral.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "cesaro/operators.hpp"
#include "cesaro/rng.hpp"

namespace cesaro {

namespace {

/// L^{-1} X L^{-T} for the Cholesky factor L of the Gram matrix.
Eigen::MatrixXd whiten(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::MatrixXd& x) {
    const auto l = llt.matrixL();
    Eigen::MatrixXd half = l.solve(x);
    return l.solve(half.transpose()).transpose();
}

Eigen::LLT<Eigen::MatrixXd> factor_gram(const CompressionModel& model) {
    Eigen::LLT<Eigen::MatrixXd> llt(model.gram);
    if (llt.info() != Eigen::Success) {
        throw ConditioningError("compression: Cholesky factorization of the Gram matrix failed", 0, 0);
    }
    return llt;
}

}  // namespace

CompressionModel build_compression(const std::vector<ImaginaryAxisPoint>& points, const SpectralOptions& options) {
    if (points.empty()) throw std::invalid_argument("build_compression: empty point set");
    for (std::size_t j = 0; j < points.size(); ++j) {
        for (std::size_t k = j + 1; k < points.size(); ++k) {
            const double gap = std::abs(points[j].s() - points[k].s());
            const double scale = std::max(points[j].s(), points[k].s());
            if (gap < options.duplicate_rel_tol * scale) {
                throw ConditioningError("build_compression: points " + std::to_string(j) + " (s=" +
                                            std::to_string(points[j].s()) + ") and " + std::to_string(k) + " (s=" +
                                            std::to_string(points[k].s()) + ") are closer than the conditioning guard",
                                        j, k);
            }
        }
    }

    CompressionModel model;
    model.points = points;
    model.gram = gram_matrix(points);
    const auto n = static_cast<Eigen::Index>(points.size());
    model.interaction.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            model.interaction(j, k) = pair_inner_closed(PairKind::CK, points[k].s(), points[j].s());
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(model.gram, Eigen::EigenvaluesOnly);
    const double min_eig = eig.eigenvalues().minCoeff();
    const double max_eig = eig.eigenvalues().maxCoeff();
    model.condition_estimate = min_eig > 0.0 ? max_eig / min_eig : std::numeric_limits<double>::infinity();
    if (!(model.condition_estimate < options.condition_cap)) {
        // name the closest pair: it dominates the near-dependence
        std::size_t wa = 0;
        std::size_t wb = 1;
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < points.size(); ++j) {
            for (std::size_t k = j + 1; k < points.size(); ++k) {
                const double gap = std::abs(std::log(points[j].s() / points[k].s()));
                if (gap < worst) {
                    worst = gap;
                    wa = j;
                    wb = k;
                }
            }
        }
        throw ConditioningError("build_compression: Gram condition estimate " +
                                    std::to_string(model.condition_estimate) + " exceeds the cap; closest points " +
                                    std::to_string(wa) + " and " + std::to_string(wb),
                                wa, wb);
    }
    return model;
}

std::vector<Complex> compression_eigs(const CompressionModel& model) {
    const auto llt = factor_gram(model);
    const Eigen::MatrixXd b = whiten(llt, model.interaction);
    Eigen::EigenSolver<Eigen::MatrixXd> eig(b);
    if (eig.info() != Eigen::Success) throw std::runtime_error("compression_eigs: eigensolver failed");
    std::vector<Complex> values(b.rows());
    for (Eigen::Index j = 0; j < b.rows(); ++j) values[j] = eig.eigenvalues()(j);
    std::sort(values.begin(), values.end(), [](Complex x, Complex y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return values;
}

double compression_norm(const CompressionModel& model) {
    // ||Cf||^2 = <(C + C*)f, f> by the product identity, so the restricted
    // norm comes from the CC Gram matrix A + Aᵀ.
    const auto llt = factor_gram(model);
    const Eigen::MatrixXd cc = model.interaction + model.interaction.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(whiten(llt, cc), Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

std::vector<Complex> numerical_range_samples(const CompressionModel& model, int directions, std::uint64_t seed) {
    if (directions < 1) throw std::invalid_argument("numerical_range_samples: need at least one direction");
    const auto n = static_cast<Eigen::Index>(model.points.size());
    SplitMix64 rng(seed);
    std::vector<Complex> samples;
    samples.reserve(directions);
    for (int d = 0; d < directions; ++d) {
        Eigen::VectorXcd a(n);
        for (Eigen::Index j = 0; j < n; ++j) a(j) = rng.unit_disk();
        const Complex denom = (a.adjoint() * model.gram * a)(0);
        if (denom == Complex{0.0, 0.0}) continue;
        const Complex numer = (a.adjoint() * model.interaction * a)(0);
        samples.push_back(numer / denom);
    }
    return samples;
}

}  // namespace cesaro
