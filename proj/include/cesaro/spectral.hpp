#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "cesaro/halfplane.hpp"

namespace cesaro {

/// Raised when the kernel family is too close to linearly dependent for a
/// trustworthy compression.
class ConditioningError : public std::runtime_error {
  public:
    ConditioningError(const std::string& what, std::size_t index_a, std::size_t index_b)
        : std::runtime_error(what), index_a_(index_a), index_b_(index_b) {}
    std::size_t index_a() const { return index_a_; }
    std::size_t index_b() const { return index_b_; }

  private:
    std::size_t index_a_;
    std::size_t index_b_;
};

struct SpectralOptions {
    double condition_cap = 1e12;
    double duplicate_rel_tol = 1e-8;
};

/// Compression of C onto span{k_is_j}: Gram matrix G, interaction matrix
/// A[j][k] = <C k_is_k, k_is_j>, and the conditioning of G.
struct CompressionModel {
    std::vector<ImaginaryAxisPoint> points;
    Eigen::MatrixXd gram;
    Eigen::MatrixXd interaction;
    double condition_estimate = 0.0;
};

CompressionModel build_compression(const std::vector<ImaginaryAxisPoint>& points, const SpectralOptions& options = {});

/// Eigenvalues of the compressed operator, i.e. of A v = λ G v. All of them
/// lie in the closed disk |λ - 1| <= 1 up to factorization error.
std::vector<Complex> compression_eigs(const CompressionModel& model);

/// Norm of C restricted to the span: sqrt of the largest eigenvalue of
/// M v = λ G v with M[j][k] = <C k_is_k, C k_is_j> = (A + Aᵀ)[j][k].
/// Lies in [2 sqrt(log 2), 2] and is nondecreasing under point-set growth.
double compression_norm(const CompressionModel& model);

/// Rayleigh quotients <Cf, f>/<f, f> for seeded random coefficient vectors;
/// samples of the numerical range, contained in |w - 1| <= 1.
std::vector<Complex> numerical_range_samples(const CompressionModel& model, int directions, std::uint64_t seed = 42);

}  // namespace cesaro
