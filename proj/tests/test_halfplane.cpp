#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

#include "cesaro/halfplane.hpp"
#include "cesaro/rng.hpp"

using namespace cesaro;

namespace {
double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }
}  // namespace

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(HalfPlanePoint(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(HalfPlanePoint(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(ImaginaryAxisPoint(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ImaginaryAxisPoint(-2.0), std::invalid_argument);
    CHECK_NOTHROW(HalfPlanePoint(-5.0, 1e-12));
}

TEST_CASE("kernel evaluation closed forms") {
    const ReproducingKernel k_i{HalfPlanePoint{0.0, 1.0}};
    const ReproducingKernel k_2i{HalfPlanePoint{0.0, 2.0}};

    // k_i(i) = 1/(2πi) / (-2i) = 1/(4π)
    CHECK(rel_err(kernel_eval(k_i, HalfPlanePoint{0.0, 1.0}), Complex{1.0 / (4.0 * pi), 0.0}) < 1e-15);
    // k_2i(i) = 1/(2πi) / (-3i) = 1/(6π)
    CHECK(rel_err(kernel_eval(k_2i, HalfPlanePoint{0.0, 1.0}), Complex{1.0 / (6.0 * pi), 0.0}) < 1e-15);
    // k_i(1+i) = 1/(2πi (-1-2i)) = (2+i)/(10π)
    CHECK(rel_err(kernel_eval(k_i, HalfPlanePoint{1.0, 1.0}), Complex{2.0, 1.0} / (10.0 * pi)) < 1e-15);
}

TEST_CASE("kernel inner products via the reproducing property") {
    auto k = [](double s) { return kernel_at(ImaginaryAxisPoint(s)); };
    CHECK(rel_err(kernel_inner(k(1.0), k(1.0)), Complex{1.0 / (4.0 * pi), 0.0}) < 1e-15);
    CHECK(rel_err(kernel_inner(k(1.0), k(3.0)), Complex{1.0 / (8.0 * pi), 0.0}) < 1e-15);

    // <k_z, k_z> = 1/(4πy) independently of x
    for (double x : {-7.0, 0.0, 3.5, 1e3}) {
        const ReproducingKernel kz{HalfPlanePoint{x, 0.25}};
        CHECK(rel_err(kernel_inner(kz, kz), Complex{1.0 / (4.0 * pi * 0.25), 0.0}) < 1e-14);
    }
}

TEST_CASE("kernel inner product is Hermitian") {
    SplitMix64 rng(2024);
    for (int j = 0; j < 1000; ++j) {
        const HalfPlanePoint a{20.0 * rng.uniform01() - 10.0, rng.log_uniform(0.01, 10.0)};
        const HalfPlanePoint b{20.0 * rng.uniform01() - 10.0, rng.log_uniform(0.01, 10.0)};
        const Complex ab = kernel_inner(ReproducingKernel{a}, ReproducingKernel{b});
        const Complex ba = kernel_inner(ReproducingKernel{b}, ReproducingKernel{a});
        CHECK(std::abs(ab - std::conj(ba)) <= 1e-14 * std::abs(ab));
    }
}

TEST_CASE("expansion merge and evaluation") {
    const HalfPlanePoint at_i{0.0, 1.0};

    const KernelExpansion zero;
    CHECK(zero.is_zero());
    CHECK(expansion_eval(zero, at_i) == Complex{0.0, 0.0});

    const KernelExpansion single({{1.0, at_i}});
    CHECK(rel_err(expansion_eval(single, at_i), Complex{1.0 / (4.0 * pi), 0.0}) < 1e-15);

    const KernelExpansion cancelled({{1.0, at_i}, {-1.0, at_i}});
    CHECK(cancelled.is_zero());
    CHECK(expansion_eval(cancelled, HalfPlanePoint{2.0, 0.3}) == Complex{0.0, 0.0});

    const KernelExpansion merged({{1.0, at_i}, {Complex{2.0, 1.0}, at_i}});
    REQUIRE(merged.size() == 1);
    CHECK(merged.terms()[0].coefficient == Complex{3.0, 1.0});

    CHECK(KernelExpansion({{1.0, at_i}, {1.0, HalfPlanePoint{0.0, 1.0 + 1e-12}}}).has_near_duplicate_anchors());
    CHECK_FALSE(KernelExpansion({{1.0, at_i}, {1.0, HalfPlanePoint{0.0, 2.0}}}).has_near_duplicate_anchors());
}

TEST_CASE("reproducing property: closed-form inner equals evaluation bitwise") {
    const KernelExpansion f({{Complex{0.3, -1.1}, HalfPlanePoint{0.0, 0.5}},
                             {Complex{-2.0, 0.7}, HalfPlanePoint{1.0, 2.0}},
                             {Complex{0.05, 0.0}, HalfPlanePoint{-3.0, 0.1}}});
    for (double re : {-2.0, 0.0, 1.5}) {
        for (double im : {0.1, 1.0, 7.0}) {
            const HalfPlanePoint z{re, im};
            const Complex via_inner = expansion_inner(f, KernelExpansion({{1.0, z}}));
            CHECK(via_inner == expansion_eval(f, z));
        }
    }
}

TEST_CASE("gram matrix closed form") {
    const Eigen::MatrixXd g1 = gram_matrix({ImaginaryAxisPoint(1.0)});
    REQUIRE(g1.rows() == 1);
    CHECK(g1(0, 0) == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-15));

    const Eigen::MatrixXd g2 = gram_matrix({ImaginaryAxisPoint(1.0), ImaginaryAxisPoint(3.0)});
    CHECK(g2(0, 0) == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-15));
    CHECK(g2(0, 1) == doctest::Approx(1.0 / (8.0 * pi)).epsilon(1e-15));
    CHECK(g2(1, 0) == doctest::Approx(1.0 / (8.0 * pi)).epsilon(1e-15));
    CHECK(g2(1, 1) == doctest::Approx(1.0 / (12.0 * pi)).epsilon(1e-15));

    CHECK_THROWS_AS(gram_matrix({ImaginaryAxisPoint(2.0), ImaginaryAxisPoint(2.0)}), std::invalid_argument);
}

namespace {

std::vector<ImaginaryAxisPoint> random_separated_points(SplitMix64& rng, int n, double min_log_gap) {
    std::vector<ImaginaryAxisPoint> pts;
    while (pts.size() < static_cast<std::size_t>(n)) {
        const double s = rng.log_uniform(0.1, 10.0);
        bool fresh = true;
        for (const auto& p : pts) {
            if (std::abs(std::log(p.s() / s)) < min_log_gap) fresh = false;
        }
        if (fresh) pts.emplace_back(s);
    }
    return pts;
}

}  // namespace

TEST_CASE("gram matrices are positive definite") {
    SplitMix64 rng(7);

    // Strict positivity where double precision resolves it: the Cauchy
    // structure makes the condition number grow exponentially with n, so the
    // smallest eigenvalue of a 20-point grid sits at the eigensolver's noise
    // floor. Up to 10 separated points it stays far above it.
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 9);
        const auto pts = random_separated_points(rng, n, 0.05);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_matrix(pts), Eigen::EigenvaluesOnly);
        CHECK(eig.eigenvalues().minCoeff() > 0.0);
    }

    // Positivity at the noise floor for the full n <= 20 range.
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 19);
        const auto pts = random_separated_points(rng, n, 0.05);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_matrix(pts), Eigen::EigenvaluesOnly);
        const double scale = eig.eigenvalues().maxCoeff();
        CHECK(eig.eigenvalues().minCoeff() > -1e-13 * scale);
    }

    // Log-equispaced grids resolve strict positivity all the way to n = 20.
    for (int n : {5, 12, 20}) {
        std::vector<ImaginaryAxisPoint> pts;
        for (double s : make_grid(GridSpec{GridKind::Log, 0.1, 10.0, n})) pts.emplace_back(s);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_matrix(pts), Eigen::EigenvaluesOnly);
        CHECK(eig.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("branch safety: 1 - zeta/conj(z) stays off the cut") {
    SplitMix64 rng(99);
    for (int j = 0; j < 10000; ++j) {
        const Complex zeta{20.0 * rng.uniform01() - 10.0, rng.log_uniform(1e-4, 10.0)};
        const Complex z{20.0 * rng.uniform01() - 10.0, rng.log_uniform(1e-4, 10.0)};
        const Complex w = 1.0 - zeta / std::conj(z);
        const bool off_cut = w.real() >= 0.0 || std::abs(w.imag()) > 0.0;
        CHECK(off_cut);
    }
}
