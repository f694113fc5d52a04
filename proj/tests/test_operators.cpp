#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "cesaro/operators.hpp"
#include "cesaro/rng.hpp"
#include "cesaro/verify.hpp"

using namespace cesaro;

namespace {

const QuadratureSpec default_spec{};

QuadratureSpec wide_spec() {
    QuadratureSpec s;
    s.rel_tol = 1e-9;
    s.abs_tol = 1e-13;
    s.tail_radius = 1e12;
    return s;
}

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

const HalfPlanePoint at_i{0.0, 1.0};

FunctionHandle rational_pole() {
    // f(z) = 1/(z+i): |f(t)| = 1/sqrt(1+t^2) <= 1/|t|
    return FunctionHandle::black_box([](Complex z) { return 1.0 / (z + Complex{0.0, 1.0}); },
                                     [](double t) { return 1.0 / Complex{t, 1.0}; },
                                     DecayEnvelope{1.0, 1.0, 0.0, 1.0});
}

}  // namespace

TEST_CASE("cesaro_apply on a rational function") {
    // Cf(z) = Log(1 - iz)/z; at z = i this is (1/i) log 2 = -i log 2.
    // The quadrature route: ∫_0^1 ds/(is + i) = -i log 2.
    const Complex value = cesaro_apply(rational_pole(), at_i, default_spec);
    CHECK(rel_err(value, Complex{0.0, -std::log(2.0)}) < 1e-11);

    const Complex closed = principal_log_checked(1.0 - Complex{0.0, 1.0} * at_i.value()) / at_i.value();
    CHECK(rel_err(value, closed) < 1e-11);
}

TEST_CASE("cesaro_apply matches the kernel closed form") {
    const KernelExpansion k_i({{1.0, at_i}});
    const Complex via_quadrature = cesaro_apply(k_i, at_i, default_spec);
    const Complex via_closed = cesaro_on_kernel(at_i)(at_i.value());
    CHECK(rel_err(via_quadrature, Complex{std::log(2.0) / (2.0 * pi), 0.0}) < 1e-11);
    CHECK(rel_err(via_quadrature, via_closed) < 1e-11);

    CHECK(cesaro_apply(KernelExpansion{}, HalfPlanePoint{3.0, 0.4}, default_spec) == Complex{0.0, 0.0});
}

TEST_CASE("cesaro_on_kernel values and removable singularity") {
    auto ck = cesaro_on_kernel(at_i);
    // (C k_is)(it) = (1/2πt) log(1+t/s) on the axis
    for (double s : {0.3, 1.0, 4.0}) {
        auto cks = cesaro_on_kernel(HalfPlanePoint{0.0, s});
        for (double t : {0.2, 1.0, 7.5}) {
            const Complex want{std::log1p(t / s) / (2.0 * pi * t), 0.0};
            CHECK(rel_err(cks(Complex{0.0, t}), want) < 1e-14);
        }
    }

    // limit at ζ = 0 is 1/(2πi conj(z)); for anchor i that is 1/(2π)
    const Complex limit = ck(Complex{0.0, 0.0});
    CHECK(rel_err(limit, Complex{1.0 / (2.0 * pi), 0.0}) < 1e-15);
    for (double r : {1e-8, 1e-6}) {
        const Complex near = ck(Complex{0.0, r});
        CHECK(std::abs(near - limit) < 5e-6 * std::abs(limit));  // 6 significant digits
    }
    // series and direct-log branches agree where they meet
    CHECK(std::abs(ck(Complex{0.0, 0.999e-6}) - ck(Complex{0.0, 1.001e-6})) < 1e-12 * std::abs(limit));
}

TEST_CASE("adjoint closed form on the axis") {
    for (double s : {0.5, 1.0, 2.0}) {
        auto cstar = adjoint_on_kernel(HalfPlanePoint{0.0, s});
        for (double t : {0.5, 1.0, 3.0}) {
            const Complex want{std::log1p(s / t) / (2.0 * pi * s), 0.0};
            CHECK(rel_err(cstar(Complex{0.0, t}), want) < 1e-14);
        }
    }
    CHECK(rel_err(adjoint_on_kernel(at_i)(Complex{0.0, 1.0}), Complex{std::log(2.0) / (2.0 * pi), 0.0}) < 1e-14);
}

TEST_CASE("adjoint duality <C k_w, k_z> = conj(<C* k_z, k_w>) off the axis") {
    SplitMix64 rng(11);
    for (int j = 0; j < 100; ++j) {
        const HalfPlanePoint w{10.0 * rng.uniform01() - 5.0, rng.log_uniform(0.1, 5.0)};
        const HalfPlanePoint z{10.0 * rng.uniform01() - 5.0, rng.log_uniform(0.1, 5.0)};
        const Complex lhs = cesaro_on_kernel(w)(z.value());
        const Complex rhs = std::conj(adjoint_on_kernel(z)(w.value()));
        CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(lhs));
    }
}

TEST_CASE("adjoint_apply against the closed form") {
    const KernelExpansion k_i({{1.0, at_i}});
    const Complex got = adjoint_apply(k_i, at_i, wide_spec());
    CHECK(rel_err(got, Complex{std::log(2.0) / (2.0 * pi), 0.0}) < 1e-7);

    const KernelExpansion k_2i({{1.0, HalfPlanePoint{0.0, 2.0}}});
    const Complex got2 = adjoint_apply(k_2i, at_i, wide_spec());
    CHECK(rel_err(got2, Complex{std::log(3.0) / (4.0 * pi), 0.0}) < 1e-7);

    CHECK(std::abs(adjoint_apply(KernelExpansion{}, at_i, wide_spec())) == 0.0);

    const FunctionHandle no_boundary = FunctionHandle::black_box([](Complex z) { return z; });
    CHECK_THROWS_AS(adjoint_apply(no_boundary, at_i, wide_spec()), std::invalid_argument);
}

TEST_CASE("cmu_apply") {
    const KernelExpansion k_i({{1.0, at_i}});

    SUBCASE("mu = 0 reduces bitwise to cesaro_apply") {
        for (double im : {0.5, 1.0, 3.0}) {
            const HalfPlanePoint z{0.7, im};
            const Complex a = cmu_apply(MuParameter{Complex{0.0, 0.0}}, k_i, z, default_spec);
            const Complex b = cesaro_apply(k_i, z, default_spec);
            CHECK(std::memcmp(&a, &b, sizeof(a)) == 0);
        }
    }

    SUBCASE("mu = 1 with the rational pole") {
        // ∫_0^1 s/(is+i) ds = -i (1 - log 2)
        const Complex got = cmu_apply(MuParameter{Complex{1.0, 0.0}}, rational_pole(), at_i, default_spec);
        CHECK(rel_err(got, Complex{0.0, -(1.0 - std::log(2.0))}) < 1e-11);
    }

    SUBCASE("mu = -1/4: two tolerance settings agree") {
        QuadratureSpec tight = default_spec;
        tight.rel_tol = 1e-11;
        tight.gl_order = 20;
        const MuParameter mu{Complex{-0.25, 0.0}};
        const Complex a = cmu_apply(mu, k_i, at_i, default_spec);
        const Complex b = cmu_apply(mu, k_i, at_i, tight);
        CHECK(std::abs(a - b) < 1e-9 * std::abs(a));
    }

    SUBCASE("complex mu inside the admissible band") {
        CHECK_NOTHROW(cmu_apply(MuParameter{Complex{-0.3, 2.0}}, k_i, at_i, default_spec));
    }

    SUBCASE("mu outside the band is rejected at construction") {
        CHECK_THROWS_AS(MuParameter(Complex(-0.5, 0.0)), std::invalid_argument);
        CHECK_THROWS_AS(MuParameter(Complex(-0.9, 0.0), 2.0), std::invalid_argument);
        CHECK_NOTHROW(MuParameter(Complex(-0.6, 0.0), 4.0));  // band widens with p
    }
}

TEST_CASE("cauchy_reconstruct recovers interior values") {
    const KernelExpansion k_i({{1.0, at_i}});
    CHECK(rel_err(cauchy_reconstruct(k_i, HalfPlanePoint{0.0, 2.0}, wide_spec()),
                  Complex{1.0 / (6.0 * pi), 0.0}) < 1e-8);
    CHECK(rel_err(cauchy_reconstruct(k_i, at_i, wide_spec()), Complex{1.0 / (4.0 * pi), 0.0}) < 1e-8);
    CHECK(std::abs(cauchy_reconstruct(KernelExpansion{}, at_i, wide_spec())) == 0.0);

    const KernelExpansion f({{Complex{0.4, -0.9}, HalfPlanePoint{-1.0, 0.5}},
                             {Complex{1.2, 0.3}, HalfPlanePoint{2.0, 2.0}}});
    SplitMix64 rng(5);
    for (int j = 0; j < 10; ++j) {
        const HalfPlanePoint z{4.0 * rng.uniform01() - 2.0, rng.log_uniform(0.3, 3.0)};
        const Complex got = cauchy_reconstruct(f, z, wide_spec());
        CHECK(rel_err(got, expansion_eval(f, z)) < 1e-6);
    }
}

TEST_CASE("pair_inner_closed closed forms") {
    CHECK(pair_inner_closed(PairKind::CC, 1.0, 1.0) == doctest::Approx(std::log(2.0) / pi).epsilon(1e-15));

    SplitMix64 rng(3);
    for (int j = 0; j < 100; ++j) {
        const double s = rng.log_uniform(0.1, 10.0);
        const double t = rng.log_uniform(0.1, 10.0);
        // CC and C*C* are the same two terms added in either order
        CHECK(pair_inner_closed(PairKind::CC, s, t) == pair_inner_closed(PairKind::CstarCstar, s, t));
        // C*C = C + C* on kernels
        const double cc = pair_inner_closed(PairKind::CC, s, t);
        const double sum = pair_inner_closed(PairKind::CK, s, t) + pair_inner_closed(PairKind::CstarK, s, t);
        CHECK(std::abs(cc - sum) <= 1e-15 * std::abs(cc) + 1e-300);
    }

    CHECK(pair_inner_closed(PairKind::CK, 2.0, 5.0) + pair_inner_closed(PairKind::CstarK, 2.0, 5.0) ==
          doctest::Approx(pair_inner_closed(PairKind::CC, 2.0, 5.0)).epsilon(1e-14));

    CHECK_THROWS_AS(pair_inner_closed(PairKind::CC, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(pair_inner_closed(PairKind::CK, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("linearity of the Cesàro operator") {
    const KernelExpansion f({{Complex{0.5, 0.5}, HalfPlanePoint{0.0, 0.7}}});
    const KernelExpansion g({{Complex{-1.0, 0.25}, HalfPlanePoint{1.0, 2.0}}});
    const Complex a{2.0, -1.0};
    const Complex b{0.3, 0.8};
    const HalfPlanePoint z{0.5, 1.5};

    const Complex combined = cesaro_apply(a * f + b * g, z, default_spec);
    const Complex separate = a * cesaro_apply(f, z, default_spec) + b * cesaro_apply(g, z, default_spec);
    CHECK(std::abs(combined - separate) < 1e-12);
}

TEST_CASE("adjoint consistency <Cf, g> = <f, C*g> via closed forms") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const KernelExpansion f = random_axis_expansion(rng, 5, 0.1, 10.0);
        const KernelExpansion g = random_axis_expansion(rng, 5, 0.1, 10.0);
        Complex cf_g{0.0, 0.0};
        Complex f_cg{0.0, 0.0};
        for (const auto& a : f.terms()) {
            for (const auto& b : g.terms()) {
                const Complex w = a.coefficient * std::conj(b.coefficient);
                cf_g += w * pair_inner_closed(PairKind::CK, a.anchor.im(), b.anchor.im());
                // <k_s, C*k_t> = conj(<C*k_t, k_s>), real on the axis
                f_cg += w * pair_inner_closed(PairKind::CstarK, b.anchor.im(), a.anchor.im());
            }
        }
        const double scale = std::max({std::abs(cf_g), std::abs(f_cg), 1e-300});
        CHECK(std::abs(cf_g - f_cg) <= 1e-8 * scale);
    }
}

TEST_CASE("closed forms vs the boundary-integral oracle on a log grid") {
    const QuadratureSpec quad = wide_spec();
    std::vector<std::pair<double, double>> pairs;
    for (double s : make_grid(GridSpec{GridKind::Log, 0.1, 10.0, 7})) {
        for (double t : make_grid(GridSpec{GridKind::Log, 0.1, 10.0, 7})) {
            pairs.emplace_back(s, t);
        }
    }
    pairs.emplace_back(1.0, 1.0);
    REQUIRE(pairs.size() == 50);

    for (const auto& [s, t] : pairs) {
        CHECK(check_quad_cesaro_on_kernel(s, t, quad).passed);
        CHECK(check_quad_cc_inner(s, t, quad).passed);
    }
    // the slower real-line lanes on a coarser subgrid
    for (double s : make_grid(GridSpec{GridKind::Log, 0.1, 10.0, 4})) {
        for (double t : make_grid(GridSpec{GridKind::Log, 0.1, 10.0, 4})) {
            CHECK(check_quad_adjoint_on_kernel(s, t, quad).passed);
            CHECK(check_quad_cstar_cstar_inner(s, t, quad).passed);
        }
    }
}

TEST_CASE("quadrature non-convergence propagates as QuadratureError") {
    // f(ζ) = (-iζ)^{-0.45} is holomorphic on C+; f(zs) ~ s^{-0.45} near 0
    auto f = FunctionHandle::black_box(
        [](Complex z) { return std::exp(-0.45 * std::log(Complex{0.0, -1.0} * z)); });
    QuadratureSpec strangled = default_spec;
    strangled.max_subdivisions = 4;
    CHECK_THROWS_AS(cesaro_apply(f, at_i, strangled), QuadratureError);
    try {
        cesaro_apply(f, at_i, strangled);
    } catch (const QuadratureError& e) {
        CHECK(std::abs(e.partial().value) > 0.0);
        CHECK_FALSE(e.partial().converged);
    }
}

TEST_CASE("branch guard raises on the cut") {
    CHECK_THROWS_AS(principal_log_checked(Complex{-2.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(principal_log_checked(Complex{0.0, 0.0}), std::domain_error);
    CHECK_NOTHROW(principal_log_checked(Complex{-2.0, 1e-12}));
    CHECK_THROWS_AS(log1p_checked(Complex{-3.0, 0.0}), std::domain_error);
}

TEST_CASE("log1p_checked is accurate for tiny arguments") {
    for (double eps : {1e-18, 1e-12, 1e-8}) {
        const Complex w{eps, -0.5 * eps};
        const Complex got = log1p_checked(w);
        // log(1+w) = w - w^2/2 + O(w^3)
        const Complex want = w - 0.5 * w * w;
        CHECK(std::abs(got - want) <= 1e-15 * std::abs(w));
    }
}
