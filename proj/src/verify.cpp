#include "cesaro/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace cesaro {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_st(double s, double t) { return "s=" + fmt(s) + ",t=" + fmt(t); }

/// Scale-free normalizer ||k_is|| ||k_it|| = 1/(4π sqrt(st)).
double kernel_norm_product(double s, double t) { return 1.0 / (4.0 * pi * std::sqrt(s * t)); }

IdentityCheck finish(IdentityCheck c) {
    c.passed = c.residual <= c.tol;
    return c;
}

double rel_residual(Complex got, Complex want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

}  // namespace

IdentityCheck check_isometry_c(double s, double t, double tol) {
    IdentityCheck c;
    c.name = "isometry_c";
    c.anchor = "c_minus_i_isometry";
    c.inputs = fmt_st(s, t);
    const double lhs = pair_inner_closed(PairKind::CC, s, t) - pair_inner_closed(PairKind::CK, s, t) -
                       pair_inner_closed(PairKind::CstarK, s, t) + 1.0 / (2.0 * pi * (s + t));
    const double rhs = 1.0 / (2.0 * pi * (s + t));
    c.lhs = lhs;
    c.rhs = rhs;
    c.residual = std::abs(lhs - rhs) / kernel_norm_product(s, t);
    c.tol = tol;
    return finish(c);
}

IdentityCheck check_isometry_cstar(double s, double t, double tol) {
    IdentityCheck c;
    c.name = "isometry_cstar";
    c.anchor = "cstar_minus_i_isometry";
    c.inputs = fmt_st(s, t);
    // <k_is, C* k_it> = <C k_is, k_it>, so the cross terms mirror the C case
    const double lhs = pair_inner_closed(PairKind::CstarCstar, s, t) - pair_inner_closed(PairKind::CstarK, s, t) -
                       pair_inner_closed(PairKind::CK, s, t) + 1.0 / (2.0 * pi * (s + t));
    const double rhs = 1.0 / (2.0 * pi * (s + t));
    c.lhs = lhs;
    c.rhs = rhs;
    c.residual = std::abs(lhs - rhs) / kernel_norm_product(s, t);
    c.tol = tol;
    return finish(c);
}

std::pair<IdentityCheck, IdentityCheck> check_unitarity_on_expansion(const KernelExpansion& f, double tol) {
    if (!f.on_imaginary_axis()) {
        throw std::invalid_argument("check_unitarity_on_expansion: anchors must lie on the imaginary axis");
    }
    if (f.size() > 20) throw std::invalid_argument("check_unitarity_on_expansion: at most 20 terms");

    const double norm_sq = expansion_norm_sq(f);
    Complex shift_c{0.0, 0.0};
    Complex shift_cstar{0.0, 0.0};
    for (const auto& a : f.terms()) {
        for (const auto& b : f.terms()) {
            const double sj = a.anchor.im();
            const double sk = b.anchor.im();
            const Complex w = a.coefficient * std::conj(b.coefficient);
            const double gram = 1.0 / (2.0 * pi * (sj + sk));
            const double cross = pair_inner_closed(PairKind::CK, sj, sk) + pair_inner_closed(PairKind::CstarK, sj, sk);
            shift_c += w * (pair_inner_closed(PairKind::CC, sj, sk) - cross + gram);
            shift_cstar += w * (pair_inner_closed(PairKind::CstarCstar, sj, sk) - cross + gram);
        }
    }

    auto make = [&](const char* name, const char* anchor, Complex lhs) {
        IdentityCheck c;
        c.name = name;
        c.anchor = anchor;
        c.inputs = "terms=" + std::to_string(f.size());
        c.lhs = lhs;
        c.rhs = norm_sq;
        c.residual = std::abs(lhs - norm_sq) / std::max(norm_sq, 1e-300);
        c.tol = tol;
        return finish(c);
    };
    return {make("unitarity_c", "c_minus_i_isometry", shift_c),
            make("unitarity_cstar", "cstar_minus_i_isometry", shift_cstar)};
}

IdentityCheck check_product_identity(double s, double t, double tol) {
    IdentityCheck c;
    c.name = "product_identity";
    c.anchor = "cstar_c_equals_c_plus_cstar";
    c.inputs = fmt_st(s, t);
    const double lhs = pair_inner_closed(PairKind::CC, s, t);
    const double rhs = pair_inner_closed(PairKind::CK, s, t) + pair_inner_closed(PairKind::CstarK, s, t);
    c.lhs = lhs;
    c.rhs = rhs;
    c.residual = std::abs(lhs - rhs) / kernel_norm_product(s, t);
    c.tol = tol;
    return finish(c);
}

IdentityCheck check_positivity(const std::vector<ImaginaryAxisPoint>& points, double tol) {
    if (points.empty() || points.size() > 20) {
        throw std::invalid_argument("check_positivity: between 1 and 20 points");
    }
    for (std::size_t j = 0; j < points.size(); ++j) {
        for (std::size_t k = j + 1; k < points.size(); ++k) {
            if (points[j].s() == points[k].s()) throw std::invalid_argument("check_positivity: duplicate points");
        }
    }
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            m(j, k) = pair_inner_closed(PairKind::CC, points[k].s(), points[j].s());
        }
    }
    IdentityCheck c;
    c.name = "positivity";
    c.anchor = "c_plus_cstar_positive";
    c.inputs = "n=" + std::to_string(points.size()) + ",s0=" + fmt(points.front().s());
    if (!m.isApprox(m.transpose(), 0.0)) {  // entries are exactly symmetric by construction
        c.residual = std::numeric_limits<double>::infinity();
        c.tol = tol;
        return finish(c);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
    const double min_eig = eig.eigenvalues().minCoeff();
    c.lhs = min_eig;
    c.rhs = 0.0;
    c.residual = std::max(0.0, -min_eig);
    c.tol = tol;
    return finish(c);
}

IdentityCheck check_log_inequality(double s, double t, double tol) {
    if (!(s > 0.0) || !(t > 0.0)) throw std::invalid_argument("check_log_inequality: s, t must be positive");
    IdentityCheck c;
    c.name = "log_inequality";
    c.anchor = "log_mean_inequality";
    c.inputs = fmt_st(s, t);
    const double lhs = 0.5 * (std::log1p(s / t) / s + std::log1p(t / s) / t);
    const double rhs = std::log(2.0) / std::sqrt(s * t);
    c.lhs = lhs;
    c.rhs = rhs;
    c.tol = tol;
    if (s == t) {
        c.residual = std::abs(lhs - rhs);  // equality case
        return finish(c);
    }
    c.residual = std::max(0.0, lhs - rhs);
    c.passed = c.residual <= tol;
    if (std::abs(std::log(s / t)) >= 0.1 && !(rhs - lhs > 0.0)) c.passed = false;  // strict gap expected
    return c;
}

Complex cc_boundary_integrand(double s, double t, double x) {
    const double scale = 1.0 / (4.0 * pi * pi);
    if (x == 0.0) return {scale / (s * t), 0.0};
    const Complex a = log1p_checked(Complex{0.0, -x / s});
    const Complex b = log1p_checked(Complex{0.0, x / t});
    return scale * a * b / (x * x);
}

Complex cstar_cstar_boundary_integrand(double s, double t, double x) {
    const double scale = 1.0 / (4.0 * pi * pi * s * t);
    if (x == 0.0) return {scale * s * t, 0.0};
    const Complex a = log1p_checked(Complex{0.0, s * x});
    const Complex b = log1p_checked(Complex{0.0, -t * x});
    return scale * a * b / (x * x);
}

namespace {

/// |log(1 - i x / s)| <= log|x| + max(0, log(2/s)) + π/2 once |x| >= max(e^2, 2s);
/// fold the additive slack into a multiplicative constant on log|x|.
double log_factor_constant(double scale_s, double valid_from) {
    const double slack = std::max(0.0, std::log(2.0 / scale_s)) + 0.5 * pi;
    return 1.0 + slack / std::log(valid_from);
}

}  // namespace

DecayEnvelope cc_boundary_envelope(double s, double t) {
    DecayEnvelope env;
    env.valid_from = std::max({std::exp(2.0), 2.0 * s, 2.0 * t});
    env.power = 2.0;
    env.log_power = 2.0;
    env.constant =
        log_factor_constant(s, env.valid_from) * log_factor_constant(t, env.valid_from) / (4.0 * pi * pi);
    return env;
}

DecayEnvelope cstar_cstar_boundary_envelope(double s, double t) {
    DecayEnvelope env;
    env.valid_from = std::max({std::exp(2.0), 2.0 / s, 2.0 / t});
    env.power = 2.0;
    env.log_power = 2.0;
    env.constant = log_factor_constant(1.0 / s, env.valid_from) * log_factor_constant(1.0 / t, env.valid_from) /
                   (4.0 * pi * pi * s * t);
    return env;
}

IdentityCheck check_quad_cesaro_on_kernel(double s, double t, const QuadratureSpec& quad, double rel_tol) {
    IdentityCheck c;
    c.name = "quad_cesaro_on_kernel";
    c.anchor = "c_on_kernel_closed_form";
    c.inputs = fmt_st(s, t);
    const HalfPlanePoint anchor{0.0, s};
    const HalfPlanePoint at{0.0, t};
    const Complex closed = cesaro_on_kernel(anchor)(at.value());
    c.rhs = closed;
    c.tol = rel_tol;
    try {
        const Complex quadrature = cesaro_apply(KernelExpansion({{1.0, anchor}}), at, quad);
        c.lhs = quadrature;
        c.residual = rel_residual(quadrature, closed);
    } catch (const QuadratureError& e) {
        c.lhs = e.partial().value;
        c.residual = std::numeric_limits<double>::infinity();
    }
    return finish(c);
}

IdentityCheck check_quad_adjoint_on_kernel(double s, double t, const QuadratureSpec& quad, double rel_tol) {
    IdentityCheck c;
    c.name = "quad_adjoint_on_kernel";
    c.anchor = "cstar_on_kernel_closed_form";
    c.inputs = fmt_st(s, t);
    const HalfPlanePoint anchor{0.0, s};
    const HalfPlanePoint at{0.0, t};
    const Complex closed = adjoint_on_kernel(anchor)(at.value());
    c.rhs = closed;
    c.tol = rel_tol;
    try {
        const Complex quadrature = adjoint_apply(KernelExpansion({{1.0, anchor}}), at, quad);
        c.lhs = quadrature;
        c.residual = rel_residual(quadrature, closed);
    } catch (const QuadratureError& e) {
        c.lhs = e.partial().value;
        c.residual = std::numeric_limits<double>::infinity();
    }
    return finish(c);
}

IdentityCheck check_quad_cc_inner(double s, double t, const QuadratureSpec& quad, double rel_tol) {
    IdentityCheck c;
    c.name = "quad_cc_inner";
    c.anchor = "cc_inner_product";
    c.inputs = fmt_st(s, t);
    const double closed = pair_inner_closed(PairKind::CC, s, t);
    QuadratureResult r =
        integrate_real_line([&](double x) { return cc_boundary_integrand(s, t, x); }, quad, cc_boundary_envelope(s, t));
    c.lhs = r.value;
    c.rhs = closed;
    c.residual = r.converged ? rel_residual(r.value, closed) : std::numeric_limits<double>::infinity();
    c.tol = rel_tol;
    return finish(c);
}

IdentityCheck check_quad_cstar_cstar_inner(double s, double t, const QuadratureSpec& quad, double rel_tol) {
    IdentityCheck c;
    c.name = "quad_cstar_cstar_inner";
    c.anchor = "cstar_cstar_inner_product";
    c.inputs = fmt_st(s, t);
    const double closed = pair_inner_closed(PairKind::CstarCstar, s, t);
    QuadratureResult r = integrate_real_line([&](double x) { return cstar_cstar_boundary_integrand(s, t, x); }, quad,
                                             cstar_cstar_boundary_envelope(s, t));
    c.lhs = r.value;
    c.rhs = closed;
    c.residual = r.converged ? rel_residual(r.value, closed) : std::numeric_limits<double>::infinity();
    c.tol = rel_tol;
    return finish(c);
}

KernelExpansion random_axis_expansion(SplitMix64& rng, int max_terms, double s_lo, double s_hi) {
    const int n = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_terms));
    std::vector<KernelExpansion::Term> terms;
    terms.reserve(n);
    for (int j = 0; j < n; ++j) {
        const double s = rng.log_uniform(s_lo, s_hi);
        terms.push_back({rng.unit_disk(), HalfPlanePoint{0.0, s}});
    }
    return KernelExpansion(std::move(terms));
}

VerificationReport run_suite(const SuiteConfig& config) {
    config.grid.validate();
    config.quad.validate();
    VerificationReport report;
    report.config = config;
    std::vector<IdentityCheck>& checks = report.checks;

    const std::vector<double> grid = make_grid(config.grid);

    // closed-form lane on the grid
    for (double s : grid) {
        for (double t : grid) {
            checks.push_back(check_isometry_c(s, t, config.closed_form_tol));
            checks.push_back(check_isometry_cstar(s, t, config.closed_form_tol));
            checks.push_back(check_log_inequality(s, t, config.closed_form_tol));
        }
    }

    // random product-identity pairs
    {
        SplitMix64 rng(config.seed);
        double worst = 0.0;
        std::pair<double, double> worst_at{grid.front(), grid.front()};
        for (int j = 0; j < config.n_product_pairs; ++j) {
            const double s = rng.log_uniform(config.grid.lo, config.grid.hi);
            const double t = rng.log_uniform(config.grid.lo, config.grid.hi);
            IdentityCheck c = check_product_identity(s, t, config.closed_form_tol);
            if (c.residual >= worst) {
                worst = c.residual;
                worst_at = {s, t};
            }
        }
        IdentityCheck agg;
        agg.name = "product_identity_sweep";
        agg.anchor = "cstar_c_equals_c_plus_cstar";
        agg.inputs = "pairs=" + std::to_string(config.n_product_pairs) + ",seed=" + std::to_string(config.seed);
        agg.lhs = worst;
        agg.rhs = 0.0;
        agg.residual = worst;
        agg.tol = config.closed_form_tol;
        checks.push_back(finish(agg));
        checks.push_back(check_product_identity(worst_at.first, worst_at.second, config.closed_form_tol));
    }

    // random unitarity expansions
    {
        SplitMix64 rng(config.seed + 1);
        double worst_c = 0.0;
        double worst_cstar = 0.0;
        for (int j = 0; j < config.n_unitarity_expansions; ++j) {
            const KernelExpansion f =
                random_axis_expansion(rng, config.max_expansion_terms, config.grid.lo, config.grid.hi);
            auto [uc, ucs] = check_unitarity_on_expansion(f, config.unitarity_tol);
            worst_c = std::max(worst_c, uc.residual);
            worst_cstar = std::max(worst_cstar, ucs.residual);
        }
        auto agg = [&](const char* name, const char* anchor, double worst) {
            IdentityCheck c;
            c.name = name;
            c.anchor = anchor;
            c.inputs = "expansions=" + std::to_string(config.n_unitarity_expansions) +
                       ",seed=" + std::to_string(config.seed + 1);
            c.lhs = worst;
            c.rhs = 0.0;
            c.residual = worst;
            c.tol = config.unitarity_tol;
            return finish(c);
        };
        checks.push_back(agg("unitarity_c_sweep", "c_minus_i_isometry", worst_c));
        checks.push_back(agg("unitarity_cstar_sweep", "cstar_minus_i_isometry", worst_cstar));
    }

    // positivity on a log-spaced grid
    {
        GridSpec pg = config.grid;
        pg.n = config.positivity_size;
        std::vector<ImaginaryAxisPoint> points;
        for (double s : make_grid(pg)) points.emplace_back(s);
        checks.push_back(check_positivity(points, config.positivity_tol));
    }

    // log-inequality random sweep over a wide range
    {
        SplitMix64 rng(config.seed + 2);
        double worst = 0.0;
        int violations = 0;
        for (int j = 0; j < config.n_inequality_pairs; ++j) {
            const double s = rng.log_uniform(1e-3, 1e3);
            const double t = rng.log_uniform(1e-3, 1e3);
            IdentityCheck c = check_log_inequality(s, t, config.closed_form_tol);
            worst = std::max(worst, c.residual);
            if (!c.passed) ++violations;
        }
        IdentityCheck agg;
        agg.name = "log_inequality_sweep";
        agg.anchor = "log_mean_inequality";
        agg.inputs = "pairs=" + std::to_string(config.n_inequality_pairs) + ",seed=" + std::to_string(config.seed + 2);
        agg.lhs = worst;
        agg.rhs = violations;
        agg.residual = worst;
        agg.tol = config.closed_form_tol;
        agg.passed = violations == 0 && worst <= agg.tol;
        checks.push_back(agg);
    }

    // quadrature lane on the grid
    for (double s : grid) {
        for (double t : grid) {
            checks.push_back(check_quad_cesaro_on_kernel(s, t, config.quad, config.quadrature_tol));
            checks.push_back(check_quad_adjoint_on_kernel(s, t, config.quad, config.quadrature_tol));
            checks.push_back(check_quad_cc_inner(s, t, config.quad, config.quadrature_tol));
            checks.push_back(check_quad_cstar_cstar_inner(s, t, config.quad, config.quadrature_tol));
        }
    }

    std::sort(checks.begin(), checks.end(), [](const IdentityCheck& a, const IdentityCheck& b) {
        if (a.name != b.name) return a.name < b.name;
        return a.inputs < b.inputs;
    });
    for (const IdentityCheck& c : checks) {
        if (c.passed) {
            ++report.n_passed;
        } else {
            ++report.n_failed;
        }
    }
    return report;
}

}  // namespace cesaro
