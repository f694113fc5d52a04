#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cesaro/norms.hpp"
#include "cesaro/operators.hpp"
#include "cesaro/rng.hpp"

namespace cesaro {

/// One verified identity: name + inputs make the record recomputable.
struct IdentityCheck {
    std::string name;
    std::string anchor;  // identity family, e.g. "c_minus_i_isometry"
    std::string inputs;
    Complex lhs{0.0, 0.0};
    Complex rhs{0.0, 0.0};
    double residual = 0.0;
    double tol = 0.0;
    bool passed = false;
};

struct SuiteConfig {
    std::uint64_t seed = 42;
    GridSpec grid{GridKind::Log, 0.1, 10.0, 5};

    /// Closed-form lane: residuals are normalized by ||k_is|| ||k_it|| (or
    /// ||f||^2), so the pass criteria are scale-free.
    double closed_form_tol = 1e-12;
    double unitarity_tol = 1e-9;
    double positivity_tol = 1e-10;

    /// Quadrature lane: relative agreement between the boundary-integral
    /// oracle and the closed forms.
    double quadrature_tol = 1e-8;

    /// Quadrature settings for the oracle lane. The wide truncation radius is
    /// what pushes the log^2/x^2 tails below the 1e-8 agreement target.
    QuadratureSpec quad{1e-9, 1e-13, 60, 1e12, 15};

    int n_unitarity_expansions = 100;
    int max_expansion_terms = 10;
    int n_product_pairs = 100;
    int n_inequality_pairs = 10000;
    int positivity_size = 20;
};

struct VerificationReport {
    SuiteConfig config;
    std::vector<IdentityCheck> checks;
    int n_passed = 0;
    int n_failed = 0;
};

/// <(C-I)k_is, (C-I)k_it> = <k_is, k_it>, closed forms on both sides.
IdentityCheck check_isometry_c(double s, double t, double tol = 1e-12);

/// <(C*-I)k_is, (C*-I)k_it> = <k_is, k_it>.
IdentityCheck check_isometry_cstar(double s, double t, double tol = 1e-12);

/// ||(C-I)f||^2 = ||f||^2 and ||(C*-I)f||^2 = ||f||^2 for an expansion with
/// imaginary-axis anchors (closed-form bilinear sums).
std::pair<IdentityCheck, IdentityCheck> check_unitarity_on_expansion(const KernelExpansion& f, double tol = 1e-9);

/// <Ck_is, Ck_it> = <Ck_is, k_it> + <C*k_is, k_it>  (the C*C = C + C* identity).
IdentityCheck check_product_identity(double s, double t, double tol = 1e-13);

/// The matrix of <(C+C*)k_is_k, k_is_j> is symmetric positive semidefinite.
IdentityCheck check_positivity(const std::vector<ImaginaryAxisPoint>& points, double tol = 1e-10);

/// (1/2)[(1/s)log(1+s/t) + (1/t)log(1+t/s)] <= log(2)/sqrt(st), with equality
/// iff s = t.
IdentityCheck check_log_inequality(double s, double t, double tol = 1e-12);

/// Quadrature-lane agreements: boundary-integral oracle vs closed form.
IdentityCheck check_quad_cesaro_on_kernel(double s, double t, const QuadratureSpec& quad, double rel_tol = 1e-8);
IdentityCheck check_quad_adjoint_on_kernel(double s, double t, const QuadratureSpec& quad, double rel_tol = 1e-8);
IdentityCheck check_quad_cc_inner(double s, double t, const QuadratureSpec& quad, double rel_tol = 1e-8);
IdentityCheck check_quad_cstar_cstar_inner(double s, double t, const QuadratureSpec& quad, double rel_tol = 1e-8);

/// The boundary integrands behind the CC and C*C* inner products, extended by
/// continuity at x = 0 (used by the quadrature lane and by tests).
Complex cc_boundary_integrand(double s, double t, double x);
Complex cstar_cstar_boundary_integrand(double s, double t, double x);
DecayEnvelope cc_boundary_envelope(double s, double t);
DecayEnvelope cstar_cstar_boundary_envelope(double s, double t);

/// A seeded random expansion with imaginary-axis anchors: up to max_terms
/// log-uniform anchors in [s_lo, s_hi], coefficients in the unit disk.
KernelExpansion random_axis_expansion(SplitMix64& rng, int max_terms, double s_lo, double s_hi);

/// Run every check family deterministically under the config seed. Failures
/// are aggregated, never thrown.
VerificationReport run_suite(const SuiteConfig& config);

}  // namespace cesaro
