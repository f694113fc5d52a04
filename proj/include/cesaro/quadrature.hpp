#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cesaro/halfplane.hpp"

namespace cesaro {

/// Tolerances and truncation controls for the adaptive integrator.
/// max_subdivisions caps the bisection depth of any panel chain.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 60;
    double tail_radius = 1e6;
    int gl_order = 15;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
        if (gl_order < 2) throw std::invalid_argument("QuadratureSpec: gl_order must be at least 2");
        if (!(tail_radius > 0.0)) throw std::invalid_argument("QuadratureSpec: tail_radius must be positive");
        if (max_subdivisions < 0) throw std::invalid_argument("QuadratureSpec: max_subdivisions must be nonnegative");
    }
};

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
    int panels_used = 0;
    double tail_bound = 0.0;
    bool converged = false;

    double total_error() const { return error_estimate + tail_bound; }
};

/// Radial decay declaration: |g(x)| <= constant * max(log|x|, 1)^log_power / |x|^power
/// for all |x| >= valid_from. Soundness of the analytic tail bound rests on
/// the caller honoring this on the truncated tails.
struct DecayEnvelope {
    double constant = 0.0;
    double power = 2.0;
    double log_power = 0.0;
    double valid_from = 1.0;

    void validate() const {
        if (!(constant >= 0.0)) throw std::invalid_argument("DecayEnvelope: constant must be nonnegative");
        if (!(power > 1.0)) throw std::invalid_argument("DecayEnvelope: power must exceed 1 for an integrable tail");
        if (log_power < 0.0) throw std::invalid_argument("DecayEnvelope: log_power must be nonnegative");
        if (!(valid_from > 0.0)) throw std::invalid_argument("DecayEnvelope: valid_from must be positive");
    }
};

using Integrand = std::function<Complex(double)>;
using ComplexIntegrand = std::function<Complex(Complex)>;

/// One-sided tail mass bound: ∫_R^∞ constant * max(log x,1)^m / x^a dx.
/// Exact closed form for m in {0,1,2}; a sound slightly loosened closed form
/// for non-integer m.
double envelope_tail_mass(const DecayEnvelope& envelope, double radius);

/// Adaptive integral over a finite interval [a, b]. Gauss nodes are strictly
/// interior, so integrable endpoint singularities are admissible.
QuadratureResult integrate_interval(const Integrand& g, double a, double b, const QuadratureSpec& spec);

/// Adaptive integral over [0, 1].
QuadratureResult integrate_unit_interval(const Integrand& g, const QuadratureSpec& spec);

/// Adaptive integral over [-R, R] with R = spec.tail_radius, plus an analytic
/// bound on the discarded tails from the declared envelope. The tail bound is
/// reported in tail_bound and counted against the convergence budget, never
/// added to the value.
QuadratureResult integrate_real_line(const Integrand& g, const QuadratureSpec& spec, const DecayEnvelope& envelope);

/// Same contract on [0, ∞).
QuadratureResult integrate_half_line(const Integrand& g, const QuadratureSpec& spec, const DecayEnvelope& envelope);

/// ∫_0^z g(ζ) dζ along the straight segment, parametrized ζ = z·s.
QuadratureResult integrate_segment(const ComplexIntegrand& g, Complex z_end, const QuadratureSpec& spec);

/// Gauss–Legendre nodes and weights on [-1, 1], cached per order.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre_rule(int order);

/// Non-adaptive composite rule with equal panels; the convergence-order
/// diagnostic in the test suite is built on this.
Complex composite_gauss_legendre(const Integrand& g, double a, double b, int panels, int order);

}  // namespace cesaro
