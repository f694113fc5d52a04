#pragma once

#include <vector>

#include "cesaro/operators.hpp"

namespace cesaro {

/// Integrability exponent. p = 1 is accepted for plain norm computation;
/// operator-bound work additionally needs p > 1 (checked where used).
struct ExponentP {
    double p;

    explicit ExponentP(double value) : p(value) {
        if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("ExponentP: requires finite p >= 1");
    }

    double conjugate() const {
        if (!(p > 1.0)) throw std::invalid_argument("ExponentP: conjugate exponent needs p > 1");
        return p / (p - 1.0);
    }
};

/// Interpolation parameter of the boundedness estimate; 0 < beta < (p-1)/p.
struct BetaParameter {
    double beta;

    BetaParameter(double value, const ExponentP& p) : beta(value) {
        const double q = p.conjugate();
        if (!(beta > 0.0) || !(beta * q < 1.0)) {
            throw std::invalid_argument("BetaParameter: requires 0 < beta < (p-1)/p");
        }
    }
};

/// The bound (1 - beta q)^{-1/q} (beta p)^{-1/p} on ||C||_p.
double theorem1_bound(const BetaParameter& beta, const ExponentP& p);

struct BoundOptimum {
    double beta_star;
    double bound_star;
};

/// Minimize theorem1_bound over the admissible beta interval. The minimum is
/// located by root-finding on the stationarity condition; callers can check
/// it against the closed form beta* = (p-1)/p^2, bound* = p/(p-1).
BoundOptimum optimize_theorem1_bound(const ExponentP& p);

/// Boundary norm (∫_R |f(t)|^p dt)^{1/p}. Kernel expansions at p = 2 are
/// evaluated through the exact Gram quadratic form, never quadrature.
double hp_norm_boundary(const FunctionHandle& f, const ExponentP& p, const QuadratureSpec& spec);

struct LineScan {
    double norm = 0.0;                   // max line integral, to the 1/p
    std::vector<double> line_integrals;  // ∫ |f(x+iy)|^p dx per grid y, ascending y
    double max_increase = 0.0;           // diagnostic: should be ~0 (nonincreasing in y)
    bool nonincreasing = true;
};

/// Evaluate the sup over y in the norm definition as a max over a grid of
/// heights. The nonincreasing-in-y property is reported as a diagnostic, not
/// assumed.
LineScan hp_norm_yscan(const FunctionHandle& f, const ExponentP& p, std::vector<double> y_grid,
                       const QuadratureSpec& spec);

struct RayScan {
    double norm = 0.0;
    std::vector<double> ray_integrals;  // ∫_0^∞ |f(re^{it})|^p dr per grid t
};

/// Ray norm sup_{0<t<π} (∫_0^∞ |f(re^{it})|^p dr)^{1/p}, evaluated on a grid.
RayScan ray_norm(const FunctionHandle& f, const ExponentP& p, const std::vector<double>& t_grid,
                 const QuadratureSpec& spec);

/// ||Cf||_p / ||f||_p. Kernel expansions derive C f internally; a black box
/// must supply its own Cesàro image (the decay of Cf is not derivable from a
/// radial envelope alone).
double cesaro_ratio(const FunctionHandle& f, const ExponentP& p, const QuadratureSpec& spec);
double cesaro_ratio(const FunctionHandle& f, const FunctionHandle& cesaro_f, const ExponentP& p,
                    const QuadratureSpec& spec);

struct H1GrowthTable {
    double f_l1 = 0.0;  // ||f||_1 of the demo function 1/(z+i)^2
    struct Row {
        double radius;
        double integral;  // ∫_{|x|<=R} |Cf(x)| dx
    };
    std::vector<Row> rows;
};

/// The p = 1 failure demo: f(z) = 1/(z+i)^2 has finite boundary L^1 norm
/// while ∫_{|x|<=R} |(Cf)(x)| dx grows like 2 log R.
H1GrowthTable h1_counterexample_report(const std::vector<double>& r_grid, const QuadratureSpec& spec);

/// <f, g> = ∫_R f(t) conj(g(t)) dt by boundary quadrature; both handles need
/// boundary evaluators and envelopes.
Complex boundary_inner_product(const FunctionHandle& f, const FunctionHandle& g, const QuadratureSpec& spec);

}  // namespace cesaro
