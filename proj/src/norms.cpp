#include "cesaro/norms.hpp"

#include <algorithm>
#include <cmath>

namespace cesaro {

namespace {

DecayEnvelope envelope_power(const DecayEnvelope& e, double p) {
    DecayEnvelope out;
    out.constant = std::pow(e.constant, p);
    out.power = e.power * p;
    out.log_power = e.log_power * p;
    out.valid_from = e.valid_from;
    return out;
}

DecayEnvelope envelope_product(const DecayEnvelope& a, const DecayEnvelope& b) {
    DecayEnvelope out;
    out.constant = a.constant * b.constant;
    out.power = a.power + b.power;
    out.log_power = a.log_power + b.log_power;
    out.valid_from = std::max(a.valid_from, b.valid_from);
    return out;
}

QuadratureResult require_converged(QuadratureResult r, const char* what) {
    if (!r.converged) {
        throw QuadratureError(std::string(what) + ": quadrature failed to converge (error estimate " +
                                  std::to_string(r.total_error()) + ")",
                              r);
    }
    return r;
}

double abs_pow(Complex v, double p) { return std::pow(std::abs(v), p); }

/// Boundary-norm integrand envelope for |f|^p; rejects non-integrable tails.
DecayEnvelope norm_envelope(const FunctionHandle& f, double p, const char* what) {
    const DecayEnvelope e = envelope_power(f.boundary_envelope(), p);
    if (!(e.power > 1.0)) {
        throw std::invalid_argument(std::string(what) +
                                    ": declared decay is insufficient for an integrable |f|^p tail");
    }
    return e;
}

}  // namespace

double theorem1_bound(const BetaParameter& beta, const ExponentP& p) {
    const double q = p.conjugate();
    const double b = beta.beta;
    return std::pow(1.0 - b * q, -1.0 / q) * std::pow(b * p.p, -1.0 / p.p);
}

BoundOptimum optimize_theorem1_bound(const ExponentP& p) {
    if (!(p.p > 1.0)) throw std::invalid_argument("optimize_theorem1_bound: requires 1 < p < inf");
    const double q = p.conjugate();
    // Stationarity of log(bound): g(beta) = 1/(1-beta q) - 1/(p beta) = 0,
    // strictly increasing on (0, 1/q). Bisection with Newton refinement.
    auto g = [&](double b) { return 1.0 / (1.0 - b * q) - 1.0 / (p.p * b); };
    double lo = 1e-12 / q;
    double hi = (1.0 - 1e-12) / q;
    double b = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
        const double gb = g(b);
        if (gb > 0.0) {
            hi = b;
        } else {
            lo = b;
        }
        const double gp = q / ((1.0 - b * q) * (1.0 - b * q)) + 1.0 / (p.p * b * b);
        double next = b - gb / gp;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - b) <= 1e-16 * b) {
            b = next;
            break;
        }
        b = next;
    }
    return {b, theorem1_bound(BetaParameter(b, p), p)};
}

double hp_norm_boundary(const FunctionHandle& f, const ExponentP& p, const QuadratureSpec& spec) {
    if (f.is_expansion() && p.p == 2.0) {
        return std::sqrt(expansion_norm_sq(f.expansion()));
    }
    if (!f.has_boundary()) {
        throw std::invalid_argument("hp_norm_boundary: the function handle has no boundary evaluator");
    }
    const DecayEnvelope env = norm_envelope(f, p.p, "hp_norm_boundary");
    auto integrand = [&](double t) { return Complex{abs_pow(f.boundary(t), p.p), 0.0}; };
    QuadratureResult r = require_converged(integrate_real_line(integrand, spec, env), "hp_norm_boundary");
    return std::pow(r.value.real(), 1.0 / p.p);
}

LineScan hp_norm_yscan(const FunctionHandle& f, const ExponentP& p, std::vector<double> y_grid,
                       const QuadratureSpec& spec) {
    if (y_grid.empty()) throw std::invalid_argument("hp_norm_yscan: empty height grid");
    for (double y : y_grid) {
        if (!(y > 0.0)) throw std::invalid_argument("hp_norm_yscan: heights must be positive");
    }
    std::sort(y_grid.begin(), y_grid.end());

    // Radial envelope transferred to a horizontal line: for |x| >= max(vf, y)
    // we have |x| <= |x+iy| <= |x| sqrt(2), which costs (1+log(2)/2/log vf)^m
    // on the log factor.
    DecayEnvelope base = f.boundary_envelope();
    base.valid_from = std::max(base.valid_from, y_grid.back());
    if (base.log_power > 0.0) {
        base.constant *= std::pow(1.0 + 0.5 * std::log(2.0) / std::max(std::log(base.valid_from), 1.0),
                                  base.log_power);
    }
    DecayEnvelope env = envelope_power(base, p.p);
    if (!(env.power > 1.0)) {
        throw std::invalid_argument("hp_norm_yscan: declared decay is insufficient for an integrable |f|^p tail");
    }

    LineScan scan;
    scan.line_integrals.reserve(y_grid.size());
    for (double y : y_grid) {
        auto integrand = [&](double x) { return Complex{abs_pow(f.eval_interior({x, y}), p.p), 0.0}; };
        QuadratureResult r = require_converged(integrate_real_line(integrand, spec, env), "hp_norm_yscan");
        scan.line_integrals.push_back(r.value.real());
    }
    double best = 0.0;
    for (std::size_t j = 0; j < scan.line_integrals.size(); ++j) {
        best = std::max(best, scan.line_integrals[j]);
        if (j + 1 < scan.line_integrals.size()) {
            scan.max_increase = std::max(scan.max_increase, scan.line_integrals[j + 1] - scan.line_integrals[j]);
        }
    }
    scan.nonincreasing = scan.max_increase <= 1e-10;
    scan.norm = std::pow(best, 1.0 / p.p);
    return scan;
}

RayScan ray_norm(const FunctionHandle& f, const ExponentP& p, const std::vector<double>& t_grid,
                 const QuadratureSpec& spec) {
    if (t_grid.empty()) throw std::invalid_argument("ray_norm: empty angle grid");
    const DecayEnvelope env = norm_envelope(f, p.p, "ray_norm");
    RayScan scan;
    scan.ray_integrals.reserve(t_grid.size());
    double best = 0.0;
    for (double t : t_grid) {
        if (!(t > 0.0 && t < pi)) throw std::invalid_argument("ray_norm: angles must lie in (0, pi)");
        const Complex dir{std::cos(t), std::sin(t)};
        auto integrand = [&](double r) { return Complex{abs_pow(f.eval_interior(r * dir), p.p), 0.0}; };
        QuadratureResult r = require_converged(integrate_half_line(integrand, spec, env), "ray_norm");
        scan.ray_integrals.push_back(r.value.real());
        best = std::max(best, r.value.real());
    }
    scan.norm = std::pow(best, 1.0 / p.p);
    return scan;
}

double cesaro_ratio(const FunctionHandle& f, const ExponentP& p, const QuadratureSpec& spec) {
    if (!f.is_expansion()) {
        throw std::invalid_argument(
            "cesaro_ratio: a black box needs an explicit Cesàro image; use the two-handle overload");
    }
    const KernelExpansion& fe = f.expansion();
    if (fe.is_zero()) throw std::invalid_argument("cesaro_ratio: zero input");
    if (p.p == 2.0 && fe.on_imaginary_axis()) {
        // exact closed forms: ||f||^2 from the Gram form, ||Cf||^2 from the
        // CC pair inner products
        Complex cf_sq{0.0, 0.0};
        for (const auto& a : fe.terms()) {
            for (const auto& b : fe.terms()) {
                cf_sq += a.coefficient * std::conj(b.coefficient) *
                         pair_inner_closed(PairKind::CC, a.anchor.im(), b.anchor.im());
            }
        }
        return std::sqrt(cf_sq.real() / expansion_norm_sq(fe));
    }
    return cesaro_ratio(f, cesaro_image(fe), p, spec);
}

double cesaro_ratio(const FunctionHandle& f, const FunctionHandle& cesaro_f, const ExponentP& p,
                    const QuadratureSpec& spec) {
    if (!(p.p > 1.0)) throw std::invalid_argument("cesaro_ratio: requires p > 1");
    const double nf = hp_norm_boundary(f, p, spec);
    if (nf == 0.0) throw std::invalid_argument("cesaro_ratio: zero input");
    return hp_norm_boundary(cesaro_f, p, spec) / nf;
}

H1GrowthTable h1_counterexample_report(const std::vector<double>& r_grid, const QuadratureSpec& spec) {
    for (std::size_t j = 0; j + 1 < r_grid.size(); ++j) {
        if (!(r_grid[j] < r_grid[j + 1])) throw std::invalid_argument("h1_counterexample_report: grid must increase");
    }
    for (double r : r_grid) {
        if (!(r > 1.0)) throw std::invalid_argument("h1_counterexample_report: radii must exceed 1");
    }
    H1GrowthTable table;
    // f(z) = 1/(z+i)^2, |f(t)| = 1/(1+t^2); Cf(z) = -i/(z+i), |Cf(t)| = 1/sqrt(1+t^2)
    DecayEnvelope env{1.0, 2.0, 0.0, 1.0};
    auto f_abs = [](double t) { return Complex{1.0 / (1.0 + t * t), 0.0}; };
    table.f_l1 = require_converged(integrate_real_line(f_abs, spec, env), "h1_counterexample_report").value.real();
    auto cf_abs = [](double x) { return Complex{1.0 / std::sqrt(1.0 + x * x), 0.0}; };
    table.rows.reserve(r_grid.size());
    for (double r : r_grid) {
        QuadratureResult q = require_converged(integrate_interval(cf_abs, -r, r, spec), "h1_counterexample_report");
        table.rows.push_back({r, q.value.real()});
    }
    return table;
}

Complex boundary_inner_product(const FunctionHandle& f, const FunctionHandle& g, const QuadratureSpec& spec) {
    if (!f.has_boundary() || !g.has_boundary()) {
        throw std::invalid_argument("boundary_inner_product: both handles need boundary evaluators");
    }
    const DecayEnvelope env = envelope_product(f.boundary_envelope(), g.boundary_envelope());
    if (!(env.power > 1.0)) {
        throw std::invalid_argument("boundary_inner_product: combined decay is not integrable");
    }
    auto integrand = [&](double t) { return f.boundary(t) * std::conj(g.boundary(t)); };
    return require_converged(integrate_real_line(integrand, spec, env), "boundary_inner_product").value;
}

}  // namespace cesaro
