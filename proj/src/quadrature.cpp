#include "cesaro/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>

namespace cesaro {

namespace {

GaussLegendreRule compute_rule(int order) {
    // Newton iteration on the Legendre recurrence; symmetric nodes.
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int k = 0; k < half; ++k) {
        double x = std::cos(pi * (k + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= order; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // one polishing pass after convergence
                p0 = 1.0;
                p1 = x;
                for (int j = 2; j <= order; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = order * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[order - 1 - k] = x;
        rule.weights[order - 1 - k] = w;
        rule.nodes[k] = -x;
        rule.weights[k] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

std::mutex rule_cache_mutex;
std::map<int, GaussLegendreRule> rule_cache;

Complex apply_rule(const GaussLegendreRule& rule, const Integrand& g, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        acc += rule.weights[i] * g(mid + halfwidth * rule.nodes[i]);
    }
    return halfwidth * acc;
}

struct Panel {
    double a = 0.0;
    double b = 0.0;
    Complex value{0.0, 0.0};
    double err = 0.0;
    int depth = 0;
    std::size_t serial = 0;  // tie-breaker keeps the queue order deterministic
};

struct PanelWorse {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.serial > y.serial;
    }
};

constexpr std::size_t max_total_panels = 50000;

/// Global adaptive bisection over the given root panels: repeatedly split the
/// panel with the largest error estimate until the summed estimates plus the
/// fixed tail bound fit the budget. Panels at the depth cap are frozen with
/// their estimates kept in the total.
QuadratureResult adaptive(const Integrand& g, const std::vector<std::pair<double, double>>& roots,
                          const QuadratureSpec& spec, double tail_bound) {
    spec.validate();
    const GaussLegendreRule& high = gauss_legendre_rule(spec.gl_order);
    const GaussLegendreRule& low = gauss_legendre_rule(std::max(2, spec.gl_order / 2));

    std::size_t serial = 0;
    auto make_panel = [&](double a, double b, int depth) {
        Panel p;
        p.a = a;
        p.b = b;
        p.depth = depth;
        p.serial = serial++;
        p.value = apply_rule(high, g, a, b);
        const Complex low_value = apply_rule(low, g, a, b);
        p.err = std::abs(p.value - low_value);
        if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag()) || !std::isfinite(p.err)) {
            p.err = std::numeric_limits<double>::infinity();
        }
        return p;
    };

    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> active;
    std::vector<Panel> frozen;
    Complex total{0.0, 0.0};
    double active_err = 0.0;
    double frozen_err = 0.0;

    for (const auto& [a, b] : roots) {
        if (a == b) continue;
        Panel p = make_panel(a, b, 0);
        total += p.value;
        active_err += p.err;
        active.push(std::move(p));
    }

    std::size_t panel_count = active.size();
    auto budget = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

    while (active_err + frozen_err + tail_bound > budget() && !active.empty() && panel_count < max_total_panels) {
        Panel worst = active.top();
        active.pop();
        active_err -= worst.err;
        if (worst.depth >= spec.max_subdivisions || !(worst.err > 0.0)) {
            frozen_err += worst.err;
            frozen.push_back(std::move(worst));
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {  // width at rounding limit
            frozen_err += worst.err;
            frozen.push_back(std::move(worst));
            continue;
        }
        Panel left = make_panel(worst.a, mid, worst.depth + 1);
        Panel right = make_panel(mid, worst.b, worst.depth + 1);
        total += left.value + right.value - worst.value;
        active_err += left.err + right.err;
        active.push(std::move(left));
        active.push(std::move(right));
        ++panel_count;
    }

    // Deterministic final re-sum in left-to-right panel order; also clears the
    // drift the incremental updates accumulate.
    std::vector<Panel> panels = std::move(frozen);
    while (!active.empty()) {
        panels.push_back(active.top());
        active.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    Complex value{0.0, 0.0};
    double err = 0.0;
    for (const Panel& p : panels) {
        value += p.value;
        err += p.err;
    }

    QuadratureResult result;
    result.value = value;
    result.error_estimate = err;
    result.panels_used = static_cast<int>(panels.size());
    result.tail_bound = tail_bound;
    result.converged = err + tail_bound <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
    return result;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int order) {
    if (order < 2) throw std::invalid_argument("gauss_legendre_rule: order must be at least 2");
    std::lock_guard<std::mutex> lock(rule_cache_mutex);
    auto it = rule_cache.find(order);
    if (it == rule_cache.end()) it = rule_cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

Complex composite_gauss_legendre(const Integrand& g, double a, double b, int panels, int order) {
    if (panels < 1) throw std::invalid_argument("composite_gauss_legendre: need at least one panel");
    const GaussLegendreRule& rule = gauss_legendre_rule(order);
    Complex acc{0.0, 0.0};
    const double width = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        acc += apply_rule(rule, g, a + k * width, a + (k + 1) * width);
    }
    return acc;
}

double envelope_tail_mass(const DecayEnvelope& envelope, double radius) {
    envelope.validate();
    if (envelope.constant == 0.0) return 0.0;
    if (radius < envelope.valid_from) {
        throw std::invalid_argument("envelope_tail_mass: truncation radius lies inside the envelope's validity range");
    }
    const double a = envelope.power;
    const double m = envelope.log_power;
    const double lr = std::max(std::log(radius), 1.0);
    const double r1a = std::pow(radius, 1.0 - a);
    double integral;
    if (m == 0.0) {
        integral = r1a / (a - 1.0);
    } else if (m == 1.0) {
        integral = r1a * (lr / (a - 1.0) + 1.0 / ((a - 1.0) * (a - 1.0)));
    } else if (m == 2.0) {
        const double d = a - 1.0;
        integral = r1a * (lr * lr / d + 2.0 * lr / (d * d) + 2.0 / (d * d * d));
    } else {
        // log^m x <= (x/R)^(m eps) (log R + 1/eps)^m with eps = (a-1)/(2m)
        const double d = a - 1.0;
        integral = std::pow(lr + 2.0 * m / d, m) * r1a * 2.0 / d;
    }
    return envelope.constant * integral;
}

QuadratureResult integrate_interval(const Integrand& g, double a, double b, const QuadratureSpec& spec) {
    if (!(a < b)) throw std::invalid_argument("integrate_interval: need a < b");
    return adaptive(g, {{a, b}}, spec, 0.0);
}

QuadratureResult integrate_unit_interval(const Integrand& g, const QuadratureSpec& spec) {
    return integrate_interval(g, 0.0, 1.0, spec);
}

namespace {

/// Root panels for (half-)line integration. An inner breakpoint at
/// min(1, R/2) keeps the bisection chains short on both the unit scale and
/// the tail scale, so log-type endpoint singularities at 0 stay within the
/// depth cap even for very large R.
std::vector<std::pair<double, double>> positive_roots(double radius) {
    const double inner = std::min(1.0, 0.5 * radius);
    return {{0.0, inner}, {inner, radius}};
}

}  // namespace

QuadratureResult integrate_real_line(const Integrand& g, const QuadratureSpec& spec, const DecayEnvelope& envelope) {
    envelope.validate();
    if (spec.tail_radius < envelope.valid_from) {
        throw std::invalid_argument("integrate_real_line: tail_radius must be at least the envelope's valid_from");
    }
    const double tail = 2.0 * envelope_tail_mass(envelope, spec.tail_radius);
    std::vector<std::pair<double, double>> roots = positive_roots(spec.tail_radius);
    const std::size_t n = roots.size();
    for (std::size_t i = 0; i < n; ++i) roots.push_back({-roots[i].second, -roots[i].first});
    std::sort(roots.begin(), roots.end());
    return adaptive(g, roots, spec, tail);
}

QuadratureResult integrate_half_line(const Integrand& g, const QuadratureSpec& spec, const DecayEnvelope& envelope) {
    envelope.validate();
    if (spec.tail_radius < envelope.valid_from) {
        throw std::invalid_argument("integrate_half_line: tail_radius must be at least the envelope's valid_from");
    }
    const double tail = envelope_tail_mass(envelope, spec.tail_radius);
    return adaptive(g, positive_roots(spec.tail_radius), spec, tail);
}

QuadratureResult integrate_segment(const ComplexIntegrand& g, Complex z_end, const QuadratureSpec& spec) {
    QuadratureResult r = integrate_unit_interval([&](double s) { return g(z_end * s); }, spec);
    r.value *= z_end;
    r.error_estimate *= std::abs(z_end);
    return r;
}

}  // namespace cesaro
