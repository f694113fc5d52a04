#include "cesaro/operators.hpp"

#include <cmath>

namespace cesaro {

namespace {

const Complex i2pi{0.0, 2.0 * pi};

void check_off_cut(Complex w, const char* where) {
    if (w.imag() == 0.0 && w.real() <= 0.0) {
        throw std::domain_error(std::string(where) + ": log argument on the branch cut (-inf, 0]");
    }
}

}  // namespace

Complex principal_log_checked(Complex w) {
    check_off_cut(w, "principal_log_checked");
    return std::log(w);
}

Complex log1p_checked(Complex w) {
    const Complex s = 1.0 + w;
    check_off_cut(s, "log1p_checked");
    if (s == Complex{1.0, 0.0}) return w;
    const Complex d = s - 1.0;
    if (d == Complex{0.0, 0.0}) return std::log(s);
    return std::log(s) * (w / d);
}

Complex CesaroKernelImage::operator()(Complex zeta) const {
    const Complex zbar = anchor_.conj();
    const Complex w = zeta / zbar;
    if (zeta == Complex{0.0, 0.0}) return 1.0 / (i2pi * zbar);
    if (std::abs(w) < 1e-6) {
        // -Log(1-w)/w = 1 + w/2 + w^2/3 + O(w^3); the direct quotient cancels
        // catastrophically here.
        return (1.0 + w * 0.5 + w * w / 3.0) / (i2pi * zbar);
    }
    return -log1p_checked(-w) / (i2pi * zeta);
}

Complex AdjointKernelImage::operator()(Complex zeta) const {
    if (zeta == Complex{0.0, 0.0}) {
        throw std::domain_error("AdjointKernelImage: zeta = 0 is a genuine singularity");
    }
    const Complex zbar = anchor_.conj();
    return log1p_checked(-zbar / zeta) / (i2pi * zbar);
}

FunctionHandle::FunctionHandle(KernelExpansion expansion) : expansion_(std::move(expansion)) {
    const KernelExpansion& f = *expansion_;
    interior_ = [f](Complex w) { return f.at(w); };
    boundary_ = [f](double t) { return f.at(Complex{t, 0.0}); };
    DecayEnvelope env;
    env.constant = f.coefficient_mass() / pi;
    env.power = 1.0;
    env.log_power = 0.0;
    env.valid_from = std::max(2.0 * f.max_anchor_radius(), 1.0);
    envelope_ = env;
}

FunctionHandle FunctionHandle::black_box(InteriorEvaluator interior) {
    FunctionHandle h;
    h.interior_ = std::move(interior);
    return h;
}

FunctionHandle FunctionHandle::black_box(InteriorEvaluator interior, BoundaryEvaluator boundary,
                                         DecayEnvelope boundary_envelope) {
    FunctionHandle h;
    h.interior_ = std::move(interior);
    h.boundary_ = std::move(boundary);
    h.envelope_ = boundary_envelope;
    return h;
}

const KernelExpansion& FunctionHandle::expansion() const {
    if (!expansion_) throw std::logic_error("FunctionHandle: not a kernel expansion");
    return *expansion_;
}

Complex FunctionHandle::eval_interior(Complex w) const {
    if (!(w.imag() > 0.0)) {
        throw std::invalid_argument("FunctionHandle: evaluation point must lie in the open upper half-plane");
    }
    return interior_(w);
}

Complex FunctionHandle::boundary(double t) const {
    if (!boundary_) throw std::logic_error("FunctionHandle: no boundary evaluator declared");
    return boundary_(t);
}

const DecayEnvelope& FunctionHandle::boundary_envelope() const {
    if (!envelope_) throw std::logic_error("FunctionHandle: no boundary envelope declared");
    return *envelope_;
}

FunctionHandle cesaro_image(const KernelExpansion& f) {
    std::vector<std::pair<Complex, CesaroKernelImage>> images;
    images.reserve(f.terms().size());
    for (const auto& t : f.terms()) images.emplace_back(t.coefficient, CesaroKernelImage(t.anchor));
    auto eval = [images](Complex w) {
        Complex acc{0.0, 0.0};
        for (const auto& [c, img] : images) acc += c * img(w);
        return acc;
    };
    const double valid_from = std::max(2.0 * f.max_anchor_radius(), std::exp(2.0));
    DecayEnvelope env;
    env.power = 1.0;
    env.log_power = 1.0;
    env.valid_from = valid_from;
    env.constant = 0.0;
    for (const auto& t : f.terms()) {
        const double k = std::log1p(1.0 / t.anchor.abs()) + pi;
        env.constant += std::abs(t.coefficient) * (1.0 + k / std::log(valid_from)) / (2.0 * pi);
    }
    return FunctionHandle::black_box(eval, [eval](double t) { return eval(Complex{t, 0.0}); }, env);
}

FunctionHandle adjoint_image(const KernelExpansion& f) {
    std::vector<std::pair<Complex, AdjointKernelImage>> images;
    images.reserve(f.terms().size());
    for (const auto& t : f.terms()) images.emplace_back(t.coefficient, AdjointKernelImage(t.anchor));
    auto eval = [images](Complex w) {
        Complex acc{0.0, 0.0};
        for (const auto& [c, img] : images) acc += c * img(w);
        return acc;
    };
    DecayEnvelope env;
    env.power = 1.0;
    env.log_power = 0.0;
    env.valid_from = std::max(2.0 * f.max_anchor_radius(), 1.0);
    // |Log(1-w)| <= 2 log(2) |w| for |w| <= 1/2
    env.constant = 2.0 * std::log(2.0) * f.coefficient_mass() / (2.0 * pi);
    return FunctionHandle::black_box(eval, [eval](double t) { return eval(Complex{t, 0.0}); }, env);
}

namespace {

QuadratureResult require_converged(QuadratureResult r, const char* what) {
    if (!r.converged) {
        throw QuadratureError(std::string(what) + ": quadrature failed to converge (error estimate " +
                                  std::to_string(r.total_error()) + ")",
                              r);
    }
    return r;
}

}  // namespace

Complex cesaro_apply(const FunctionHandle& f, HalfPlanePoint z, const QuadratureSpec& spec) {
    const Complex zv = z.value();
    auto integrand = [&](double s) { return f.eval_interior(zv * s); };
    return require_converged(integrate_unit_interval(integrand, spec), "cesaro_apply").value;
}

Complex adjoint_apply(const FunctionHandle& f, HalfPlanePoint z, const QuadratureSpec& spec) {
    if (!f.has_boundary()) {
        throw std::invalid_argument("adjoint_apply: the function handle has no boundary evaluator");
    }
    const Complex zv = z.value();
    auto integrand = [&](double t) {
        // f(t) (1/t) Log(1 - t/z); log1p keeps the removable point t = 0 stable
        return f.boundary(t) * log1p_checked(-t / zv) / t;
    };
    const DecayEnvelope& fe = f.boundary_envelope();
    DecayEnvelope env = fe;
    env.valid_from = std::max({fe.valid_from, std::exp(1.0), 2.0 * z.abs()});
    const double k = std::log1p(1.0 / z.abs()) + pi;
    env.constant = fe.constant * (1.0 + k / std::max(std::log(env.valid_from), 1.0));
    env.power = fe.power + 1.0;
    env.log_power = fe.log_power + 1.0;
    QuadratureResult r = require_converged(integrate_real_line(integrand, spec, env), "adjoint_apply");
    return r.value / i2pi;
}

Complex cmu_apply(const MuParameter& mu, const FunctionHandle& f, HalfPlanePoint z, const QuadratureSpec& spec) {
    if (mu.mu == Complex{0.0, 0.0}) return cesaro_apply(f, z, spec);
    const Complex zv = z.value();
    const Complex m = mu.mu;
    auto integrand = [&](double s) {
        // s^mu = exp(mu log s) with real positive s: single-valued
        return std::exp(m * std::log(s)) * f.eval_interior(zv * s);
    };
    return require_converged(integrate_unit_interval(integrand, spec), "cmu_apply").value;
}

Complex cauchy_reconstruct(const FunctionHandle& f, HalfPlanePoint z, const QuadratureSpec& spec) {
    if (!f.has_boundary()) {
        throw std::invalid_argument("cauchy_reconstruct: the function handle has no boundary evaluator");
    }
    const Complex zv = z.value();
    auto integrand = [&](double t) { return f.boundary(t) / (t - zv); };
    const DecayEnvelope& fe = f.boundary_envelope();
    DecayEnvelope env = fe;
    env.valid_from = std::max(fe.valid_from, 2.0 * z.abs());
    env.constant = 2.0 * fe.constant;  // |1/(t-z)| <= 2/|t| once |t| >= 2|z|
    env.power = fe.power + 1.0;
    QuadratureResult r = require_converged(integrate_real_line(integrand, spec, env), "cauchy_reconstruct");
    return r.value / i2pi;
}

double pair_inner_closed(PairKind kind, double s, double t) {
    if (!(s > 0.0) || !(t > 0.0) || !std::isfinite(s) || !std::isfinite(t)) {
        throw std::invalid_argument("pair_inner_closed: s and t must be finite and positive");
    }
    const double log_st = std::log1p(s / t);  // log(1 + s/t)
    const double log_ts = std::log1p(t / s);  // log(1 + t/s)
    switch (kind) {
        case PairKind::CC:
            return (log_st / s + log_ts / t) / (2.0 * pi);
        case PairKind::CK:
            return log_ts / (2.0 * pi * t);
        case PairKind::CstarK:
            return log_st / (2.0 * pi * s);
        case PairKind::CstarCstar:
            return (log_ts / t + log_st / s) / (2.0 * pi);
    }
    throw std::logic_error("pair_inner_closed: unknown kind");
}

}  // namespace cesaro
