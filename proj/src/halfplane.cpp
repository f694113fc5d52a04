#include "cesaro/halfplane.hpp"

#include <algorithm>
#include <cmath>

namespace cesaro {

namespace {

bool anchor_less(const HalfPlanePoint& a, const HalfPlanePoint& b) {
    if (a.re() != b.re()) return a.re() < b.re();
    return a.im() < b.im();
}

}  // namespace

KernelExpansion::KernelExpansion(std::vector<Term> terms) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const Term& a, const Term& b) { return anchor_less(a.anchor, b.anchor); });
    for (const Term& t : terms) {
        if (!terms_.empty() && terms_.back().anchor == t.anchor) {
            terms_.back().coefficient += t.coefficient;
        } else {
            terms_.push_back(t);
        }
    }
    std::erase_if(terms_, [](const Term& t) { return t.coefficient == Complex{0.0, 0.0}; });
}

double KernelExpansion::max_anchor_radius() const {
    double r = 0.0;
    for (const Term& t : terms_) r = std::max(r, t.anchor.abs());
    return r;
}

double KernelExpansion::coefficient_mass() const {
    double m = 0.0;
    for (const Term& t : terms_) m += std::abs(t.coefficient);
    return m;
}

bool KernelExpansion::has_near_duplicate_anchors(double rel_tol) const {
    for (std::size_t j = 0; j < terms_.size(); ++j) {
        for (std::size_t k = j + 1; k < terms_.size(); ++k) {
            const double gap = std::abs(terms_[j].anchor.value() - terms_[k].anchor.value());
            const double scale = std::max(terms_[j].anchor.abs(), terms_[k].anchor.abs());
            if (gap < rel_tol * scale) return true;
        }
    }
    return false;
}

bool KernelExpansion::on_imaginary_axis() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.anchor.re() == 0.0; });
}

Complex KernelExpansion::at(Complex w) const {
    Complex acc{0.0, 0.0};
    for (const Term& t : terms_) acc += t.coefficient * ReproducingKernel(t.anchor).at(w);
    return acc;
}

KernelExpansion& KernelExpansion::operator+=(const KernelExpansion& other) {
    std::vector<Term> merged = terms_;
    merged.insert(merged.end(), other.terms_.begin(), other.terms_.end());
    *this = KernelExpansion(std::move(merged));
    return *this;
}

KernelExpansion& KernelExpansion::operator*=(Complex scale) {
    std::vector<Term> scaled = terms_;
    for (Term& t : scaled) t.coefficient *= scale;
    *this = KernelExpansion(std::move(scaled));
    return *this;
}

Complex expansion_inner(const KernelExpansion& f, const KernelExpansion& g) {
    Complex acc{0.0, 0.0};
    for (const auto& tf : f.terms()) {
        for (const auto& tg : g.terms()) {
            acc += tf.coefficient * std::conj(tg.coefficient) *
                   kernel_inner(ReproducingKernel(tf.anchor), ReproducingKernel(tg.anchor));
        }
    }
    return acc;
}

double expansion_norm_sq(const KernelExpansion& f) {
    // <f,f> is real up to roundoff; drop the imaginary residue.
    const double v = expansion_inner(f, f).real();
    return v < 0.0 ? 0.0 : v;
}

Eigen::MatrixXd gram_matrix(const std::vector<ImaginaryAxisPoint>& points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = j + 1; k < n; ++k) {
            if (points[j].s() == points[k].s()) {
                throw std::invalid_argument("gram_matrix: duplicate axis points (indices " + std::to_string(j) +
                                            ", " + std::to_string(k) + ") would make the Gram matrix singular");
            }
        }
    }
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            g(j, k) = 1.0 / (2.0 * pi * (points[j].s() + points[k].s()));
        }
    }
    return g;
}

}  // namespace cesaro
