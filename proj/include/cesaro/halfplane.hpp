#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace cesaro {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// A point of the open upper half-plane (Im > 0, enforced at construction).
class HalfPlanePoint {
  public:
    HalfPlanePoint(double re, double im) : re_(re), im_(im) {
        if (!(im > 0.0) || !std::isfinite(re) || !std::isfinite(im)) {
            throw std::invalid_argument("HalfPlanePoint: imaginary part must be finite and strictly positive");
        }
    }
    explicit HalfPlanePoint(Complex z) : HalfPlanePoint(z.real(), z.imag()) {}

    double re() const { return re_; }
    double im() const { return im_; }
    Complex value() const { return {re_, im_}; }
    Complex conj() const { return {re_, -im_}; }
    double abs() const { return std::abs(value()); }

    friend bool operator==(const HalfPlanePoint& a, const HalfPlanePoint& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

  private:
    double re_;
    double im_;
};

/// The point i*s on the positive imaginary axis, s > 0.
class ImaginaryAxisPoint {
  public:
    explicit ImaginaryAxisPoint(double s) : s_(s) {
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw std::invalid_argument("ImaginaryAxisPoint: s must be finite and strictly positive");
        }
    }

    double s() const { return s_; }
    HalfPlanePoint point() const { return {0.0, s_}; }

    friend bool operator==(const ImaginaryAxisPoint& a, const ImaginaryAxisPoint& b) {
        return a.s_ == b.s_;
    }

  private:
    double s_;
};

/// Reproducing kernel of H^2(C+): k_z(w) = (1/2πi) / (conj(z) − w).
class ReproducingKernel {
  public:
    explicit ReproducingKernel(HalfPlanePoint anchor) : anchor_(anchor) {}

    const HalfPlanePoint& anchor() const { return anchor_; }

    /// Evaluate at any w != conj(anchor). Covers interior points and the
    /// real-axis boundary trace; the denominator cannot vanish for Im w >= 0.
    Complex at(Complex w) const {
        const Complex i2pi{0.0, 2.0 * pi};
        return 1.0 / (i2pi * (anchor_.conj() - w));
    }

  private:
    HalfPlanePoint anchor_;
};

inline ReproducingKernel kernel_at(const ImaginaryAxisPoint& p) { return ReproducingKernel(p.point()); }

/// k_anchor evaluated at an interior point.
inline Complex kernel_eval(const ReproducingKernel& k, const HalfPlanePoint& w) { return k.at(w.value()); }

/// <k_a, k_b> = k_a(anchor of b), by the reproducing property.
inline Complex kernel_inner(const ReproducingKernel& a, const ReproducingKernel& b) {
    return kernel_eval(a, b.anchor());
}

/// Finite combination Σ a_j k_{z_j}. Terms with exactly equal anchors are
/// merged at construction (coefficients added) and exact-zero coefficients
/// dropped, so the empty expansion is the zero function. Terms are kept in a
/// canonical order (anchor re, then im) so downstream sums are deterministic.
class KernelExpansion {
  public:
    struct Term {
        Complex coefficient;
        HalfPlanePoint anchor;
    };

    KernelExpansion() = default;
    explicit KernelExpansion(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Largest |anchor| over the terms (0 for the zero function).
    double max_anchor_radius() const;

    /// Sum of |coefficient| over the terms.
    double coefficient_mass() const;

    /// True if some pair of distinct anchors is closer than rel_tol relative
    /// to its scale. Such expansions are legal but ill-conditioned for Gram
    /// work; the spectral module guards on this.
    bool has_near_duplicate_anchors(double rel_tol = 1e-8) const;

    bool on_imaginary_axis() const;

    /// Σ a_j k_{z_j}(w) for any w != every conj(z_j) (interior or boundary).
    Complex at(Complex w) const;

    KernelExpansion& operator+=(const KernelExpansion& other);
    KernelExpansion& operator*=(Complex scale);
    friend KernelExpansion operator+(KernelExpansion a, const KernelExpansion& b) { return a += b; }
    friend KernelExpansion operator*(Complex scale, KernelExpansion f) { return f *= scale; }

  private:
    std::vector<Term> terms_;
};

/// Σ a_j kernel_eval(k_{z_j}, w); the zero expansion evaluates to 0.
inline Complex expansion_eval(const KernelExpansion& f, const HalfPlanePoint& w) { return f.at(w.value()); }

/// Closed-form inner product of two expansions via the reproducing property.
Complex expansion_inner(const KernelExpansion& f, const KernelExpansion& g);

/// ||f||^2 = <f, f>, closed form. Always real and nonnegative.
double expansion_norm_sq(const KernelExpansion& f);

/// Gram matrix G[j][k] = <k_{is_k}, k_{is_j}> = 1/(2π(s_j+s_k)) for distinct
/// axis points. Real symmetric positive definite; duplicate points are
/// rejected (the matrix would be singular).
Eigen::MatrixXd gram_matrix(const std::vector<ImaginaryAxisPoint>& points);

}  // namespace cesaro
