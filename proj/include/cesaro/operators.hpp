#pragma once

#include <functional>
#include <optional>
#include <string>

#include "cesaro/halfplane.hpp"
#include "cesaro/quadrature.hpp"

namespace cesaro {

/// Raised when an operator application cannot converge to the requested
/// tolerance; carries the best estimate.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, QuadratureResult partial)
        : std::runtime_error(what), partial_(partial) {}
    const QuadratureResult& partial() const { return partial_; }

  private:
    QuadratureResult partial_;
};

/// Principal log with an explicit guard: the argument must stay off the cut
/// (-inf, 0]. Violations raise std::domain_error instead of silently wrapping.
Complex principal_log_checked(Complex w);

/// log(1 + w) with the small-|w| rounding corrected (Kahan's construction),
/// principal branch, guarded like principal_log_checked.
Complex log1p_checked(Complex w);

/// Closed form of C k_z: ζ ↦ −(1/(2πiζ)) Log(1 − ζ/conj(z)). Defined on the
/// closed upper half-plane minus nothing: the ζ = 0 singularity is removable
/// and is evaluated by a short series below |ζ/conj(z)| = 1e-6.
class CesaroKernelImage {
  public:
    explicit CesaroKernelImage(HalfPlanePoint anchor) : anchor_(anchor) {}
    const HalfPlanePoint& anchor() const { return anchor_; }
    Complex operator()(Complex zeta) const;

  private:
    HalfPlanePoint anchor_;
};

/// Closed form of C* k_z: ζ ↦ (1/(2πi conj(z))) Log(1 − conj(z)/ζ), defined
/// for ζ in the upper half-plane and on the real axis away from 0.
class AdjointKernelImage {
  public:
    explicit AdjointKernelImage(HalfPlanePoint anchor) : anchor_(anchor) {}
    const HalfPlanePoint& anchor() const { return anchor_; }
    Complex operator()(Complex zeta) const;

  private:
    HalfPlanePoint anchor_;
};

inline CesaroKernelImage cesaro_on_kernel(HalfPlanePoint anchor) { return CesaroKernelImage(anchor); }
inline AdjointKernelImage adjoint_on_kernel(HalfPlanePoint anchor) { return AdjointKernelImage(anchor); }

/// A holomorphic function on C+, either a kernel expansion (closed forms
/// available throughout) or a black box. Black boxes that should take part in
/// boundary integrals must carry a boundary evaluator and a radial decay
/// envelope for it; evaluators must be safe for concurrent invocation.
class FunctionHandle {
  public:
    using InteriorEvaluator = std::function<Complex(Complex)>;
    using BoundaryEvaluator = std::function<Complex(double)>;

    FunctionHandle(KernelExpansion expansion);  // implicit by design: expansions are the common case

    static FunctionHandle black_box(InteriorEvaluator interior);
    static FunctionHandle black_box(InteriorEvaluator interior, BoundaryEvaluator boundary,
                                    DecayEnvelope boundary_envelope);

    bool is_expansion() const { return expansion_.has_value(); }
    const KernelExpansion& expansion() const;

    bool has_boundary() const { return static_cast<bool>(boundary_); }

    Complex eval(HalfPlanePoint z) const { return interior_(z.value()); }
    Complex eval_interior(Complex w) const;  // requires Im w > 0
    Complex boundary(double t) const;

    /// Envelope of the boundary trace (auto-derived for expansions).
    const DecayEnvelope& boundary_envelope() const;

  private:
    FunctionHandle() = default;
    std::optional<KernelExpansion> expansion_;
    InteriorEvaluator interior_;
    BoundaryEvaluator boundary_;
    std::optional<DecayEnvelope> envelope_;
};

/// C f, with boundary evaluator and envelope derived from the closed forms.
FunctionHandle cesaro_image(const KernelExpansion& f);
/// C* f, likewise.
FunctionHandle adjoint_image(const KernelExpansion& f);

/// (Cf)(z) = ∫_0^1 f(zs) ds, by quadrature. Throws QuadratureError on
/// non-convergence.
Complex cesaro_apply(const FunctionHandle& f, HalfPlanePoint z, const QuadratureSpec& spec);

/// (C*f)(z) = (1/2πi) ∫_R f(t) (1/t) Log(1 − t/z) dt over the boundary.
Complex adjoint_apply(const FunctionHandle& f, HalfPlanePoint z, const QuadratureSpec& spec);

/// Exponent parameter of the generalized operator C_mu; requires
/// Re mu > -(p-1)/p for the working exponent p.
struct MuParameter {
    Complex mu;
    double p;

    explicit MuParameter(Complex mu_value, double exponent_p = 2.0) : mu(mu_value), p(exponent_p) {
        if (!(p > 1.0)) throw std::invalid_argument("MuParameter: requires p > 1");
        if (!(mu.real() > -(p - 1.0) / p)) {
            throw std::invalid_argument("MuParameter: requires Re mu > -(p-1)/p");
        }
    }
};

/// (C_mu f)(z) = ∫_0^1 s^mu f(zs) ds; mu = 0 reduces bitwise to cesaro_apply.
Complex cmu_apply(const MuParameter& mu, const FunctionHandle& f, HalfPlanePoint z, const QuadratureSpec& spec);

/// Interior value from boundary data by the Cauchy integral
/// f(z) = (1/2πi) ∫_R f(t)/(t − z) dt.
Complex cauchy_reconstruct(const FunctionHandle& f, HalfPlanePoint z, const QuadratureSpec& spec);

/// The closed-form inner products on the imaginary axis:
///   CC:         <C k_is,  C k_it>  = (1/2π)[(1/s)log(1+s/t) + (1/t)log(1+t/s)]
///   CK:         <C k_is,  k_it>    = (1/2πt) log(1+t/s)
///   CstarK:     <C* k_is, k_it>    = (1/2πs) log(1+s/t)
///   CstarCstar: <C* k_is, C* k_it> = (1/2π)[(1/t)log(1+t/s) + (1/s)log(1+s/t)]
enum class PairKind { CC, CK, CstarK, CstarCstar };

double pair_inner_closed(PairKind kind, double s, double t);

}  // namespace cesaro
