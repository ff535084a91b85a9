#pragma once

#include "conelab/orientation.hpp"

#include <cstdint>
#include <memory>

namespace conelab {

/**
 * @brief Complexification V ⊕ iV with product ab = L_a b − i J(a) b, extended
 * complex-bilinearly, and involution (x + iy)* = x − iy.
 *
 * Elements are complex coordinate vectors over the basis of V. The product is
 * stored through the left multiplication operators Λ_k = L_{b_k} − i J(b_k).
 */
class ComplexAlgebra {
public:
    ComplexAlgebra(std::shared_ptr<const AlgebraSpec> base, Orientation j);

    const AlgebraSpec& base() const noexcept { return *base_; }
    const Orientation& orientation() const noexcept { return j_; }
    int dim() const noexcept { return base_->dim(); }

    /// Left multiplication by basis vector b_k.
    const CMat& left(int k) const { return left_[static_cast<std::size_t>(k)]; }

    /// λ(z) = Σ z_k Λ_k.
    CMat lambda(const CVec& z) const;

    /// λ(z) in τ-orthonormal coordinates, so the operator norm is the C*-norm.
    CMat lambda_orthonormal(const CVec& z) const;

    CVec product(const CVec& z, const CVec& w) const { return lambda(z) * w; }
    CVec unit() const { return base_->identity().cast<std::complex<double>>(); }
    static CVec star(const CVec& z) { return z.conjugate(); }

    /// ‖λ(z)‖_op.
    double norm(const CVec& z) const;

private:
    std::shared_ptr<const AlgebraSpec> base_;
    Orientation j_;
    std::vector<CMat> left_;
};

/// Builds the complexification. With `check` set, verify_orientation must pass at
/// 1e−8 (PreconditionError otherwise); unchecked construction is meant for
/// sensitivity experiments with perturbed J.
ComplexAlgebra complexify(const AlgebraSpec& a, const Orientation& j, bool check = true);

/// Max over basis triples of ‖(xy)z − x(yz)‖ in the trace-form norm.
double associativity_residual(const ComplexAlgebra& c);

struct CstarReport {
    int samples = 0;
    double cstar_identity = 0.0;   ///< max |‖λ(z*z)‖ − ‖λ(z)‖²| / (1 + ‖λ(z)‖²)
    double star_isometry = 0.0;    ///< max |‖λ(z*)‖ − ‖λ(z)‖| / (1 + ‖λ(z)‖)
    double adjoint = 0.0;          ///< max ‖λ(z*) − λ(z)†‖ / (1 + ‖λ(z)‖)
    double hermitian_square = 0.0; ///< max ‖Im(z*z)‖ / (1 + ‖z*z‖)
    double min_square_spectrum = 0.0;  ///< min(0, smallest normalised spectral value of z*z)
    double unit_norm = 0.0;        ///< |‖λ(e)‖ − 1|
    double tolerance = 1e-7;
    bool pass = false;
};

/// C*-identity and positivity of z*z in the left-regular representation.
/// Throws PreconditionError if the associativity residual exceeds 1e−8 and
/// StructuralError if λ is not faithful.
CstarReport cstar_identity_check(const ComplexAlgebra& c, int samples = 100, std::uint64_t seed = 0,
                                 double tol = 1e-7);

struct RoundtripReport {
    int square_samples = 0;
    int square_positive = 0;      ///< z*z hermitian with Interior/Boundary real part
    int factor_samples = 0;
    double factor_residual = 0.0; ///< max ‖(x^{1/2})*(x^{1/2}) − x‖ / (1 + ‖x‖)
    double agreement_rate = 0.0;
    bool pass = false;
};

/// {z*z} lands in the closed cone, and interior x factor as z*z with z = x^{1/2}.
RoundtripReport positive_cone_roundtrip(const ComplexAlgebra& c, int samples = 1000, std::uint64_t seed = 0);

}  // namespace conelab
