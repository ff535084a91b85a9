#pragma once

#include "conelab/complex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace conelab {

/**
 * @brief A cone V inside an ambient Ṽ as the fixed space of an involutive
 * isometry φ, together with an orientation on Ṽ.
 *
 * `fixed` holds an ambient-coordinate basis of V (columns). `sub` is V as an
 * algebra in that basis; its identity is the ambient identity.
 */
struct ExtensionSpec {
    std::shared_ptr<const AlgebraSpec> ambient;
    Mat phi;
    Mat fixed;
    Orientation orientation;
    std::shared_ptr<const AlgebraSpec> sub;
};

/// Validates φ² = id (1e−12), ‖φx‖_e = ‖x‖_e on samples and φe = e, then builds
/// the fixed space. When `fixed` is given it must span ker(φ − id); otherwise an
/// orthonormal kernel basis is used. Throws InputError on violation and
/// StructuralError when the fixed space is not closed under the Jordan product.
ExtensionSpec make_extension(const AlgebraSpec& ambient, const Mat& phi, const Orientation& j,
                             std::optional<Mat> fixed = std::nullopt, std::string sub_name = "");

/// sym_real(n) inside herm_complex(n), φ = transpose, canonical orientation.
/// The fixed basis follows the sym_real(n) basis order.
ExtensionSpec transpose_extension(int n);

/// herm_quat(n) inside herm_complex(2n), φ(x) = Q x̄ Q⁻¹ with Q = [[0, I], [−I, 0]].
/// The fixed basis follows the herm_quat(n) basis order.
ExtensionSpec quaternionic_extension(int n);

/// φ = id on a with orientation j; V = Ṽ.
ExtensionSpec identity_extension(const AlgebraSpec& a, const Orientation& j);

struct ExtensionReport {
    double phi_involution = 0.0;
    double phi_isometry = 0.0;
    double jordan_subalgebra = 0.0;  ///< max ‖φ(a∘b) − φa∘φb‖ and closure of V
    int membership_samples = 0;
    int membership_mismatches = 0;   ///< ambient vs intrinsic positivity verdicts
    double compatibility = 0.0;      ///< max ‖φ(J(a)b) − J(φb)(φa)‖ / (1 + ‖a‖‖b‖)
    std::vector<std::string> violations;
    double tolerance = 1e-8;
    bool pass = false;
};

ExtensionReport extension_verify(const ExtensionSpec& e, int samples = 200, std::uint64_t seed = 0,
                                 double tol = 1e-8);

/// Real algebra generated by V inside the complexification of Ṽ.
struct RealReconstruction {
    Mat basis;                    ///< columns in R^{2N}: (Re, Im) of complex coordinates
    std::vector<Mat> structure;   ///< structure[k](i, j): coefficient of basis k in basis_i·basis_j
    Mat hermitian_part;           ///< ambient real coordinates of {z ∈ R(V) : z* = z}
    int closure_steps = 0;
    double closure_residual = 0.0;      ///< products of basis pairs outside the span
    double involution_residual = 0.0;   ///< conjugates of basis vectors outside the span
    double hermitian_match = 0.0;       ///< distance between hermitian part and V (both ways)
    double antiautomorphism = 0.0;      ///< max ‖ψ(zw) − ψ(w)ψ(z)‖ / (1 + ‖z‖‖w‖)
    double cstar_identity = 0.0;        ///< restricted left-regular representation
    int samples = 0;
    bool hermitian_part_is_v = false;
    bool pass = false;

    int dim() const noexcept { return static_cast<int>(basis.cols()); }
};

/// Span closure S_{k+1} = span(S_k ∪ S_k·S_k) from S_0 = V, rank threshold 1e−10.
/// Throws PreconditionError unless extension_verify passes.
RealReconstruction real_reconstruct(const ExtensionSpec& e, int samples = 1000, std::uint64_t seed = 0,
                                    double tol = 1e-9);

/// Complex coordinates of column j of a real reconstruction basis.
CVec to_complex(const Mat& basis, int j);

struct ReversibilityReport {
    double residual = 0.0;    ///< max distance of a₁a₂a₃a₄ + a₄a₃a₂a₁ from span(sub)
    int quadruples = 0;
    bool reversible = false;
};

/// Checks every symmetrised 4-product of basis vectors of `sub` (ambient real
/// coordinates, columns) for membership in span(sub).
ReversibilityReport reversibility_check(const ComplexAlgebra& c, const Mat& sub, double tol = 1e-8);

}  // namespace conelab
