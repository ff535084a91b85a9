#pragma once

#include "conelab/derivations.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace conelab {

/**
 * @brief Linear map J : V → L(V), J(a) = Σ_k (coeffs.row(k) · a) basis[k].
 *
 * For an orientation at the identity the basis is an orthonormal derivation
 * basis; a transported orientation carries the conjugated basis g⁻¹ D_k g and
 * its own base point.
 */
class Orientation {
public:
    Orientation() = default;
    Orientation(std::shared_ptr<const std::vector<Mat>> basis, Mat coeffs, Element base_point, double residual = 0.0);

    /// J(a) as a dim×dim matrix.
    Mat operator()(const Element& a) const;

    /// J(a)(b).
    Element apply(const Element& a, const Element& b) const { return (*this)(a) * b; }

    Orientation scaled(double s) const;

    const std::vector<Mat>& basis() const { return *basis_; }
    const std::shared_ptr<const std::vector<Mat>>& shared_basis() const noexcept { return basis_; }
    const Mat& coeffs() const noexcept { return coeffs_; }
    const Element& base_point() const noexcept { return base_point_; }
    double residual() const noexcept { return residual_; }
    void set_residual(double r) noexcept { residual_ = r; }
    int dim() const noexcept { return static_cast<int>(base_point_.size()); }

private:
    std::shared_ptr<const std::vector<Mat>> basis_;
    Mat coeffs_;
    Element base_point_;
    double residual_ = 0.0;
};

/// Shared copy of a derivation basis, for building orientations over it.
std::shared_ptr<const std::vector<Mat>> share_basis(const DerivationSpace& ds);

/// Zero orientation over a derivation basis.
Orientation zero_orientation(const AlgebraSpec& a, const DerivationSpace& ds);

struct OrientationReport {
    double quadratic = 0.0;     ///< max ‖J(J(b_i)b_j) − [L_{b_j}, L_{b_i}]‖
    double antisymmetry = 0.0;  ///< max ‖J(b_i)b_j + J(b_j)b_i‖
    double center_kernel = 0.0; ///< max ‖J(z)‖ over a centre basis
    double bracket = 0.0;       ///< max ‖[L_{b_i}, L_{b_j}] − [J(b_j), J(b_i)]‖
    double tolerance = 0.0;
    bool pass = false;

    double max_residual() const;
};

/// Checks the orientation equation and the three derived identities on basis
/// pairs. Throws InputError when some J(b_i) is not a derivation.
OrientationReport verify_orientation(const AlgebraSpec& a, const Orientation& j, double tol);

/// Orientation from its values J(b_i) on the basis. Each image is projected on the
/// derivation basis; throws InputError if one leaves the span (residual > 1e−8).
Orientation orientation_from_images(const AlgebraSpec& a, const DerivationSpace& ds, const std::vector<Mat>& images);

/// J(a)(x) = (i/2)(ax − xa) read through the algebra's hermitian matrix
/// realization. Throws InputError for algebras without a realization or whose
/// commutator image leaves the hermitian span (e.g. sym_real, herm_quat).
Orientation canonical_orientation(const AlgebraSpec& a, const DerivationSpace& ds);

enum class Verdict { Found, NotFound, Inconclusive };

const char* to_string(Verdict v);

struct SolveOptions {
    int restarts = 64;
    int max_iter = 400;
    double tol_success = 1e-9;
    double tol_fail = 1e-4;
    std::uint64_t seed = 0;
    bool impose_antisymmetry = true;  ///< also imposes J|_centre = 0
    int threads = 0;                  ///< 0: CONELAB_THREADS or hardware concurrency
};

struct SolveResult {
    Verdict verdict = Verdict::NotFound;
    std::optional<Orientation> orientation;  ///< set when Found
    double best_residual = 0.0;
    int best_restart = -1;
    int restarts_run = 0;
    int free_parameters = 0;
    std::string obstruction;  ///< set when J = 0 was forced and fails, with the exact bracket norm
};

/**
 * Levenberg–Marquardt search for J with J(J(a)b) = [L_b, L_a].
 *
 * Restarts run in deterministic batches of eight; the search stops after the
 * first batch containing a Found candidate, and ties break on the lowest
 * restart index, so the result depends only on (algebra, options.seed).
 */
SolveResult solve_orientation(const AlgebraSpec& a, const DerivationSpace& ds, const SolveOptions& opts = {});

/// Max-norm orientation residual for coefficient matrix α (d×dim) over `ds`.
double orientation_residual(const AlgebraSpec& a, const DerivationSpace& ds, const Mat& coeffs);

/// Extension of a map defined on the cone: J(v + μe) − J(μe) with μ = 2‖v‖_e.
/// Samples additivity and positive homogeneity on cone pairs first and throws
/// NotAdditiveError on violation (or when μ and 2μ disagree).
Mat extend_cone_map(const AlgebraSpec& a, const std::function<Mat(const Element&)>& j_on_cone, const Element& v,
                    std::uint64_t seed = 0);

struct TransportResult {
    Orientation transported;  ///< J′(a) = g⁻¹ J(g a) g with base point u
    Mat g;                    ///< g(u) = e
    double fixes_base_residual = 0.0;  ///< max ‖exp(t J′(b_i)) u − u‖
    double constraint_residual = 0.0;  ///< max ‖J′(J′(b_i)b_j) − [𝓛_{b_j}, 𝓛_{b_i}]‖
};

/// Moves an orientation at e to base point u. Throws PreconditionError unless u
/// is interior.
TransportResult transport_orientation(const AlgebraSpec& a, const Orientation& j, const Element& u);

}  // namespace conelab
