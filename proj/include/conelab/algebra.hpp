#pragma once

#include "conelab/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace conelab {

/**
 * @brief A finite-dimensional commutative algebra given by structure constants.
 *
 * The product is (x∘y)_k = Σ_{i,j} c[k][i][j] x_i y_j. Instances are immutable
 * after construction and safe to share between threads.
 *
 * Construction rejects structure constants that are not symmetric in (i, j),
 * an identity vector that does not act as a unit, and a trace form that is not
 * symmetric positive definite. The Jordan identity is deliberately not enforced
 * here: verify_jb() reports it, so perturbed fixtures stay constructible.
 */
class AlgebraSpec {
public:
    /// `structure[k](i, j)` holds c[k][i][j]. `trace_form` defaults to
    /// τ(x, y) = trace(L_{x∘y}). `realization`, when non-empty, holds one
    /// hermitian complex matrix per basis vector such that the product is the
    /// symmetrised matrix product.
    AlgebraSpec(std::string name, std::vector<Mat> structure, Vec identity,
                std::optional<Mat> trace_form = std::nullopt,
                std::vector<CMat> realization = {});

    const std::string& name() const noexcept { return name_; }
    int dim() const noexcept { return dim_; }

    /// c[k] as a dim×dim symmetric matrix.
    const Mat& structure(int k) const { return structure_[static_cast<std::size_t>(k)]; }
    const std::vector<Mat>& structure() const noexcept { return structure_; }

    const Vec& identity() const noexcept { return identity_; }
    const Mat& trace_form() const noexcept { return trace_form_; }

    /// Upper-triangular R with trace_form = RᵀR; maps coordinates to a
    /// τ-orthonormal frame.
    const Mat& trace_factor() const noexcept { return trace_factor_; }
    const Mat& trace_factor_inverse() const noexcept { return trace_factor_inv_; }

    /// Multiplication operator of the i-th basis vector.
    const Mat& basis_operator(int i) const { return basis_ops_[static_cast<std::size_t>(i)]; }

    double inner(const Vec& x, const Vec& y) const { return x.dot(trace_form_ * y); }
    double norm(const Vec& x) const;

    bool has_realization() const noexcept { return !realization_.empty(); }
    const std::vector<CMat>& realization() const noexcept { return realization_; }

    /// Throws InputError unless `x` has length dim().
    void check_element(const Vec& x, const char* what = "element") const;

private:
    std::string name_;
    int dim_;
    std::vector<Mat> structure_;
    Vec identity_;
    Mat trace_form_;
    Mat trace_factor_;
    Mat trace_factor_inv_;
    std::vector<Mat> basis_ops_;
    std::vector<CMat> realization_;
};

/// x∘y.
Element product(const AlgebraSpec& a, const Element& x, const Element& y);

/// Multiplication operator L_x with L_x y = x∘y.
Mat l_operator(const AlgebraSpec& a, const Element& x);

/// Quadratic representation U_x = 2L_x² − L_{x²}.
Mat quad_rep(const AlgebraSpec& a, const Element& x);

/// x^k via repeated multiplication by x (k ≥ 0, x^0 = e).
Element power(const AlgebraSpec& a, const Element& x, int k);

/// Default trace form trace(L_{x∘y}) for the given structure constants.
Mat default_trace_form(const std::vector<Mat>& structure);

/**
 * τ-orthonormal basis (columns) of the centre {z : [L_z, L_x] = 0 ∀x}.
 * The first column is e/‖e‖_τ.
 */
Mat center(const AlgebraSpec& a);

/// Max over basis vectors b_i of ‖[L_z, L_{b_i}]‖_F.
double center_residual(const AlgebraSpec& a, const Element& z);

/// Max over i + j ≤ max_total of ‖x^i∘x^j − x^{i+j}‖ / (1 + ‖x^{i+j}‖).
double power_associativity_residual(const AlgebraSpec& a, const Element& x, int max_total = 6);

/// Jordan identity residual ‖a∘(b∘a²) − (a∘b)∘a²‖ in the τ-norm.
double jordan_residual(const AlgebraSpec& a, const Element& x, const Element& y);

}  // namespace conelab
