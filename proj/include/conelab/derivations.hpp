#pragma once

#include "conelab/algebra.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace conelab {

/// Basis of the derivation algebra aut V, orthonormal under the pairing
/// ⟨D₁, D₂⟩ = tr(D₁* D₂) with adjoints taken in the trace form.
struct DerivationSpace {
    std::vector<Mat> basis;
    double tolerance = 1e-10;
    /// σ_{last kept} / σ_{first dropped} of the Leibniz system; below 10 the
    /// dimension verdict is ambiguous.
    double gap_ratio = 0.0;
    double leibniz_residual = 0.0;  ///< max over basis D and basis pairs
    double flow_residual = 0.0;     ///< max ‖exp(tD)e − e‖ over t ∈ {±1, ±0.1}
    int cone_violations = 0;        ///< sampled interior points mapped outside Ω
    std::vector<std::string> warnings;

    int dimension() const noexcept { return static_cast<int>(basis.size()); }
};

/// max over basis pairs ‖D(b_i∘b_j) − Db_i∘b_j − b_i∘Db_j‖.
double leibniz_residual(const AlgebraSpec& a, const Mat& d);

/// Kernel of the Leibniz system via SVD, orthonormalised in the trace-form
/// Frobenius pairing, with a flow cross-check exp(tD)(e) = e and exp(tD)(Ω) ⊂ Ω.
DerivationSpace derivation_space(const AlgebraSpec& a, double rel_tol = 1e-10, std::uint64_t seed = 0);

/// Trace-form Frobenius pairing tr(R X R⁻¹ (R Y R⁻¹)ᵀ) with τ = RᵀR.
double derivation_inner(const AlgebraSpec& a, const Mat& x, const Mat& y);

/// Coefficients of `m` over the basis (least squares) and the residual norm.
Vec derivation_coords(const DerivationSpace& ds, const Mat& m, double* residual = nullptr);

}  // namespace conelab
