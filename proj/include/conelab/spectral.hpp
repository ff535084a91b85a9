#pragma once

#include "conelab/algebra.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace conelab {

/// Process-wide default for SpectralOptions::merge_tol (initially 1e−7). Set once
/// at startup, e.g. from the command line; reads and writes are atomic.
double default_merge_tol() noexcept;
void set_default_merge_tol(double tol);

/// Tolerances used by the spectral routines.
struct SpectralOptions {
    /// Roots closer than merge_tol·(1 + max|λ|) are merged into one spectral value.
    double merge_tol = default_merge_tol();
    /// Krylov breakdown threshold relative to max(1, ‖L_x‖).
    double krylov_tol = 1e-10;
    /// Imaginary parts above this (relative) make a root non-real.
    double imag_tol = 1e-8;
    /// Relative reconstruction residual accepted for the idempotent frame.
    double reconstruction_tol = 1e-9;
};

/// Roots (with multiplicity, unmerged, possibly complex) of the minimal polynomial
/// of x, i.e. the eigenvalues of L_x on the subalgebra generated by e and x.
std::vector<std::complex<double>> minimal_polynomial_roots(const AlgebraSpec& a, const Element& x,
                                                           const SpectralOptions& opts = {});

/// Sorted distinct real spectral values of x after merging clustered roots.
/// Throws DegenerateSpectrumError on non-real roots. Does not require x to be
/// semisimple, so it works on degenerate (nilpotent-bearing) algebras too.
std::vector<double> spectral_values(const AlgebraSpec& a, const Element& x,
                                    const SpectralOptions& opts = {});

/// x = Σ λ_i f_i with f_i∘f_j = δ_ij f_i and Σ f_i = e.
struct SpectralDecomposition {
    std::vector<double> values;   ///< ascending
    std::vector<Element> frame;   ///< idempotent f_i paired with values[i]
    double residual = 0.0;        ///< ‖Σ λ_i f_i − x‖_τ
};

/// Spectral decomposition. Throws DegenerateSpectrumError (with the offending gap)
/// when the minimal polynomial has non-real roots, merged clusters, or the frame
/// does not reconstruct x.
SpectralDecomposition spectral(const AlgebraSpec& a, const Element& x,
                               const SpectralOptions& opts = {});

/// Σ f(λ_i) f_i. Throws DomainError naming the first spectral value where `f`
/// returns a non-finite result.
Element functional_calculus(const AlgebraSpec& a, const Element& x,
                            const std::function<double(double)>& f,
                            const SpectralOptions& opts = {});

/// Inverse; every |λ_i| must exceed tol·max(1, max|λ|).
Element inverse(const AlgebraSpec& a, const Element& x, double tol = 1e-12);

/// Square root; every λ_i must be ≥ −tol (small negatives clamp to zero).
Element sqrt(const AlgebraSpec& a, const Element& x, double tol = 1e-12);

/// Logarithm; every λ_i must exceed `tol`.
Element log(const AlgebraSpec& a, const Element& x, double tol = 1e-12);

/// x^t for real t; every λ_i must exceed `tol`.
Element real_power(const AlgebraSpec& a, const Element& x, double t, double tol = 1e-12);

}  // namespace conelab
