#pragma once

#include "conelab/algebra.hpp"

#include <cstdint>

namespace conelab {

enum class Positivity { Interior, Boundary, Outside };

const char* to_string(Positivity p);

/// inf{λ : λ·base ± x ∈ Ω̄}, i.e. max |spectral values of U_{base^{-1/2}} x|.
/// Throws PreconditionError unless base is interior.
double order_unit_seminorm(const AlgebraSpec& a, const Element& base, const Element& x);

/// ‖x‖_e = max |spectral values of x|.
double order_unit_norm(const AlgebraSpec& a, const Element& x);

/// Spectral classification against the cone, tolerance 1e−9·(1 + ‖x‖_e).
Positivity positivity(const AlgebraSpec& a, const Element& x);

struct ProperReport {
    bool proper = true;
    Mat kernel;  ///< columns span {x : ‖x‖_e = 0}
};

/// Determines the kernel of ‖·‖_e. Candidates come from the radical of
/// trace(L_{x∘y}); each candidate basis vector is then probed for an all-zero
/// spectrum.
ProperReport properness_check(const AlgebraSpec& a);

enum class AmbientNorm { Trace, OrderUnit };

struct NormalityEstimate {
    double gamma = 0.0;           ///< sampled max ‖x‖/‖y‖ over 0 ≤ x ≤ y
    double inner_radius = 0.0;    ///< sampled r with e − B(0, r) ⊂ Ω
    double lower = 0.0;           ///< sampled min ‖x‖_e / ‖x‖
    double upper = 0.0;           ///< sampled max ‖x‖_e / ‖x‖
    double bound_violation = 0.0; ///< max (‖v‖_e − (2/r)‖v‖)₊
    int directions = 0;
    int pair_samples = 0;
};

/// Normality constant γ and inner radius r of the cone in the chosen ambient norm
/// (Euclidean under the trace form, or ‖·‖_e itself).
NormalityEstimate normality_estimate(const AlgebraSpec& a, std::uint64_t seed,
                                     AmbientNorm norm = AmbientNorm::Trace, int directions = 200,
                                     int bisection_steps = 40, int pair_samples = 200);

/// f(v) = τ(v, p) for a positive p normalised so that f(e) = 1.
struct StateFunctional {
    Vec coords;
    double operator()(const AlgebraSpec& a, const Element& v) const { return a.inner(v, coords); }
};

struct StateSeparation {
    bool positive = false;
    double min_value = 0.0;
    StateFunctional witness;  ///< state attaining min_value
    int states = 0;
};

/**
 * Tests x against sampled states f_q(v) = τ(U_q v, e)/τ(U_q e, e).
 *
 * `sample_count` random q are drawn; one further q is refined by repeated
 * squaring of (s·e − x), which concentrates U_q e on the bottom of the spectrum
 * of x using products only. Returns positive iff every sampled f(x) > 0.
 * Throws PreconditionError when the cone is not proper.
 */
StateSeparation state_separation(const AlgebraSpec& a, const Element& x, int sample_count, std::uint64_t seed);

struct OrderReport {
    int seminorm_kernel_dim = 0;
    double normality_gamma = 0.0;
    double inner_radius_r = 0.0;
    int state_sample_size = 0;
    int points = 0;
    int agreements = 0;
    int disagreements = 0;
    double triangle_residual = 0.0;     ///< max (‖x+y‖_e − ‖x‖_e − ‖y‖_e)₊
    double square_norm_residual = 0.0;  ///< max |‖x²‖_e − ‖x‖_e²| / (1 + ‖x‖_e²)
    double lemma_bound_violation = 0.0;
};

/// Aggregate order-structure report: properness, normality, and agreement of the
/// spectral and state-based positivity tests on `points` sampled elements.
OrderReport order_report(const AlgebraSpec& a, std::uint64_t seed, int points = 1000, int states = 32);

}  // namespace conelab
