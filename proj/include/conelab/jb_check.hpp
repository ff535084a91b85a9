#pragma once

#include "conelab/algebra.hpp"

#include <cstdint>

namespace conelab {

/// Maximal residuals of the JB-algebra axioms over sampled pairs (a, b).
///
/// Norm axioms are evaluated in the order-unit norm ‖·‖_e. When the algebraic
/// identities already fail, spectra of sampled elements may be non-real; such
/// samples are then counted in `spectral_failures` instead of throwing.
struct JbReport {
    double commutativity = 0.0;
    double jordan_identity = 0.0;
    double power_associativity = 0.0;
    double submultiplicativity = 0.0;  ///< max (‖a∘b‖ − ‖a‖‖b‖)₊
    double square_norm = 0.0;          ///< max |‖a²‖ − ‖a‖²|
    double square_monotone = 0.0;      ///< max (‖a²‖ − ‖a² + b²‖)₊
    int samples = 0;
    int spectral_failures = 0;
    double tolerance = 1e-8;
    bool pass = false;

    double max_residual() const;
};

/// Checks the JB axioms on `sample_count` seeded pairs. Algebraic identities
/// use τ-unit pairs, and the Jordan identity is also probed on basis pairs and
/// refined by a seeded local search. Norm axioms use pairs rescaled to
/// ‖a‖_e = ‖b‖_e = 1. Degenerate-spectrum errors propagate when the algebraic
/// identities hold (the algebra claims to be Jordan, so a bad spectrum is a real fault).
JbReport verify_jb(const AlgebraSpec& a, int sample_count, std::uint64_t seed, double tol = 1e-8);

}  // namespace conelab
