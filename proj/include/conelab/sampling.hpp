#pragma once

#include "conelab/algebra.hpp"

#include <cstdint>
#include <random>

namespace conelab {

using Rng = std::mt19937_64;

/// Independent generator for task `index` under a master seed (splitmix64 mix).
Rng make_rng(std::uint64_t seed, std::uint64_t index = 0);

/// Standard Gaussian coordinates.
Element random_element(const AlgebraSpec& a, Rng& rng);

/// Gaussian vector with unit τ-norm.
Element random_unit_element(const AlgebraSpec& a, Rng& rng);

/// exp(a) for Gaussian a scaled to order-unit norm `spread`; strictly interior,
/// condition number at most e^{2·spread}.
Element random_interior(const AlgebraSpec& a, Rng& rng, double spread = 1.0);

}  // namespace conelab
