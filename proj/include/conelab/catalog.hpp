#pragma once

#include "conelab/algebra.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace conelab {

// Standard Euclidean Jordan algebras. Hermitian matrix algebras use the
// orthonormal basis {E_ii} ∪ {(E_ij + E_ji)/√2, i(E_ij − E_ji)/√2, ...}
// (i < j, lexicographic), with product (xy + yx)/2.

/// Real symmetric n×n matrices; dim n(n+1)/2.
AlgebraSpec sym_real(int n);

/// Complex hermitian n×n matrices; dim n².
AlgebraSpec herm_complex(int n);

/// Quaternionic hermitian n×n matrices realised inside 2n×2n complex matrices; dim 2n² − n.
AlgebraSpec herm_quat(int n);

/// Spin factor R ⊕ R^k with (s, u)∘(t, v) = (st + ⟨u, v⟩, sv + tu); dim k + 1.
AlgebraSpec spin_factor(int k);

/// R^n with the pointwise product; dim n.
AlgebraSpec abelian(int n);

/// Direct sum with block structure constants.
AlgebraSpec direct_sum(const AlgebraSpec& a, const AlgebraSpec& b);

/// Catalog lookup by name with integer parameters (n or k). `direct_sum` is not
/// reachable here; use parse_catalog_selector for nested selectors.
AlgebraSpec catalog(std::string_view name, const std::vector<int>& params);

/// Parses selectors such as "herm_complex(2)", "spin(4)" or
/// "direct_sum(herm_complex(2),abelian(1))".
AlgebraSpec parse_catalog_selector(std::string_view selector);

/// Names accepted by catalog().
std::vector<std::string> catalog_names();

/// Builds an algebra from hermitian basis matrices closed under the symmetrised
/// product. The basis must be orthogonal under Re tr(XY).
AlgebraSpec from_hermitian_basis(std::string name, std::vector<CMat> basis);

/// Matrix Σ z_k B_k for complex coordinates over the realization basis.
CMat to_matrix(const AlgebraSpec& a, const CVec& coords);

/// Complex coordinates of `m` over the realization basis; `residual` receives the
/// Frobenius norm of the part of `m` outside the span.
CVec matrix_coords(const AlgebraSpec& a, const CMat& m, double* residual = nullptr);

}  // namespace conelab
