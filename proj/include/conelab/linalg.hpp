#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace conelab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Coordinate vector over an algebra's basis.
using Element = Vec;

namespace linalg {

/// Orthonormal basis (columns) of the right null space of `m`.
///
/// Singular values below `rel_tol * max(1, sigma_max)` count as zero. When
/// `gap_ratio` is given it receives sigma_{first nonzero} / sigma_{largest zero}
/// (infinity when either side is empty), which measures how clean the rank
/// decision was.
Mat null_space(const Mat& m, double rel_tol, double* gap_ratio = nullptr);

/// Orthonormal basis of the column span of `m` (rank-revealing, same threshold rule).
Mat column_span(const Mat& m, double rel_tol);

/// Largest singular value.
double op_norm(const Mat& m);
double op_norm(const CMat& m);

/// Matrix exponential (scaling and squaring with Pade approximants).
Mat expm(const Mat& m);

/// Commutator [a, b] = ab - ba.
inline Mat bracket(const Mat& a, const Mat& b) { return a * b - b * a; }

/// Least-squares residual of projecting `v` onto the column span of `basis`.
double projection_residual(const Mat& basis, const Vec& v);

/// Flatten a matrix column-major into a vector.
inline Vec flatten(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

}  // namespace linalg
}  // namespace conelab
