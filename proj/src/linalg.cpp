#include "conelab/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <limits>

namespace conelab::linalg {

namespace {

struct RankSplit {
    Vec singular;
    Mat u;  // thin left singular vectors (when requested)
    Mat v;  // full right singular vectors (when requested)
    Eigen::Index rank = 0;
    double gap_ratio = std::numeric_limits<double>::infinity();
};

// Jacobi SVD for accuracy; tall inputs are first reduced to their square R factor
RankSplit rank_split(const Mat& m, double rel_tol, bool want_u, bool want_v) {
    RankSplit out;
    if (want_v && m.rows() > 2 * m.cols()) {
        const Eigen::HouseholderQR<Mat> qr(m);
        const Mat r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
        const Eigen::JacobiSVD<Mat> svd(r, Eigen::ComputeFullV);
        out.singular = svd.singularValues();
        out.v = svd.matrixV();
    } else {
        const unsigned opts = (want_u ? unsigned(Eigen::ComputeThinU) : 0u) | (want_v ? unsigned(Eigen::ComputeFullV) : 0u);
        const Eigen::JacobiSVD<Mat> svd(m, opts);
        out.singular = svd.singularValues();
        if (want_u) out.u = svd.matrixU();
        if (want_v) out.v = svd.matrixV();
    }
    const Vec& s = out.singular;
    const double smax = s.size() > 0 ? s(0) : 0.0;
    const double threshold = rel_tol * std::max(1.0, smax);
    while (out.rank < s.size() && s(out.rank) >= threshold) ++out.rank;
    if (out.rank > 0 && out.rank < s.size() && s(out.rank) > 0.0) {
        out.gap_ratio = s(out.rank - 1) / s(out.rank);
    }
    return out;
}

}  // namespace

Mat null_space(const Mat& m, double rel_tol, double* gap_ratio) {
    if (m.cols() == 0) return Mat(0, 0);
    if (m.rows() == 0) return Mat::Identity(m.cols(), m.cols());
    const auto split = rank_split(m, rel_tol, false, true);
    if (gap_ratio) *gap_ratio = split.gap_ratio;
    return split.v.rightCols(m.cols() - split.rank);
}

Mat column_span(const Mat& m, double rel_tol) {
    if (m.cols() == 0 || m.rows() == 0) return Mat(m.rows(), 0);
    const auto split = rank_split(m, rel_tol, true, false);
    return split.u.leftCols(split.rank);
}

double op_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Mat>(m).singularValues()(0);
}

double op_norm(const CMat& m) {
    if (m.size() == 0) return 0.0;
    return Eigen::JacobiSVD<CMat>(m).singularValues()(0);
}

Mat expm(const Mat& m) { return m.exp(); }

double projection_residual(const Mat& basis, const Vec& v) {
    if (basis.cols() == 0) return v.norm();
    Vec coeffs = basis.colPivHouseholderQr().solve(v);
    return (basis * coeffs - v).norm();
}

}  // namespace conelab::linalg
