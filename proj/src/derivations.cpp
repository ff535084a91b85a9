#include "conelab/derivations.hpp"

#include "conelab/errors.hpp"
#include "conelab/order.hpp"
#include "conelab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace conelab {

double leibniz_residual(const AlgebraSpec& a, const Mat& d) {
    double worst = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = i; j < a.dim(); ++j) {
            const Vec pij = a.basis_operator(i).col(j);
            const Vec r = d * pij - a.basis_operator(j) * d.col(i) - a.basis_operator(i) * d.col(j);
            worst = std::max(worst, r.norm());
        }
    }
    return worst;
}

double derivation_inner(const AlgebraSpec& a, const Mat& x, const Mat& y) {
    const Mat& r = a.trace_factor();
    const Mat& ri = a.trace_factor_inverse();
    return ((r * x * ri).transpose() * (r * y * ri)).trace();
}

DerivationSpace derivation_space(const AlgebraSpec& a, double rel_tol, std::uint64_t seed) {
    const int n = a.dim();
    const Eigen::Index pairs = static_cast<Eigen::Index>(n) * (n + 1) / 2;
    Mat system = Mat::Zero(pairs * n, static_cast<Eigen::Index>(n) * n);
    Eigen::Index block = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j, ++block) {
            const Vec pij = a.basis_operator(i).col(j);
            const Mat& li = a.basis_operator(i);
            const Mat& lj = a.basis_operator(j);
            for (int k = 0; k < n; ++k) {
                const Eigen::Index row = block * n + k;
                for (int c = 0; c < n; ++c) system(row, k + n * c) += pij(c);
                for (int m = 0; m < n; ++m) {
                    system(row, m + n * i) -= lj(k, m);
                    system(row, m + n * j) -= li(k, m);
                }
            }
        }
    }

    DerivationSpace out;
    out.tolerance = rel_tol;
    double gap = 0.0;
    const Mat kernel = linalg::null_space(system, rel_tol, &gap);
    out.gap_ratio = gap;
    if (kernel.cols() > 0 && gap < 10.0) {
        std::ostringstream msg;
        msg << "ambiguous derivation dimension: singular value gap ratio " << gap << " < 10";
        out.warnings.push_back(msg.str());
    }

    const Eigen::Index d = kernel.cols();
    std::vector<Mat> raw;
    for (Eigen::Index c = 0; c < d; ++c) raw.push_back(Eigen::Map<const Mat>(kernel.col(c).data(), n, n));
    if (d > 0) {
        Mat gram(d, d);
        for (Eigen::Index p = 0; p < d; ++p) {
            for (Eigen::Index q = 0; q < d; ++q) {
                gram(p, q) = derivation_inner(a, raw[static_cast<std::size_t>(p)], raw[static_cast<std::size_t>(q)]);
            }
        }
        const Mat lower = Eigen::LLT<Mat>(gram).matrixL();
        const Mat mix = lower.transpose().triangularView<Eigen::Upper>().solve(Mat::Identity(d, d));
        for (Eigen::Index c = 0; c < d; ++c) {
            Mat m = Mat::Zero(n, n);
            for (Eigen::Index p = 0; p < d; ++p) m += mix(p, c) * raw[static_cast<std::size_t>(p)];
            out.basis.push_back(std::move(m));
        }
    }

    Rng rng = make_rng(seed, 0);
    bool cone_check = true;
    for (const auto& dm : out.basis) {
        out.leibniz_residual = std::max(out.leibniz_residual, leibniz_residual(a, dm));
        for (double t : {1.0, -1.0, 0.1, -0.1}) {
            const Mat flow = linalg::expm(t * dm);
            out.flow_residual = std::max(out.flow_residual, a.norm(flow * a.identity() - a.identity()));
            if (!cone_check) continue;
            try {
                const Element p = random_interior(a, rng);
                if (positivity(a, flow * p) != Positivity::Interior) ++out.cone_violations;
            } catch (const DegenerateSpectrumError& e) {
                // no spectral calculus (e.g. nilpotents): interior points cannot be sampled
                cone_check = false;
                out.warnings.push_back(std::string("cone preservation not checked: ") + e.what());
            }
        }
    }
    if (out.cone_violations > 0) {
        out.warnings.push_back("derivation flow mapped " + std::to_string(out.cone_violations) +
                               " sampled interior points outside the cone");
    }
    return out;
}

Vec derivation_coords(const DerivationSpace& ds, const Mat& m, double* residual) {
    const Eigen::Index d = ds.dimension();
    if (d == 0) {
        if (residual) *residual = m.norm();
        return Vec(0);
    }
    Mat flat(m.size(), d);
    for (Eigen::Index c = 0; c < d; ++c) flat.col(c) = linalg::flatten(ds.basis[static_cast<std::size_t>(c)]);
    const Vec target = linalg::flatten(m);
    Vec coeffs = flat.colPivHouseholderQr().solve(target);
    if (residual) *residual = (flat * coeffs - target).norm();
    return coeffs;
}

}  // namespace conelab
