#include "conelab/extension.hpp"

#include "conelab/catalog.hpp"
#include "conelab/errors.hpp"
#include "conelab/order.hpp"
#include "conelab/sampling.hpp"
#include "conelab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace conelab {

namespace {

using cd = std::complex<double>;

Vec to_real(const CVec& z) {
    Vec out(2 * z.size());
    out << z.real(), z.imag();
    return out;
}

CVec from_real(const Vec& v) {
    const auto n = v.size() / 2;
    return v.head(n).cast<cd>() + cd(0.0, 1.0) * v.tail(n).cast<cd>();
}

// ψ(x + iy) = φx + iφy
CVec psi(const Mat& phi, const CVec& z) { return phi.cast<cd>() * z; }

Mat real_operator(const CMat& m) {
    const auto n = m.rows();
    Mat out(2 * n, 2 * n);
    out << m.real(), -m.imag(), m.imag(), m.real();
    return out;
}

std::shared_ptr<const AlgebraSpec> fixed_algebra(const AlgebraSpec& amb, const Mat& f, const std::string& name) {
    const int m = static_cast<int>(f.cols());
    const auto qr = f.colPivHouseholderQr();
    std::vector<Mat> structure(static_cast<std::size_t>(m), Mat::Zero(m, m));
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            const Element p = product(amb, f.col(i), f.col(j));
            const Vec c = qr.solve(p);
            const double miss = (f * c - p).norm();
            if (miss > 1e-10 * (1.0 + p.norm())) {
                std::ostringstream msg;
                msg << "fixed space is not closed under the Jordan product (residual " << miss << ")";
                throw StructuralError(msg.str());
            }
            for (int k = 0; k < m; ++k) {
                structure[static_cast<std::size_t>(k)](i, j) = c(k);
                structure[static_cast<std::size_t>(k)](j, i) = c(k);
            }
        }
    }
    const Vec e = qr.solve(amb.identity());
    std::vector<CMat> realization;
    if (amb.has_realization()) {
        for (int i = 0; i < m; ++i) realization.push_back(to_matrix(amb, f.col(i).cast<cd>()));
    }
    return std::make_shared<const AlgebraSpec>(name, std::move(structure), e, std::nullopt, std::move(realization));
}

}  // namespace

ExtensionSpec make_extension(const AlgebraSpec& ambient, const Mat& phi, const Orientation& j, std::optional<Mat> fixed,
                             std::string sub_name) {
    const int n = ambient.dim();
    if (phi.rows() != n || phi.cols() != n) throw InputError("extension: phi must be dim×dim");
    if (j.dim() != n) throw InputError("extension: orientation dimension does not match the ambient algebra");
    const double inv = (phi * phi - Mat::Identity(n, n)).norm();
    if (inv > 1e-12 * std::max(1.0, phi.squaredNorm())) {
        std::ostringstream msg;
        msg << "extension: phi is not an involution (‖phi² − id‖ = " << inv << ")";
        throw InputError(msg.str());
    }
    if ((phi * ambient.identity() - ambient.identity()).norm() > 1e-12 * (1.0 + ambient.identity().norm())) {
        throw InputError("extension: phi does not fix the identity");
    }
    Rng rng = make_rng(0, 0);
    for (int s = 0; s < 20; ++s) {
        const Element x = random_element(ambient, rng);
        const double nx = order_unit_norm(ambient, x);
        if (std::abs(order_unit_norm(ambient, phi * x) - nx) > 1e-9 * (1.0 + nx)) {
            throw InputError("extension: phi is not an order-unit isometry");
        }
    }

    const Mat kernel = linalg::null_space(phi - Mat::Identity(n, n), 1e-10);
    Mat f = kernel;
    if (fixed) {
        f = *fixed;
        if (f.rows() != n || f.cols() != kernel.cols() ||
            (phi * f - f).norm() > 1e-10 * (1.0 + f.norm()) || linalg::column_span(f, 1e-10).cols() != f.cols()) {
            throw InputError("extension: supplied fixed basis does not span ker(phi − id)");
        }
    }
    ExtensionSpec out;
    out.ambient = std::make_shared<const AlgebraSpec>(ambient);
    out.phi = phi;
    out.fixed = f;
    out.orientation = j;
    out.sub = fixed_algebra(ambient, f, sub_name.empty() ? ambient.name() + "^phi" : sub_name);
    return out;
}

ExtensionSpec transpose_extension(int n) {
    const AlgebraSpec amb = herm_complex(n);
    const int dim = amb.dim();
    Mat phi = Mat::Identity(dim, dim);
    Mat f = Mat::Zero(dim, n * (n + 1) / 2);
    for (int i = 0; i < n; ++i) f(i, i) = 1.0;
    int col = n;
    for (int k = n; k < dim; k += 2) {
        phi(k + 1, k + 1) = -1.0;  // imaginary off-diagonal part flips under transpose
        f(k, col++) = 1.0;
    }
    return make_extension(amb, phi, canonical_orientation(amb, derivation_space(amb)), f,
                          "sym_real(" + std::to_string(n) + ")");
}

ExtensionSpec quaternionic_extension(int n) {
    const AlgebraSpec amb = herm_complex(2 * n);
    const AlgebraSpec quat = herm_quat(n);
    const int dim = amb.dim();
    CMat q = CMat::Zero(2 * n, 2 * n);
    q.topRightCorner(n, n) = CMat::Identity(n, n);
    q.bottomLeftCorner(n, n) = -CMat::Identity(n, n);
    const CMat q_inv = q.inverse();
    Mat phi(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const CMat x = amb.realization()[static_cast<std::size_t>(k)];
        phi.col(k) = matrix_coords(amb, q * x.conjugate() * q_inv).real();
    }
    Mat f(dim, quat.dim());
    for (int k = 0; k < quat.dim(); ++k) {
        double residual = 0.0;
        const CVec c = matrix_coords(amb, quat.realization()[static_cast<std::size_t>(k)], &residual);
        f.col(k) = c.real();
    }
    return make_extension(amb, phi, canonical_orientation(amb, derivation_space(amb)), f,
                          "herm_quat(" + std::to_string(n) + ")");
}

ExtensionSpec identity_extension(const AlgebraSpec& a, const Orientation& j) {
    return make_extension(a, Mat::Identity(a.dim(), a.dim()), j, Mat::Identity(a.dim(), a.dim()), a.name());
}

ExtensionReport extension_verify(const ExtensionSpec& e, int samples, std::uint64_t seed, double tol) {
    const AlgebraSpec& amb = *e.ambient;
    const AlgebraSpec& sub = *e.sub;
    const Mat& phi = e.phi;
    const Mat& f = e.fixed;
    ExtensionReport out;
    out.tolerance = tol;
    out.phi_involution = (phi * phi - Mat::Identity(amb.dim(), amb.dim())).norm();

    Rng rng = make_rng(seed, 0);
    for (int s = 0; s < samples; ++s) {
        const Element x = random_element(amb, rng);
        const Element y = random_element(amb, rng);
        const double nx = order_unit_norm(amb, x);
        out.phi_isometry = std::max(out.phi_isometry, std::abs(order_unit_norm(amb, phi * x) - nx) / (1.0 + nx));
        const Element xy = product(amb, x, y);
        out.jordan_subalgebra = std::max(
            out.jordan_subalgebra, (phi * xy - product(amb, phi * x, phi * y)).norm() / (1.0 + x.norm() * y.norm()));
    }
    for (int i = 0; i < f.cols(); ++i) {
        for (int j = i; j < f.cols(); ++j) {
            const Element p = product(amb, f.col(i), f.col(j));
            const double r = linalg::projection_residual(f, p) / (1.0 + p.norm());
            out.jordan_subalgebra = std::max(out.jordan_subalgebra, r);
        }
    }

    // membership: interior, generic and boundary points of V
    for (int s = 0; s < samples; ++s) {
        Element v;
        switch (s % 3) {
            case 0: v = random_interior(sub, rng); break;
            case 1: v = random_element(sub, rng); break;
            default: {
                const Element w = random_element(sub, rng);
                v = w - spectral_values(sub, w).front() * sub.identity();
            }
        }
        ++out.membership_samples;
        if (positivity(amb, f * v) != positivity(sub, v)) ++out.membership_mismatches;
    }

    for (int s = 0; s < samples; ++s) {
        const Element a = random_interior(amb, rng);
        const Element b = random_interior(amb, rng);
        const Element lhs = phi * e.orientation.apply(a, b);
        const Element rhs = e.orientation.apply(phi * b, phi * a);
        out.compatibility = std::max(out.compatibility, (lhs - rhs).norm() / (1.0 + a.norm() * b.norm()));
    }

    if (out.phi_involution > 1e-12) out.violations.push_back("phi is not an involution");
    if (out.phi_isometry > tol) out.violations.push_back("phi is not an order-unit isometry");
    if (out.jordan_subalgebra > tol) out.violations.push_back("fixed space is not a Jordan subalgebra");
    if (out.membership_mismatches > 0) out.violations.push_back("cone of V differs from the ambient cone cut down to V");
    if (out.compatibility > tol) out.violations.push_back("phi(J(a)b) != J(phi b)(phi a)");
    out.pass = out.violations.empty();
    return out;
}

CVec to_complex(const Mat& basis, int j) { return from_real(basis.col(j)); }

RealReconstruction real_reconstruct(const ExtensionSpec& e, int samples, std::uint64_t seed, double tol) {
    const auto check = extension_verify(e, 50, seed);
    if (!check.pass) throw PreconditionError("real_reconstruct: extension fails verification: " + check.violations.front());
    const AlgebraSpec& amb = *e.ambient;
    const ComplexAlgebra c = complexify(amb, e.orientation);
    const int n = amb.dim();
    const Mat& f = e.fixed;

    RealReconstruction out;
    Mat s0(2 * n, f.cols());
    s0 << f, Mat::Zero(n, f.cols());
    Mat span = linalg::column_span(s0, 1e-10);
    while (true) {
        ++out.closure_steps;
        const auto r = span.cols();
        Mat grown(2 * n, r + r * r);
        grown.leftCols(r) = span;
        for (Eigen::Index i = 0; i < r; ++i) {
            const CMat li = c.lambda(from_real(span.col(i)));
            for (Eigen::Index j = 0; j < r; ++j) grown.col(r + i * r + j) = to_real(li * from_real(span.col(j)));
        }
        Mat next = linalg::column_span(grown, 1e-10);
        if (next.cols() > 2 * n) throw Error("span closure exceeded the ambient dimension");
        if (next.cols() == r) break;
        span = std::move(next);
    }
    out.basis = span;
    const auto r = span.cols();

    out.structure.assign(static_cast<std::size_t>(r), Mat::Zero(r, r));
    for (Eigen::Index i = 0; i < r; ++i) {
        const CMat li = c.lambda(from_real(span.col(i)));
        for (Eigen::Index j = 0; j < r; ++j) {
            const Vec p = to_real(li * from_real(span.col(j)));
            const Vec coords = span.transpose() * p;
            out.closure_residual = std::max(out.closure_residual, (span * coords - p).norm());
            for (Eigen::Index k = 0; k < r; ++k) out.structure[static_cast<std::size_t>(k)](i, j) = coords(k);
        }
        Vec conj = span.col(i);
        conj.tail(n) *= -1.0;
        out.involution_residual = std::max(out.involution_residual, (span * (span.transpose() * conj) - conj).norm());
    }

    // z* = z inside R(V) means the imaginary coordinates vanish
    const Mat kernel = linalg::null_space(span.bottomRows(n), 1e-10);
    out.hermitian_part = span.topRows(n) * kernel;
    double match = 0.0;
    for (Eigen::Index k = 0; k < out.hermitian_part.cols(); ++k) {
        match = std::max(match, linalg::projection_residual(f, out.hermitian_part.col(k)));
    }
    for (Eigen::Index k = 0; k < f.cols(); ++k) {
        match = std::max(match, out.hermitian_part.cols() > 0 ? linalg::projection_residual(out.hermitian_part, f.col(k))
                                                              : f.col(k).norm());
    }
    out.hermitian_match = match;
    out.hermitian_part_is_v = out.hermitian_part.cols() == f.cols() && match <= 1e-9;

    // restricted left-regular representation in a τ-orthonormal real frame
    Mat t2 = Mat::Zero(2 * n, 2 * n);
    t2.topLeftCorner(n, n) = amb.trace_factor();
    t2.bottomRightCorner(n, n) = amb.trace_factor();
    Mat t2_inv = Mat::Zero(2 * n, 2 * n);
    t2_inv.topLeftCorner(n, n) = amb.trace_factor_inverse();
    t2_inv.bottomRightCorner(n, n) = amb.trace_factor_inverse();
    const Mat frame = Eigen::HouseholderQR<Mat>(t2 * span).householderQ() * Mat::Identity(2 * n, r);
    auto restricted = [&](const CVec& z) -> Mat { return frame.transpose() * t2 * real_operator(c.lambda(z)) * t2_inv * frame; };

    Rng rng = make_rng(seed, 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto sample = [&]() {
        Vec coef(r);
        for (Eigen::Index k = 0; k < r; ++k) coef(k) = gauss(rng);
        return from_real(span * coef);
    };
    out.samples = samples;
    for (int s = 0; s < samples; ++s) {
        const CVec z = sample();
        const CVec w = sample();
        const CVec lhs = psi(e.phi, c.product(z, w));
        const CVec rhs = c.product(psi(e.phi, w), psi(e.phi, z));
        out.antiautomorphism = std::max(out.antiautomorphism, (lhs - rhs).norm() / (1.0 + z.norm() * w.norm()));
        if (s < 100) {
            const double nz = linalg::op_norm(restricted(z));
            const double nsq = linalg::op_norm(restricted(c.product(ComplexAlgebra::star(z), z)));
            out.cstar_identity = std::max(out.cstar_identity, std::abs(nsq - nz * nz) / (1.0 + nz * nz));
        }
    }
    out.pass = out.closure_residual <= tol && out.involution_residual <= tol && out.hermitian_part_is_v &&
               out.antiautomorphism <= tol && out.cstar_identity <= 1e-7;
    return out;
}

ReversibilityReport reversibility_check(const ComplexAlgebra& c, const Mat& sub, double tol) {
    const int n = c.dim();
    if (sub.rows() != n) throw InputError("reversibility_check: basis rows must match the algebra dimension");
    const Mat span = linalg::column_span(sub, 1e-10);
    const auto m = sub.cols();
    std::vector<CMat> ops;
    std::vector<CVec> vecs;
    for (Eigen::Index k = 0; k < m; ++k) {
        vecs.push_back(sub.col(k).cast<cd>());
        ops.push_back(c.lambda(vecs.back()));
    }
    ReversibilityReport out;
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            const CMat lij = ops[static_cast<std::size_t>(i)] * ops[static_cast<std::size_t>(j)];
            const CVec ji = ops[static_cast<std::size_t>(j)] * vecs[static_cast<std::size_t>(i)];
            for (Eigen::Index k = 0; k < m; ++k) {
                const CMat fwd = lij * ops[static_cast<std::size_t>(k)];
                const CVec kji = ops[static_cast<std::size_t>(k)] * ji;
                for (Eigen::Index l = 0; l < m; ++l) {
                    // a_i a_j a_k a_l + a_l a_k a_j a_i
                    const CVec p = fwd * vecs[static_cast<std::size_t>(l)] + ops[static_cast<std::size_t>(l)] * kji;
                    const Vec re = p.real();
                    const double miss = p.imag().norm() + (re - span * (span.transpose() * re)).norm();
                    out.residual = std::max(out.residual, miss / (1.0 + p.norm()));
                    ++out.quadruples;
                }
            }
        }
    }
    out.reversible = out.residual <= tol;
    return out;
}

}  // namespace conelab
