#include "conelab/geometry.hpp"

#include "conelab/errors.hpp"
#include "conelab/sampling.hpp"
#include "conelab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace conelab {

namespace {

void require_interior(const AlgebraSpec& a, const Element& x, const char* what, const char* op) {
    a.check_element(x, what);
    if (positivity(a, x) != Positivity::Interior) {
        std::ostringstream msg;
        msg << op << ": " << what << " is not in the interior of the cone";
        throw PreconditionError(msg.str());
    }
}

}  // namespace

Element symmetry_at(const AlgebraSpec& a, const Element& p, const Element& x) {
    require_interior(a, p, "p", "symmetry_at");
    require_interior(a, x, "x", "symmetry_at");
    return quad_rep(a, p) * inverse(a, x);
}

Mat symmetry_derivative(const AlgebraSpec& a, const Element& p, const Element& x, double h, bool richardson) {
    const int n = a.dim();
    auto central = [&](double step) {
        Mat d(n, n);
        for (int i = 0; i < n; ++i) {
            const Vec dir = Vec::Unit(n, i);
            d.col(i) = (symmetry_at(a, p, x + step * dir) - symmetry_at(a, p, x - step * dir)) / (2.0 * step);
        }
        return d;
    };
    const Mat coarse = central(h);
    if (!richardson) return coarse;
    return (4.0 * central(h / 2.0) - coarse) / 3.0;
}

double tangent_norm(const AlgebraSpec& a, const Element& p, const Element& v) {
    a.check_element(v, "v");
    return order_unit_seminorm(a, p, v);
}

TangentSandwich tangent_norm_sandwich(const AlgebraSpec& a, const Element& p, int samples, std::uint64_t seed) {
    Rng rng = make_rng(seed, 0);
    TangentSandwich out;
    out.lower = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        const Element v = random_unit_element(a, rng);
        const double r = tangent_norm(a, p, v);
        out.lower = std::min(out.lower, r);
        out.upper = std::max(out.upper, r);
    }
    if (samples <= 0) out.lower = 0.0;
    return out;
}

InvarianceReport g_invariance_check(const AlgebraSpec& a, const Mat& g, int samples, std::uint64_t seed, double tol) {
    const int n = a.dim();
    if (g.rows() != n || g.cols() != n) throw InputError("g_invariance_check: g must be dim×dim");
    const Eigen::JacobiSVD<Mat> svd(g);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) <= 1e-12 * std::max(1.0, sv(0))) throw InputError("g_invariance_check: g is singular");

    InvarianceReport out;
    out.tolerance = tol;
    out.samples = samples;
    Rng rng = make_rng(seed, 0);
    for (int s = 0; s < samples; ++s) {
        const Element p = random_interior(a, rng);
        const Element v = random_element(a, rng);
        const Element gp = g * p;
        if (positivity(a, gp) != Positivity::Interior) {
            ++out.cone_violations;
            continue;
        }
        const double before = tangent_norm(a, p, v);
        const double after = tangent_norm(a, gp, g * v);
        out.isometry_residual = std::max(out.isometry_residual, std::abs(after - before) / (1.0 + before));
    }
    out.pass = out.cone_violations == 0 && out.isometry_residual <= tol;
    return out;
}

Mat transitive_map(const AlgebraSpec& a, const Element& u, const Element& p) {
    require_interior(a, u, "u", "transitive_map");
    require_interior(a, p, "p", "transitive_map");
    return quad_rep(a, sqrt(a, p)) * quad_rep(a, real_power(a, u, -0.5));
}

Element exp_chart(const AlgebraSpec& a, const Element& x) {
    a.check_element(x);
    return linalg::expm(l_operator(a, x)) * a.identity();
}

Mat adjoint_symmetry(const AlgebraSpec& a, const Mat& x, double* linearity_residual) {
    const int n = a.dim();
    const Element& e = a.identity();
    auto field = [&](const Element& y) -> Element { return -(quad_rep(a, y) * (x * inverse(a, y))); };

    Mat pts(n, n);
    Mat vals(n, n);
    for (int i = 0; i < n; ++i) {
        const Vec b = Vec::Unit(n, i);
        pts.col(i) = e + (0.5 / std::max(order_unit_norm(a, b), 1e-300)) * b;
        vals.col(i) = field(pts.col(i));
    }
    const Mat fitted = pts.transpose().partialPivLu().solve(vals.transpose()).transpose();
    if (linearity_residual) {
        double worst = 0.0;
        Rng rng = make_rng(0x5eed, 0);
        for (int s = 0; s < 4; ++s) {
            const Element y = random_interior(a, rng, 0.5);
            const Vec w = field(y);
            worst = std::max(worst, (fitted * y - w).norm() / (1.0 + w.norm()));
        }
        *linearity_residual = worst;
    }
    return fitted;
}

bool CartanSplit::pass(double tol) const {
    return grading_residual <= tol && theta_square_residual <= tol && bracket_residual <= tol &&
           p_is_l_residual <= tol && span_rank == static_cast<int>(k_basis.size() + p_basis.size());
}

CartanSplit lie_algebra_linear(const AlgebraSpec& a, const DerivationSpace& ds) {
    const int n = a.dim();
    CartanSplit out;
    for (int i = 0; i < n; ++i) out.p_basis.push_back(a.basis_operator(i));
    out.k_basis = ds.basis;

    const int np = static_cast<int>(out.p_basis.size());
    const int nk = static_cast<int>(out.k_basis.size());
    Mat span(static_cast<Eigen::Index>(n) * n, np + nk);
    for (int c = 0; c < np; ++c) span.col(c) = linalg::flatten(out.p_basis[static_cast<std::size_t>(c)]);
    for (int c = 0; c < nk; ++c) span.col(np + c) = linalg::flatten(out.k_basis[static_cast<std::size_t>(c)]);
    out.span_rank = static_cast<int>(linalg::column_span(span, 1e-10).cols());

    // θ on each basis field, written back in basis coordinates
    const auto qr = span.colPivHouseholderQr();
    out.theta = Mat::Zero(np + nk, np + nk);
    for (int c = 0; c < np + nk; ++c) {
        const Mat x = c < np ? out.p_basis[static_cast<std::size_t>(c)] : out.k_basis[static_cast<std::size_t>(c - np)];
        double linearity = 0.0;
        const Mat tx = adjoint_symmetry(a, x, &linearity);
        const Vec coords = qr.solve(linalg::flatten(tx));
        out.theta.col(c) = coords;
        const double sign = c < np ? -1.0 : 1.0;
        const double off_span = (span * coords - linalg::flatten(tx)).norm();
        out.grading_residual = std::max({out.grading_residual, (tx - sign * x).norm(), linearity, off_span});
    }
    out.theta_square_residual = (out.theta * out.theta - Mat::Identity(np + nk, np + nk)).norm();

    const Mat k_span = nk > 0 ? linalg::column_span(span.rightCols(nk), 1e-10) : Mat(span.rows(), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Vec br = linalg::flatten(linalg::bracket(a.basis_operator(i), a.basis_operator(j)));
            const double r = k_span.cols() > 0 ? linalg::projection_residual(k_span, br) : br.norm();
            out.bracket_residual = std::max(out.bracket_residual, r);
        }
    }
    for (const auto& x : out.p_basis) {
        out.p_is_l_residual = std::max(out.p_is_l_residual, (x - l_operator(a, x * a.identity())).norm());
    }
    return out;
}

EvaluationReport evaluation_bijection_check(const AlgebraSpec& a, const CartanSplit& split) {
    const int n = a.dim();
    if (static_cast<int>(split.p_basis.size()) != n) {
        std::ostringstream msg;
        msg << "evaluation map is not square: dim p = " << split.p_basis.size() << ", dim V = " << n;
        throw StructuralError(msg.str());
    }
    Mat ev(n, n);
    for (int i = 0; i < n; ++i) ev.col(i) = split.p_basis[static_cast<std::size_t>(i)] * a.identity();
    const Eigen::JacobiSVD<Mat> svd(ev);
    const auto& sv = svd.singularValues();
    EvaluationReport out;
    if (sv(n - 1) <= 1e-12 * std::max(1.0, sv(0))) {
        std::ostringstream msg;
        msg << "evaluation map X ↦ X(e) on p is singular (smallest singular value " << sv(n - 1) << ")";
        throw StructuralError(msg.str());
    }
    out.condition_number = sv(0) / sv(n - 1);
    const auto lu = ev.partialPivLu();
    auto rebuild = [&](const Element& x) {
        const Vec c = lu.solve(x);
        Mat l = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i) l += c(i) * split.p_basis[static_cast<std::size_t>(i)];
        return l;
    };
    for (int i = 0; i < n; ++i) {
        const Vec b = Vec::Unit(n, i);
        out.reconstruction_residual = std::max(out.reconstruction_residual, (rebuild(b) * a.identity() - b).norm());
    }
    Rng rng = make_rng(0, 0);
    for (int s = 0; s < 8; ++s) {
        const Element x = random_element(a, rng);
        out.reconstruction_residual =
            std::max(out.reconstruction_residual, (rebuild(x) * a.identity() - x).norm() / (1.0 + x.norm()));
    }
    out.identity_residual = (rebuild(a.identity()) - Mat::Identity(n, n)).norm();
    out.bijective = true;
    return out;
}

ConeOracle make_cone_oracle(const AlgebraSpec& a) {
    auto alg = std::make_shared<const AlgebraSpec>(a);
    ConeOracle o;
    o.dim = a.dim();
    o.membership = [alg](const Element& x) { return positivity(*alg, x); };
    o.symmetry = [alg](const Element& p, const Element& x) { return symmetry_at(*alg, p, x); };
    o.exp_chart = [alg](const Element& x) { return exp_chart(*alg, x); };
    o.base_point = a.identity();
    return o;
}

namespace {

Element transvection_derivative(const ConeOracle& o, const Element& x, const Element& b, double h) {
    // b ↦ s_{γ(t/2)}(s_e(b)) is linear in b, so shifting b into the interior is exact
    const Element& e = o.base_point;
    auto path = [&](double t, const Element& y) { return o.symmetry(o.exp_chart((t / 2.0) * x), o.symmetry(e, y)); };
    auto diff = [&](const Element& y) -> Element { return (path(h, y) - path(-h, y)) / (2.0 * h); };
    if (o.membership(b) == Positivity::Interior) return diff(b);
    double mu = 1.0 + b.norm() / std::max(e.norm(), 1e-300);
    for (int guard = 0; o.membership(b + mu * e) != Positivity::Interior; ++guard) {
        if (guard > 60) throw UnreliableOracleError("oracle: no shift b + μe reaches the interior");
        mu *= 2.0;
    }
    return diff(b + mu * e) - mu * diff(e);
}

}  // namespace

Element recover_product(const ConeOracle& o, const Element& x, const Element& y, const RecoverOptions& opts) {
    if (!(opts.step > 1e-6 && opts.step < 1e-2)) {
        std::ostringstream msg;
        msg << "recover_product: step " << opts.step << " outside (1e-6, 1e-2)";
        throw InputError(msg.str());
    }
    if (x.size() != o.dim || y.size() != o.dim) throw InputError("recover_product: element dimension mismatch");

    // involution check at e and along the path
    const Element& e = o.base_point;
    const Element probe = e + 0.25 * o.exp_chart(0.5 * y / (1.0 + y.norm()));
    for (const Element& p : {e, o.exp_chart((opts.step / 2.0) * x)}) {
        const Element back = o.symmetry(p, o.symmetry(p, probe));
        const double r = (back - probe).norm() / (1.0 + probe.norm());
        if (!(r <= 1e-6)) {
            std::ostringstream msg;
            msg << "oracle symmetry is not involutive (residual " << r << ")";
            throw UnreliableOracleError(msg.str());
        }
    }

    const Element coarse = transvection_derivative(o, x, y, opts.step);
    if (!opts.richardson) return coarse;
    return (4.0 * transvection_derivative(o, x, y, opts.step / 2.0) - coarse) / 3.0;
}

std::vector<Mat> recover_structure(const ConeOracle& o, const RecoverOptions& opts) {
    const int n = o.dim;
    std::vector<Mat> c(static_cast<std::size_t>(n), Mat::Zero(n, n));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const Element r = recover_product(o, Vec::Unit(n, i), Vec::Unit(n, j), opts);
            for (int k = 0; k < n; ++k) {
                c[static_cast<std::size_t>(k)](i, j) = r(k);
                c[static_cast<std::size_t>(k)](j, i) = r(k);
            }
        }
    }
    return c;
}

}  // namespace conelab

namespace conelab {

GeometryReport geometry_suite(const AlgebraSpec& a, const DerivationSpace& ds, int samples, std::uint64_t seed,
                              double tol) {
    if (!properness_check(a).proper) throw PreconditionError("geometry_suite: the cone is not proper");
    const int n = a.dim();
    GeometryReport out;
    out.tolerance = tol;
    out.samples = samples;
    Rng rng = make_rng(seed, 0);
    for (int s = 0; s < samples; ++s) {
        const Element p = random_interior(a, rng);
        const Element x = random_interior(a, rng);
        const Element v = random_element(a, rng);
        const Element sx = symmetry_at(a, p, x);
        out.involution = std::max(out.involution, (symmetry_at(a, p, sx) - x).norm() / (1.0 + x.norm()));
        out.fixed_point = std::max(out.fixed_point, (symmetry_at(a, p, p) - p).norm() / (1.0 + p.norm()));
        out.derivative_at_p =
            std::max(out.derivative_at_p, (symmetry_derivative(a, p, p) + Mat::Identity(n, n)).norm());
        const double before = tangent_norm(a, x, v);
        const double after = tangent_norm(a, sx, symmetry_derivative(a, p, x) * v);
        out.isometry = std::max(out.isometry, std::abs(after - before) / (1.0 + before));
        out.own_unit = std::max(out.own_unit, std::abs(tangent_norm(a, p, p) - 1.0));
    }
    const Element q = random_interior(a, rng);
    out.quad_invariance = g_invariance_check(a, quad_rep(a, q), samples, seed + 1, tol);
    if (ds.dimension() > 0) {
        out.flow_invariance = g_invariance_check(a, linalg::expm(ds.basis.front()), samples, seed + 2, tol);
    } else {
        out.flow_invariance.pass = true;
    }
    out.split = lie_algebra_linear(a, ds);
    bool evaluation_ok = false;
    try {
        out.evaluation = evaluation_bijection_check(a, out.split);
        evaluation_ok = out.evaluation.bijective && out.evaluation.reconstruction_residual <= 1e-10 &&
                        out.evaluation.identity_residual <= 1e-10;
    } catch (const StructuralError& e) {
        out.structural_error = e.what();
    }
    out.pass = out.involution <= tol && out.fixed_point <= tol && out.derivative_at_p <= tol && out.isometry <= tol &&
               out.own_unit <= tol && out.quad_invariance.pass && out.flow_invariance.pass && out.split.pass(tol) &&
               evaluation_ok;
    return out;
}

}  // namespace conelab
