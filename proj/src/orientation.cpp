#include "conelab/orientation.hpp"

#include "conelab/algebra.hpp"
#include "conelab/catalog.hpp"
#include "conelab/errors.hpp"
#include "conelab/geometry.hpp"
#include "conelab/order.hpp"
#include "conelab/sampling.hpp"
#include "conelab/spectral.hpp"

#include <unsupported/Eigen/NonLinearOptimization>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

namespace conelab {

Orientation::Orientation(std::shared_ptr<const std::vector<Mat>> basis, Mat coeffs, Element base_point,
                         double residual)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)), base_point_(std::move(base_point)), residual_(residual) {
    if (!basis_) basis_ = std::make_shared<const std::vector<Mat>>();
    if (coeffs_.rows() != static_cast<Eigen::Index>(basis_->size()) || coeffs_.cols() != base_point_.size()) {
        throw InputError("orientation coefficients must be (derivation count)×dim");
    }
}

Mat Orientation::operator()(const Element& a) const {
    const auto n = base_point_.size();
    if (a.size() != n) throw InputError("orientation applied to an element of the wrong dimension");
    Mat out = Mat::Zero(n, n);
    const Vec w = coeffs_ * a;
    for (std::size_t k = 0; k < basis_->size(); ++k) out += w(static_cast<Eigen::Index>(k)) * (*basis_)[k];
    return out;
}

Orientation Orientation::scaled(double s) const { return Orientation(basis_, s * coeffs_, base_point_, residual_); }

std::shared_ptr<const std::vector<Mat>> share_basis(const DerivationSpace& ds) {
    return std::make_shared<const std::vector<Mat>>(ds.basis);
}

Orientation zero_orientation(const AlgebraSpec& a, const DerivationSpace& ds) {
    return Orientation(share_basis(ds), Mat::Zero(ds.dimension(), a.dim()), a.identity());
}

double OrientationReport::max_residual() const { return std::max({quadratic, antisymmetry, center_kernel, bracket}); }

OrientationReport verify_orientation(const AlgebraSpec& a, const Orientation& j, double tol) {
    const int n = a.dim();
    if (j.dim() != n) throw InputError("orientation dimension does not match the algebra");
    std::vector<Mat> images;
    for (int i = 0; i < n; ++i) {
        images.push_back(j(Vec::Unit(n, i)));
        const double lr = leibniz_residual(a, images.back());
        if (lr > 1e-8 * (1.0 + images.back().norm())) {
            std::ostringstream msg;
            msg << "orientation value J(b_" << i << ") is not a derivation (Leibniz residual " << lr << ")";
            throw InputError(msg.str());
        }
    }
    OrientationReport out;
    out.tolerance = tol;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const Mat& li = a.basis_operator(i);
            const Mat& lk = a.basis_operator(k);
            const Element jik = images[static_cast<std::size_t>(i)].col(k);
            out.quadratic = std::max(out.quadratic, (j(jik) - linalg::bracket(lk, li)).norm());
            out.antisymmetry = std::max(out.antisymmetry, (jik + images[static_cast<std::size_t>(k)].col(i)).norm());
            const Mat rhs = linalg::bracket(images[static_cast<std::size_t>(k)], images[static_cast<std::size_t>(i)]);
            out.bracket = std::max(out.bracket, (linalg::bracket(li, lk) - rhs).norm());
        }
    }
    const Mat z = center(a);
    for (Eigen::Index c = 0; c < z.cols(); ++c) out.center_kernel = std::max(out.center_kernel, j(z.col(c)).norm());
    out.pass = out.max_residual() <= tol;
    return out;
}

Orientation orientation_from_images(const AlgebraSpec& a, const DerivationSpace& ds, const std::vector<Mat>& images) {
    const int n = a.dim();
    if (static_cast<int>(images.size()) != n) throw InputError("need one orientation image per basis vector");
    Mat coeffs(ds.dimension(), n);
    for (int i = 0; i < n; ++i) {
        double residual = 0.0;
        const Vec c = derivation_coords(ds, images[static_cast<std::size_t>(i)], &residual);
        if (residual > 1e-8 * (1.0 + images[static_cast<std::size_t>(i)].norm())) {
            std::ostringstream msg;
            msg << "J(b_" << i << ") is not in the span of the derivation basis (residual " << residual << ")";
            throw InputError(msg.str());
        }
        coeffs.col(i) = c;
    }
    return Orientation(share_basis(ds), std::move(coeffs), a.identity());
}

Orientation canonical_orientation(const AlgebraSpec& a, const DerivationSpace& ds) {
    if (!a.has_realization()) {
        throw InputError("canonical orientation needs a hermitian matrix realization; '" + a.name() + "' has none");
    }
    const int n = a.dim();
    const std::complex<double> half_i(0.0, 0.5);
    std::vector<Mat> images;
    for (int i = 0; i < n; ++i) {
        Mat img(n, n);
        const CMat& bi = a.realization()[static_cast<std::size_t>(i)];
        for (int k = 0; k < n; ++k) {
            const CMat& bk = a.realization()[static_cast<std::size_t>(k)];
            double residual = 0.0;
            const CVec c = matrix_coords(a, half_i * (bi * bk - bk * bi), &residual);
            if (residual > 1e-10 || c.imag().norm() > 1e-10) {
                throw InputError("algebra '" + a.name() +
                                 "' is not of matrix-catalog type: (i/2)[a, x] leaves its hermitian span");
            }
            img.col(k) = c.real();
        }
        images.push_back(std::move(img));
    }
    return orientation_from_images(a, ds, images);
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Found: return "Found";
        case Verdict::NotFound: return "NotFound";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

// Quadratic system J(J(b_i)b_j) = [L_j, L_i] over α = reshape(null·θ, d, n).
class OrientationProblem {
public:
    OrientationProblem(const AlgebraSpec& a, const DerivationSpace& ds, bool constrained)
        : n_(a.dim()), d_(ds.dimension()) {
        flat_ = Mat(static_cast<Eigen::Index>(n_) * n_, d_);
        for (int k = 0; k < d_; ++k) flat_.col(k) = linalg::flatten(ds.basis[static_cast<std::size_t>(k)]);
        columns_.resize(static_cast<std::size_t>(n_));
        for (int j = 0; j < n_; ++j) {
            Mat c(n_, d_);
            for (int k = 0; k < d_; ++k) c.col(k) = ds.basis[static_cast<std::size_t>(k)].col(j);
            columns_[static_cast<std::size_t>(j)] = std::move(c);
        }
        targets_.resize(static_cast<std::size_t>(n_) * n_);
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                targets_[pair(i, j)] = linalg::flatten(linalg::bracket(a.basis_operator(j), a.basis_operator(i)));
            }
        }

        const Eigen::Index unknowns = static_cast<Eigen::Index>(d_) * n_;
        if (!constrained || unknowns == 0) {
            null_ = Mat::Identity(unknowns, unknowns);
            return;
        }
        // J(b_i)b_j + J(b_j)b_i = 0 and α z = 0 for z in the centre; both linear in vec(α)
        const Mat z = center(a);
        std::vector<Vec> rows;
        for (int i = 0; i < n_; ++i) {
            for (int j = i; j < n_; ++j) {
                for (int r = 0; r < n_; ++r) {
                    Vec row = Vec::Zero(unknowns);
                    for (int l = 0; l < d_; ++l) {
                        row(l + d_ * i) += columns_[static_cast<std::size_t>(j)](r, l);
                        row(l + d_ * j) += columns_[static_cast<std::size_t>(i)](r, l);
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
        for (Eigen::Index c = 0; c < z.cols(); ++c) {
            for (int k = 0; k < d_; ++k) {
                Vec row = Vec::Zero(unknowns);
                for (int m = 0; m < n_; ++m) row(k + d_ * m) = z(m, c);
                rows.push_back(std::move(row));
            }
        }
        Mat cm(static_cast<Eigen::Index>(rows.size()), unknowns);
        for (std::size_t r = 0; r < rows.size(); ++r) cm.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
        null_ = linalg::null_space(cm, 1e-10);
    }

    int inputs() const { return static_cast<int>(null_.cols()); }
    int values() const { return n_ * n_ * n_ * n_; }
    int d() const { return d_; }
    int n() const { return n_; }

    Mat coeffs(const Vec& theta) const {
        const Vec flat = null_ * theta;
        return Eigen::Map<const Mat>(flat.data(), d_, n_);
    }

    Vec residual(const Vec& theta) const {
        const Mat alpha = coeffs(theta);
        Vec out(values());
        const Eigen::Index block = static_cast<Eigen::Index>(n_) * n_;
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                const Vec w = columns_[static_cast<std::size_t>(j)] * alpha.col(i);
                out.segment(static_cast<Eigen::Index>(pair(i, j)) * block, block) =
                    flat_ * (alpha * w) - targets_[pair(i, j)];
            }
        }
        return out;
    }

    Mat jacobian(const Vec& theta) const {
        const Mat alpha = coeffs(theta);
        const Eigen::Index block = static_cast<Eigen::Index>(n_) * n_;
        Mat full = Mat::Zero(values(), static_cast<Eigen::Index>(d_) * n_);
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                const Mat& cj = columns_[static_cast<std::size_t>(j)];
                const Vec w = cj * alpha.col(i);
                auto rows = full.middleRows(static_cast<Eigen::Index>(pair(i, j)) * block, block);
                // ∂/∂α(k, m): w_m·vec(D_k) + [m = i]·vec(J(D_k b_j))
                for (int m = 0; m < n_; ++m) rows.middleCols(static_cast<Eigen::Index>(m) * d_, d_) = w(m) * flat_;
                rows.middleCols(static_cast<Eigen::Index>(i) * d_, d_) += flat_ * alpha * cj;
            }
        }
        return full * null_;
    }

    // max over pairs of the Frobenius norm of the residual block
    double max_residual(const Vec& theta) const {
        const Vec r = residual(theta);
        const Eigen::Index block = static_cast<Eigen::Index>(n_) * n_;
        double worst = 0.0;
        for (Eigen::Index p = 0; p < static_cast<Eigen::Index>(n_) * n_; ++p) {
            worst = std::max(worst, r.segment(p * block, block).norm());
        }
        return worst;
    }

private:
    std::size_t pair(int i, int j) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j); }

    int n_;
    int d_;
    Mat flat_;                  // columns vec(D_k)
    std::vector<Mat> columns_;  // columns_[j].col(k) = D_k b_j
    std::vector<Vec> targets_;  // vec([L_j, L_i])
    Mat null_;
};

struct LmFunctor {
    using Scalar = double;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
    using InputType = Vec;
    using ValueType = Vec;
    using JacobianType = Mat;

    const OrientationProblem* problem;

    int inputs() const { return problem->inputs(); }
    int values() const { return problem->values(); }
    int operator()(const Vec& x, Vec& fvec) const {
        fvec = problem->residual(x);
        return 0;
    }
    int df(const Vec& x, Mat& fjac) const {
        fjac = problem->jacobian(x);
        return 0;
    }
};

struct RestartOutcome {
    Vec theta;
    double residual = std::numeric_limits<double>::infinity();
};

RestartOutcome run_restart(const OrientationProblem& problem, const SolveOptions& opts, int index) {
    Rng rng = make_rng(opts.seed, static_cast<std::uint64_t>(index));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec theta(problem.inputs());
    for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = gauss(rng);

    LmFunctor functor{&problem};
    Eigen::LevenbergMarquardt<LmFunctor, double> lm(functor);
    lm.parameters.maxfev = opts.max_iter;
    lm.parameters.ftol = 1e-15;
    lm.parameters.xtol = 1e-15;
    lm.parameters.gtol = 0.0;
    lm.minimize(theta);

    // Gauss–Newton polish with minimum-norm steps
    double best = problem.max_residual(theta);
    for (int it = 0; it < 8 && best > 0.0; ++it) {
        const Mat jac = problem.jacobian(theta);
        const Vec step = jac.completeOrthogonalDecomposition().solve(problem.residual(theta));
        const Vec candidate = theta - step;
        const double r = problem.max_residual(candidate);
        if (!(r < best)) break;
        theta = candidate;
        best = r;
    }
    return {std::move(theta), best};
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CONELAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

double orientation_residual(const AlgebraSpec& a, const DerivationSpace& ds, const Mat& coeffs) {
    const OrientationProblem problem(a, ds, false);
    return problem.max_residual(Eigen::Map<const Vec>(coeffs.data(), coeffs.size()));
}

SolveResult solve_orientation(const AlgebraSpec& a, const DerivationSpace& ds, const SolveOptions& opts) {
    if (!(opts.tol_success < opts.tol_fail)) throw InputError("solve_orientation: tol_success must be < tol_fail");
    if (opts.restarts < 1) throw InputError("solve_orientation: restarts must be >= 1");
    const OrientationProblem problem(a, ds, opts.impose_antisymmetry);
    SolveResult out;
    out.free_parameters = problem.inputs();

    auto finish = [&](const Vec& theta, double residual) {
        out.best_residual = residual;
        if (residual < opts.tol_success) {
            out.verdict = Verdict::Found;
            out.orientation = Orientation(share_basis(ds), problem.coeffs(theta), a.identity(), residual);
        } else if (residual > opts.tol_fail) {
            out.verdict = Verdict::NotFound;
        } else {
            out.verdict = Verdict::Inconclusive;
        }
    };

    if (problem.inputs() == 0) {
        // J = 0 is the only candidate; the verdict is the size of the brackets
        const double r = problem.max_residual(Vec(0));
        finish(Vec(0), r);
        if (out.verdict != Verdict::Found) {
            std::ostringstream msg;
            msg << (ds.dimension() == 0 ? "no derivations" : "constraints force J = 0")
                << "; max ‖[L_a, L_b]‖ over basis pairs = " << r;
            out.obstruction = msg.str();
        }
        return out;
    }

    const int threads = resolve_threads(opts.threads);
    constexpr int kBatch = 8;
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(opts.restarts));
    Vec best_theta;
    double best = std::numeric_limits<double>::infinity();
    for (int start = 0; start < opts.restarts; start += kBatch) {
        const int stop = std::min(opts.restarts, start + kBatch);
        const int workers = std::min(threads, stop - start);
        if (workers <= 1) {
            for (int r = start; r < stop; ++r) outcomes[static_cast<std::size_t>(r)] = run_restart(problem, opts, r);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    for (int r = start + w; r < stop; r += workers) {
                        outcomes[static_cast<std::size_t>(r)] = run_restart(problem, opts, r);
                    }
                });
            }
            for (auto& t : pool) t.join();
        }
        for (int r = start; r < stop; ++r) {
            const auto& o = outcomes[static_cast<std::size_t>(r)];
            if (o.residual < best) {
                best = o.residual;
                best_theta = o.theta;
                out.best_restart = r;
            }
        }
        out.restarts_run = stop;
        if (best < opts.tol_success) break;
    }
    finish(best_theta, best);
    return out;
}

Mat extend_cone_map(const AlgebraSpec& a, const std::function<Mat(const Element&)>& j_on_cone, const Element& v,
                    std::uint64_t seed) {
    a.check_element(v);
    Rng rng = make_rng(seed, 0);
    for (int s = 0; s < 3; ++s) {
        const Element w1 = random_interior(a, rng);
        const Element w2 = random_interior(a, rng);
        const Mat j1 = j_on_cone(w1);
        const Mat j2 = j_on_cone(w2);
        const double scale = 1.0 + j1.norm() + j2.norm();
        const double additivity = (j_on_cone(w1 + w2) - j1 - j2).norm();
        const double homogeneity = (j_on_cone(2.5 * w1) - 2.5 * j1).norm();
        if (additivity > 1e-8 * scale || homogeneity > 1e-8 * scale) {
            std::ostringstream msg;
            msg << "map on the cone is not additive/positively homogeneous (additivity residual " << additivity
                << ", homogeneity residual " << homogeneity << ")";
            throw NotAdditiveError(msg.str());
        }
    }
    const double mu = 2.0 * order_unit_norm(a, v);
    if (mu == 0.0) {
        const Mat je = j_on_cone(a.identity());
        return Mat::Zero(je.rows(), je.cols());
    }
    const Mat at_mu = j_on_cone(v + mu * a.identity()) - j_on_cone(mu * a.identity());
    const Mat at_2mu = j_on_cone(v + 2.0 * mu * a.identity()) - j_on_cone(2.0 * mu * a.identity());
    if ((at_mu - at_2mu).norm() > 1e-8 * (1.0 + at_mu.norm())) {
        throw NotAdditiveError("extension J(v + μe) − J(μe) depends on μ");
    }
    return at_mu;
}

TransportResult transport_orientation(const AlgebraSpec& a, const Orientation& j, const Element& u) {
    a.check_element(u, "base point");
    if (positivity(a, u) != Positivity::Interior) {
        throw PreconditionError("transport_orientation: target base point is not interior");
    }
    TransportResult out;
    out.g = transitive_map(a, u, a.identity());
    const Mat ginv = out.g.inverse();
    auto conj = std::make_shared<std::vector<Mat>>();
    for (const auto& d : j.basis()) conj->push_back(ginv * d * out.g);
    out.transported = Orientation(std::move(conj), j.coeffs() * out.g, u);

    const int n = a.dim();
    auto moved_l = [&](const Element& x) -> Mat { return ginv * l_operator(a, out.g * x) * out.g; };
    for (int i = 0; i < n; ++i) {
        const Mat ji = out.transported(Vec::Unit(n, i));
        for (double t : {1.0, 0.1}) {
            out.fixes_base_residual = std::max(out.fixes_base_residual, (linalg::expm(t * ji) * u - u).norm());
        }
        for (int k = 0; k < n; ++k) {
            const Mat lhs = out.transported(ji.col(k));
            const Mat rhs = linalg::bracket(moved_l(Vec::Unit(n, k)), moved_l(Vec::Unit(n, i)));
            out.constraint_residual = std::max(out.constraint_residual, (lhs - rhs).norm());
        }
    }
    return out;
}

}  // namespace conelab
