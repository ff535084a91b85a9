#include "conelab/algebra.hpp"

#include "conelab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace conelab {

namespace {

double max_abs(const std::vector<Mat>& tensor) {
    double m = 0.0;
    for (const auto& c : tensor) m = std::max(m, c.cwiseAbs().maxCoeff());
    return m;
}

}  // namespace

Mat default_trace_form(const std::vector<Mat>& structure) {
    const auto n = static_cast<Eigen::Index>(structure.size());
    // trace(L_{b_k}) = Σ_j c[j][k][j]
    Vec traces = Vec::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index j = 0; j < n; ++j) traces(k) += structure[static_cast<std::size_t>(j)](k, j);
    }
    Mat form = Mat::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) form += traces(k) * structure[static_cast<std::size_t>(k)];
    return form;
}

AlgebraSpec::AlgebraSpec(std::string name, std::vector<Mat> structure, Vec identity,
                         std::optional<Mat> trace_form, std::vector<CMat> realization)
    : name_(std::move(name)),
      dim_(static_cast<int>(identity.size())),
      structure_(std::move(structure)),
      identity_(std::move(identity)),
      realization_(std::move(realization)) {
    if (dim_ < 1) throw InputError("algebra '" + name_ + "': dimension must be positive");
    if (static_cast<int>(structure_.size()) != dim_) {
        throw InputError("algebra '" + name_ + "': structure tensor has " +
                         std::to_string(structure_.size()) + " slices, expected " + std::to_string(dim_));
    }
    for (const auto& c : structure_) {
        if (c.rows() != dim_ || c.cols() != dim_) {
            throw InputError("algebra '" + name_ + "': structure slice is not dim×dim");
        }
        if (!c.allFinite()) throw InputError("algebra '" + name_ + "': non-finite structure constant");
    }

    const double scale = 1.0 + max_abs(structure_);
    for (int k = 0; k < dim_; ++k) {
        Mat& c = structure_[static_cast<std::size_t>(k)];
        const double asym = (c - c.transpose()).cwiseAbs().maxCoeff();
        if (asym > 1e-12 * scale) {
            Eigen::Index i = 0, j = 0;
            (c - c.transpose()).cwiseAbs().maxCoeff(&i, &j);
            std::ostringstream msg;
            msg << "algebra '" << name_ << "': structure constants violate symmetry at c[" << k << "]["
                << i << "][" << j << "] = " << c(i, j) << " vs c[" << k << "][" << j << "][" << i
                << "] = " << c(j, i);
            throw InputError(msg.str());
        }
        c = 0.5 * (c + c.transpose()).eval();
    }

    basis_ops_.assign(static_cast<std::size_t>(dim_), Mat::Zero(dim_, dim_));
    for (int k = 0; k < dim_; ++k) {
        for (int i = 0; i < dim_; ++i) {
            basis_ops_[static_cast<std::size_t>(i)].row(k) = structure_[static_cast<std::size_t>(k)].row(i);
        }
    }

    Mat le = Mat::Zero(dim_, dim_);
    for (int i = 0; i < dim_; ++i) le += identity_(i) * basis_ops_[static_cast<std::size_t>(i)];
    const double unit_err = (le - Mat::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
    if (unit_err > 1e-10 * scale) {
        std::ostringstream msg;
        msg << "algebra '" << name_ << "': identity vector is not a unit (max |L_e - I| = " << unit_err << ")";
        throw InputError(msg.str());
    }

    trace_form_ = trace_form ? *trace_form : default_trace_form(structure_);
    if (trace_form_.rows() != dim_ || trace_form_.cols() != dim_) {
        throw InputError("algebra '" + name_ + "': trace form is not dim×dim");
    }
    const double tscale = trace_form_.cwiseAbs().maxCoeff();
    if (!(tscale > 0.0) || (trace_form_ - trace_form_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * tscale) {
        throw InputError("algebra '" + name_ + "': trace form is not symmetric");
    }
    trace_form_ = 0.5 * (trace_form_ + trace_form_.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> eig(trace_form_ / tscale, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() <= 1e-12) {
        std::ostringstream msg;
        msg << "algebra '" << name_ << "': trace form is not positive definite (normalised min eigenvalue "
            << eig.eigenvalues().minCoeff() << ")";
        throw InputError(msg.str());
    }
    Eigen::LLT<Mat> llt(trace_form_);
    trace_factor_ = llt.matrixU();
    trace_factor_inv_ = trace_factor_.triangularView<Eigen::Upper>().solve(Mat::Identity(dim_, dim_));

    if (!realization_.empty() && static_cast<int>(realization_.size()) != dim_) {
        throw InputError("algebra '" + name_ + "': realization size does not match dimension");
    }
}

double AlgebraSpec::norm(const Vec& x) const { return std::sqrt(std::max(0.0, inner(x, x))); }

void AlgebraSpec::check_element(const Vec& x, const char* what) const {
    if (x.size() != dim_) {
        throw InputError(std::string(what) + " has length " + std::to_string(x.size()) +
                         " but algebra '" + name_ + "' has dimension " + std::to_string(dim_));
    }
}

Mat l_operator(const AlgebraSpec& a, const Element& x) {
    a.check_element(x);
    Mat l = Mat::Zero(a.dim(), a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        if (x(i) != 0.0) l.noalias() += x(i) * a.basis_operator(i);
    }
    return l;
}

Element product(const AlgebraSpec& a, const Element& x, const Element& y) {
    a.check_element(y);
    return l_operator(a, x) * y;
}

Mat quad_rep(const AlgebraSpec& a, const Element& x) {
    const Mat lx = l_operator(a, x);
    return 2.0 * lx * lx - l_operator(a, lx * x);
}

Element power(const AlgebraSpec& a, const Element& x, int k) {
    if (k < 0) throw InputError("power: negative exponent");
    const Mat lx = l_operator(a, x);
    Element p = a.identity();
    for (int i = 0; i < k; ++i) p = lx * p;
    return p;
}

Mat center(const AlgebraSpec& a) {
    const int n = a.dim();
    // column k: stacked vec([L_k, L_i]) over i
    Mat system(static_cast<Eigen::Index>(n) * n * n, n);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            const Mat br = linalg::bracket(a.basis_operator(k), a.basis_operator(i));
            system.col(k).segment(static_cast<Eigen::Index>(i) * n * n, n * n) = linalg::flatten(br);
        }
    }
    const Mat kernel = linalg::null_space(system, 1e-10);

    // τ-Gram–Schmidt, e first
    std::vector<Vec> basis;
    auto absorb = [&](Vec v) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) v -= a.inner(q, v) * q;
        }
        const double nv = a.norm(v);
        if (nv > 1e-8) basis.push_back(v / nv);
    };
    absorb(a.identity());
    for (Eigen::Index c = 0; c < kernel.cols() && static_cast<Eigen::Index>(basis.size()) < kernel.cols(); ++c) {
        absorb(kernel.col(c));
    }
    Mat out(n, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t c = 0; c < basis.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = basis[c];
    return out;
}

double center_residual(const AlgebraSpec& a, const Element& z) {
    const Mat lz = l_operator(a, z);
    double worst = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        worst = std::max(worst, linalg::bracket(lz, a.basis_operator(i)).norm());
    }
    return worst;
}

double power_associativity_residual(const AlgebraSpec& a, const Element& x, int max_total) {
    std::vector<Element> powers{a.identity()};
    const Mat lx = l_operator(a, x);
    for (int k = 1; k <= max_total; ++k) powers.push_back(lx * powers.back());
    double worst = 0.0;
    for (int i = 1; i < max_total; ++i) {
        for (int j = i; i + j <= max_total; ++j) {
            const Element lhs = product(a, powers[static_cast<std::size_t>(i)], powers[static_cast<std::size_t>(j)]);
            const Element& rhs = powers[static_cast<std::size_t>(i + j)];
            worst = std::max(worst, a.norm(lhs - rhs) / (1.0 + a.norm(rhs)));
        }
    }
    return worst;
}

double jordan_residual(const AlgebraSpec& a, const Element& x, const Element& y) {
    const Element x2 = product(a, x, x);
    const Element lhs = product(a, x, product(a, y, x2));
    const Element rhs = product(a, product(a, x, y), x2);
    return a.norm(lhs - rhs);
}

}  // namespace conelab
