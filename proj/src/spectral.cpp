#include "conelab/spectral.hpp"

#include "conelab/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

namespace conelab {

namespace {
std::atomic<double> g_merge_tol{1e-7};
}  // namespace

double default_merge_tol() noexcept { return g_merge_tol.load(std::memory_order_relaxed); }

void set_default_merge_tol(double tol) {
    if (!(tol > 0.0 && tol < 1.0)) throw InputError("spectral merge tolerance must lie in (0, 1)");
    g_merge_tol.store(tol, std::memory_order_relaxed);
}

namespace {

// Arnoldi on L_x from e in the τ-inner product. Returns the projected matrix H,
// whose eigenvalues are the roots of the minimal polynomial of x.
Mat krylov_projection(const AlgebraSpec& a, const Mat& lx, double breakdown) {
    const int n = a.dim();
    std::vector<Vec> q;
    q.push_back(a.identity() / a.norm(a.identity()));
    Mat h = Mat::Zero(n + 1, n);
    int m = 0;
    while (true) {
        Vec w = lx * q[static_cast<std::size_t>(m)];
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= m; ++i) {
                const double c = a.inner(q[static_cast<std::size_t>(i)], w);
                h(i, m) += c;
                w -= c * q[static_cast<std::size_t>(i)];
            }
        }
        ++m;
        const double beta = a.norm(w);
        if (m == n || beta <= breakdown) break;
        h(m, m - 1) = beta;
        q.push_back(w / beta);
    }
    return h.topLeftCorner(m, m);
}

double root_scale(const std::vector<std::complex<double>>& roots) {
    double s = 0.0;
    for (const auto& r : roots) s = std::max(s, std::abs(r));
    return 1.0 + s;
}

std::vector<double> checked_real_roots(const std::vector<std::complex<double>>& roots,
                                       const SpectralOptions& opts) {
    const double scale = root_scale(roots);
    std::vector<double> out;
    out.reserve(roots.size());
    for (const auto& r : roots) {
        if (std::abs(r.imag()) > opts.imag_tol * scale) {
            std::ostringstream msg;
            msg << "minimal polynomial has a non-real root " << r.real() << (r.imag() < 0 ? " - " : " + ")
                << std::abs(r.imag()) << "i";
            throw DegenerateSpectrumError(msg.str(), std::abs(r.imag()));
        }
        out.push_back(r.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct Clusters {
    std::vector<double> values;
    double min_gap = std::numeric_limits<double>::infinity();
    bool merged = false;
};

Clusters merge_clusters(const std::vector<double>& sorted, double tol) {
    Clusters c;
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0) {
            const double gap = sorted[i] - sorted[i - 1];
            c.min_gap = std::min(c.min_gap, gap);
            if (gap > tol) {
                c.values.push_back(sum / count);
                sum = 0.0;
                count = 0;
            } else {
                c.merged = true;
            }
        }
        sum += sorted[i];
        ++count;
    }
    if (count > 0) c.values.push_back(sum / count);
    return c;
}

double merge_tolerance(const std::vector<double>& sorted, const SpectralOptions& opts) {
    double m = 0.0;
    for (double v : sorted) m = std::max(m, std::abs(v));
    return opts.merge_tol * (1.0 + m);
}

}  // namespace

std::vector<std::complex<double>> minimal_polynomial_roots(const AlgebraSpec& a, const Element& x,
                                                           const SpectralOptions& opts) {
    const Mat lx = l_operator(a, x);
    const Mat h = krylov_projection(a, lx, opts.krylov_tol * std::max(1.0, lx.norm()));
    std::vector<std::complex<double>> roots;
    const double hn = std::max(1.0, h.norm());
    if ((h - h.transpose()).norm() <= 1e-10 * hn) {
        Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (h + h.transpose()), Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) roots.emplace_back(eig.eigenvalues()(i), 0.0);
    } else {
        Eigen::EigenSolver<Mat> eig(h, false);
        for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) roots.push_back(eig.eigenvalues()(i));
    }
    return roots;
}

std::vector<double> spectral_values(const AlgebraSpec& a, const Element& x, const SpectralOptions& opts) {
    const auto sorted = checked_real_roots(minimal_polynomial_roots(a, x, opts), opts);
    return merge_clusters(sorted, merge_tolerance(sorted, opts)).values;
}

SpectralDecomposition spectral(const AlgebraSpec& a, const Element& x, const SpectralOptions& opts) {
    const auto sorted = checked_real_roots(minimal_polynomial_roots(a, x, opts), opts);
    const Clusters clusters = merge_clusters(sorted, merge_tolerance(sorted, opts));

    const Mat lx = l_operator(a, x);
    const int n = a.dim();
    SpectralDecomposition out;
    out.values = clusters.values;
    Element recon = Element::Zero(n);
    Element unit = Element::Zero(n);
    for (std::size_t i = 0; i < clusters.values.size(); ++i) {
        Element f = a.identity();
        for (std::size_t j = 0; j < clusters.values.size(); ++j) {
            if (j == i) continue;
            const double li = clusters.values[i];
            const double lj = clusters.values[j];
            f = (lx * f - lj * f) / (li - lj);
        }
        recon += clusters.values[i] * f;
        unit += f;
        out.frame.push_back(std::move(f));
    }
    out.residual = a.norm(recon - x);
    const double unit_residual = a.norm(unit - a.identity());
    const double limit = opts.reconstruction_tol * (1.0 + a.norm(x));
    if (out.residual > limit || unit_residual > opts.reconstruction_tol * (1.0 + a.norm(a.identity()))) {
        std::ostringstream msg;
        msg << "spectral frame does not reconstruct the element (residual " << out.residual
            << (clusters.merged ? ", clustered roots merged" : "") << ", smallest root gap " << clusters.min_gap
            << ")";
        throw DegenerateSpectrumError(msg.str(), clusters.min_gap);
    }
    return out;
}

Element functional_calculus(const AlgebraSpec& a, const Element& x, const std::function<double(double)>& f,
                            const SpectralOptions& opts) {
    const auto dec = spectral(a, x, opts);
    Element out = Element::Zero(a.dim());
    for (std::size_t i = 0; i < dec.values.size(); ++i) {
        const double fv = f(dec.values[i]);
        if (!std::isfinite(fv)) {
            std::ostringstream msg;
            msg << "function undefined at spectral value " << dec.values[i];
            throw DomainError(msg.str(), dec.values[i]);
        }
        out += fv * dec.frame[i];
    }
    return out;
}

namespace {

double spectral_radius_scale(const SpectralDecomposition& dec) {
    double m = 0.0;
    for (double v : dec.values) m = std::max(m, std::abs(v));
    return std::max(1.0, m);
}

Element apply_checked(const AlgebraSpec& a, const Element& x, const char* what,
                      const std::function<bool(double, double)>& admissible,
                      const std::function<double(double)>& f) {
    const auto dec = spectral(a, x);
    const double scale = spectral_radius_scale(dec);
    Element out = Element::Zero(a.dim());
    for (std::size_t i = 0; i < dec.values.size(); ++i) {
        if (!admissible(dec.values[i], scale)) {
            std::ostringstream msg;
            msg << what << " undefined at spectral value " << dec.values[i];
            throw DomainError(msg.str(), dec.values[i]);
        }
        out += f(dec.values[i]) * dec.frame[i];
    }
    return out;
}

}  // namespace

Element inverse(const AlgebraSpec& a, const Element& x, double tol) {
    return apply_checked(
        a, x, "inverse", [tol](double v, double s) { return std::abs(v) > tol * s; },
        [](double v) { return 1.0 / v; });
}

Element sqrt(const AlgebraSpec& a, const Element& x, double tol) {
    return apply_checked(
        a, x, "sqrt", [tol](double v, double s) { return v >= -tol * s; },
        [](double v) { return std::sqrt(std::max(0.0, v)); });
}

Element log(const AlgebraSpec& a, const Element& x, double tol) {
    return apply_checked(
        a, x, "log", [tol](double v, double s) { return v > tol * s; }, [](double v) { return std::log(v); });
}

Element real_power(const AlgebraSpec& a, const Element& x, double t, double tol) {
    return apply_checked(
        a, x, "power", [tol](double v, double s) { return v > tol * s; },
        [t](double v) { return std::pow(v, t); });
}

}  // namespace conelab
