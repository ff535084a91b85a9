#include "conelab/order.hpp"

#include "conelab/errors.hpp"
#include "conelab/sampling.hpp"
#include "conelab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace conelab {

const char* to_string(Positivity p) {
    switch (p) {
        case Positivity::Interior: return "interior";
        case Positivity::Boundary: return "boundary";
        case Positivity::Outside: return "outside";
    }
    return "?";
}

namespace {

double max_abs_value(const std::vector<double>& values) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

double order_unit_norm(const AlgebraSpec& a, const Element& x) { return max_abs_value(spectral_values(a, x)); }

Positivity positivity(const AlgebraSpec& a, const Element& x) {
    const auto values = spectral_values(a, x);
    const double tol = 1e-9 * (1.0 + max_abs_value(values));
    const double lo = values.front();
    if (lo > tol) return Positivity::Interior;
    if (lo >= -tol) return Positivity::Boundary;
    return Positivity::Outside;
}

double order_unit_seminorm(const AlgebraSpec& a, const Element& base, const Element& x) {
    a.check_element(base, "base");
    a.check_element(x);
    if (positivity(a, base) != Positivity::Interior) {
        throw PreconditionError("order_unit_seminorm: base point is not in the interior of the cone");
    }
    if (base == a.identity()) return order_unit_norm(a, x);
    const Element root_inv = real_power(a, base, -0.5);
    return order_unit_norm(a, quad_rep(a, root_inv) * x);
}

ProperReport properness_check(const AlgebraSpec& a) {
    const Mat beta = default_trace_form(a.structure());
    Eigen::SelfAdjointEigenSolver<Mat> eig(beta);
    const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
    std::vector<Vec> confirmed;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        if (std::abs(eig.eigenvalues()(i)) > 1e-10 * scale) continue;
        const Vec v = eig.eigenvectors().col(i);
        // basis probe: an element of the seminorm kernel has an all-zero spectrum
        if (order_unit_norm(a, v) <= 1e-8 * (1.0 + a.norm(v))) confirmed.push_back(v);
    }
    ProperReport out;
    out.kernel = Mat(a.dim(), static_cast<Eigen::Index>(confirmed.size()));
    for (std::size_t c = 0; c < confirmed.size(); ++c) out.kernel.col(static_cast<Eigen::Index>(c)) = confirmed[c];
    out.proper = confirmed.empty();
    return out;
}

NormalityEstimate normality_estimate(const AlgebraSpec& a, std::uint64_t seed, AmbientNorm norm, int directions,
                                     int bisection_steps, int pair_samples) {
    auto ambient = [&](const Element& v) {
        return norm == AmbientNorm::Trace ? a.norm(v) : order_unit_norm(a, v);
    };
    Rng rng = make_rng(seed, 0);
    NormalityEstimate out;
    out.directions = directions;
    out.pair_samples = pair_samples;
    out.inner_radius = std::numeric_limits<double>::infinity();
    out.lower = std::numeric_limits<double>::infinity();
    out.upper = 0.0;

    std::vector<Element> dirs;
    for (int i = 0; i < a.dim() && static_cast<int>(dirs.size()) < directions; ++i) dirs.push_back(Vec::Unit(a.dim(), i));
    while (static_cast<int>(dirs.size()) < directions) dirs.push_back(random_element(a, rng));

    for (auto& u : dirs) {
        const double un = ambient(u);
        if (un == 0.0) continue;
        u /= un;
        const double ue = order_unit_norm(a, u);
        out.lower = std::min(out.lower, ue);
        out.upper = std::max(out.upper, ue);

        // largest t with e − t·u interior
        double lo = 0.0;
        double hi = 1.0;
        while (positivity(a, a.identity() - hi * u) == Positivity::Interior && hi < 1e12) {
            lo = hi;
            hi *= 2.0;
        }
        for (int s = 0; s < bisection_steps; ++s) {
            const double mid = 0.5 * (lo + hi);
            if (positivity(a, a.identity() - mid * u) == Positivity::Interior) lo = mid;
            else hi = mid;
        }
        out.inner_radius = std::min(out.inner_radius, lo);
    }
    for (const auto& u : dirs) {
        out.bound_violation = std::max(out.bound_violation, order_unit_norm(a, u) - 2.0 / out.inner_radius);
    }

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    out.gamma = 1.0;  // x = y
    for (int s = 0; s < pair_samples; ++s) {
        const Element z = random_element(a, rng);
        const Element y = product(a, z, z);
        const double yn = ambient(y);
        if (yn == 0.0) continue;
        // 0 ≤ w ≤ e, then x = U_{y^{1/2}} w satisfies 0 ≤ x ≤ y
        const auto dec = spectral(a, random_element(a, rng));
        Element w = Element::Zero(a.dim());
        for (const auto& f : dec.frame) w += unif(rng) * f;
        const Element x = quad_rep(a, conelab::sqrt(a, y)) * w;
        out.gamma = std::max(out.gamma, ambient(x) / yn);
    }
    return out;
}

namespace {


StateSeparation separate_unchecked(const AlgebraSpec& a, const Element& x, int sample_count, std::uint64_t seed) {
    Rng rng = make_rng(seed, 1);
    StateSeparation out;
    out.min_value = std::numeric_limits<double>::infinity();
    auto consider = [&](const Element& p) {
        const double tp = a.inner(a.identity(), p);
        if (!(tp > 0.0)) return;
        ++out.states;
        const double v = a.inner(x, p) / tp;
        if (v < out.min_value) {
            out.min_value = v;
            out.witness.coords = p / tp;
        }
    };
    for (int i = 0; i < sample_count; ++i) {
        const Element q = random_element(a, rng);
        consider(product(a, q, q));  // U_q e = q²
    }

    // q = c^(2^(k-1)) with c = s·e − x ≥ 0, so U_q e = c^(2^k) concentrates on
    // the smallest spectral values of x.
    const double s = l_operator(a, x).norm();
    Element d = s * a.identity() - x;
    const double dn0 = a.norm(d);
    if (dn0 > 0.0) {
        d /= dn0;
        for (int k = 0; k < 64; ++k) {
            Element next = product(a, d, d);
            const double nn = a.norm(next);
            if (!(nn > 0.0)) break;
            next /= nn;
            const double change = a.norm(next - d);
            d = std::move(next);
            if (change < 1e-15) break;
        }
        consider(d);
    }
    out.positive = out.min_value > 0.0;
    return out;
}

}  // namespace

StateSeparation state_separation(const AlgebraSpec& a, const Element& x, int sample_count, std::uint64_t seed) {
    a.check_element(x);
    if (!properness_check(a).proper) {
        throw PreconditionError("state_separation: the cone is not proper (‖·‖_e has a nontrivial kernel)");
    }
    return separate_unchecked(a, x, sample_count, seed);
}

OrderReport order_report(const AlgebraSpec& a, std::uint64_t seed, int points, int states) {
    OrderReport out;
    const ProperReport proper = properness_check(a);
    out.seminorm_kernel_dim = static_cast<int>(proper.kernel.cols());
    const NormalityEstimate normal = normality_estimate(a, seed);
    out.normality_gamma = normal.gamma;
    out.inner_radius_r = normal.inner_radius;
    out.lemma_bound_violation = std::max(0.0, normal.bound_violation);
    out.state_sample_size = states + 1;
    out.points = points;

    Rng rng = make_rng(seed, 2);
    for (int i = 0; i < points; ++i) {
        const Element x = random_element(a, rng);
        const auto values = spectral_values(a, x);
        const double xe = max_abs_value(values);
        const Positivity spec = positivity(a, x);
        const bool sep = proper.proper && separate_unchecked(a, x, states, seed + static_cast<std::uint64_t>(i)).positive;
        const bool agree = (spec == Positivity::Interior) == sep;
        // verdicts within 1e-7 of the boundary are not counted against either test
        if (agree || std::abs(values.front()) <= 1e-7 * (1.0 + xe)) ++out.agreements;
        else ++out.disagreements;

        if (i < 100) {
            const Element y = random_element(a, rng);
            const double ye = order_unit_norm(a, y);
            out.triangle_residual = std::max(out.triangle_residual, order_unit_norm(a, x + y) - xe - ye);
            const double sq = order_unit_norm(a, product(a, x, x));
            out.square_norm_residual = std::max(out.square_norm_residual, std::abs(sq - xe * xe) / (1.0 + xe * xe));
        }
    }
    return out;
}

}  // namespace conelab
