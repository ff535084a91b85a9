#include "conelab/complex.hpp"

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
constexpr cd kI(0.0, 1.0);

CVec random_complex(const AlgebraSpec& a, Rng& rng) {
    const Vec re = random_element(a, rng);
    const Vec im = random_element(a, rng);
    return re.cast<cd>() + kI * im.cast<cd>();
}

// τ-norm extended to complex coordinates
double tau_norm(const AlgebraSpec& a, const CVec& z) { return (a.trace_factor().cast<cd>() * z).norm(); }

}  // namespace

ComplexAlgebra::ComplexAlgebra(std::shared_ptr<const AlgebraSpec> base, Orientation j)
    : base_(std::move(base)), j_(std::move(j)) {
    const int n = base_->dim();
    if (j_.dim() != n) throw InputError("orientation dimension does not match the algebra");
    left_.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        left_.push_back(base_->basis_operator(k).cast<cd>() - kI * j_(Vec::Unit(n, k)).cast<cd>());
    }
}

CMat ComplexAlgebra::lambda(const CVec& z) const {
    const int n = dim();
    if (z.size() != n) throw InputError("complex element has the wrong dimension");
    CMat out = CMat::Zero(n, n);
    for (int k = 0; k < n; ++k) out += z(k) * left_[static_cast<std::size_t>(k)];
    return out;
}

CMat ComplexAlgebra::lambda_orthonormal(const CVec& z) const {
    return base_->trace_factor().cast<cd>() * lambda(z) * base_->trace_factor_inverse().cast<cd>();
}

double ComplexAlgebra::norm(const CVec& z) const { return linalg::op_norm(lambda_orthonormal(z)); }

ComplexAlgebra complexify(const AlgebraSpec& a, const Orientation& j, bool check) {
    if (check) {
        const auto rep = verify_orientation(a, j, 1e-8);
        if (!rep.pass) {
            std::ostringstream msg;
            msg << "complexify: orientation fails verification (max residual " << rep.max_residual() << ")";
            throw PreconditionError(msg.str());
        }
    }
    return ComplexAlgebra(std::make_shared<const AlgebraSpec>(a), j);
}

double associativity_residual(const ComplexAlgebra& c) {
    const int n = c.dim();
    const AlgebraSpec& a = c.base();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // (b_i b_j) z − b_i (b_j z) for all basis z at once
            const CMat assoc = c.lambda(c.left(i).col(j)) - c.left(i) * c.left(j);
            for (int k = 0; k < n; ++k) worst = std::max(worst, tau_norm(a, assoc.col(k)));
        }
    }
    return worst;
}

CstarReport cstar_identity_check(const ComplexAlgebra& c, int samples, std::uint64_t seed, double tol) {
    const double assoc = associativity_residual(c);
    if (assoc > 1e-8) {
        std::ostringstream msg;
        msg << "cstar_identity_check: product is not associative (residual " << assoc << ")";
        throw PreconditionError(msg.str());
    }
    const int n = c.dim();
    const AlgebraSpec& a = c.base();
    CMat flat(static_cast<Eigen::Index>(n) * n, n);
    for (int k = 0; k < n; ++k) flat.col(k) = Eigen::Map<const CVec>(c.left(k).data(), c.left(k).size());
    const Eigen::JacobiSVD<CMat> svd(flat);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) <= 1e-10 * std::max(1.0, sv(0))) throw StructuralError("left-regular representation is not faithful");

    CstarReport out;
    out.tolerance = tol;
    out.samples = samples;
    out.unit_norm = std::abs(c.norm(c.unit()) - 1.0);
    Rng rng = make_rng(seed, 0);
    for (int s = 0; s < samples; ++s) {
        const CVec z = random_complex(a, rng);
        const CVec zs = ComplexAlgebra::star(z);
        const CMat lz = c.lambda_orthonormal(z);
        const CMat lzs = c.lambda_orthonormal(zs);
        const double nz = linalg::op_norm(lz);
        const CVec sq = c.product(zs, z);
        out.cstar_identity = std::max(out.cstar_identity, std::abs(c.norm(sq) - nz * nz) / (1.0 + nz * nz));
        out.star_isometry = std::max(out.star_isometry, std::abs(linalg::op_norm(lzs) - nz) / (1.0 + nz));
        out.adjoint = std::max(out.adjoint, (lzs - lz.adjoint()).norm() / (1.0 + nz));
        out.hermitian_square = std::max(out.hermitian_square, sq.imag().norm() / (1.0 + sq.norm()));
        const auto values = spectral_values(a, sq.real());
        const double scale = 1.0 + std::max(std::abs(values.front()), std::abs(values.back()));
        out.min_square_spectrum = std::min(out.min_square_spectrum, values.front() / scale);
    }
    out.pass = out.unit_norm <= tol && out.cstar_identity <= tol && out.star_isometry <= tol && out.adjoint <= tol &&
               out.hermitian_square <= tol && out.min_square_spectrum >= -1e-9;
    return out;
}

RoundtripReport positive_cone_roundtrip(const ComplexAlgebra& c, int samples, std::uint64_t seed) {
    const AlgebraSpec& a = c.base();
    RoundtripReport out;
    Rng rng = make_rng(seed, 0);
    for (int s = 0; s < samples; ++s) {
        const CVec z = random_complex(a, rng);
        const CVec sq = c.product(ComplexAlgebra::star(z), z);
        ++out.square_samples;
        if (sq.imag().norm() > 1e-9 * (1.0 + sq.norm())) continue;
        if (positivity(a, sq.real()) != Positivity::Outside) ++out.square_positive;
    }
    const int factor_samples = std::max(1, samples / 10);
    for (int s = 0; s < factor_samples; ++s) {
        const Element x = random_interior(a, rng);
        const CVec root = sqrt(a, x).cast<cd>();
        const CVec back = c.product(ComplexAlgebra::star(root), root);
        out.factor_residual = std::max(out.factor_residual, (back - x.cast<cd>()).norm() / (1.0 + x.norm()));
        ++out.factor_samples;
    }
    out.agreement_rate = out.square_samples > 0 ? static_cast<double>(out.square_positive) / out.square_samples : 1.0;
    out.pass = out.square_positive == out.square_samples && out.factor_residual <= 1e-8;
    return out;
}

}  // namespace conelab
