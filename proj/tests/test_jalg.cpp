#include "oracles.hpp"

#include "conelab/algebra.hpp"
#include "conelab/catalog.hpp"
#include "conelab/errors.hpp"
#include "conelab/jb_check.hpp"
#include "conelab/sampling.hpp"
#include "conelab/spectral.hpp"

#include <gtest/gtest.h>

using namespace conelab;

namespace {

Vec herm_coords(const std::vector<oracle::CMat>& basis, const oracle::CMat& m) {
    return oracle::coords_of(basis, m).real();
}

std::vector<AlgebraSpec> small_catalog() {
    return {sym_real(2), sym_real(3), herm_complex(2), herm_complex(3), herm_quat(1), herm_quat(2),
            spin_factor(2), spin_factor(5), abelian(1), abelian(3)};
}

}  // namespace

TEST(Catalog, Dimensions) {
    EXPECT_EQ(sym_real(2).dim(), 3);
    EXPECT_EQ(sym_real(4).dim(), 10);
    EXPECT_EQ(herm_complex(2).dim(), 4);
    EXPECT_EQ(herm_complex(3).dim(), 9);
    EXPECT_EQ(herm_quat(1).dim(), 1);
    EXPECT_EQ(herm_quat(2).dim(), 6);
    for (int k = 1; k <= 6; ++k) EXPECT_EQ(spin_factor(k).dim(), k + 1);
    EXPECT_EQ(abelian(5).dim(), 5);
    EXPECT_EQ(direct_sum(herm_complex(2), abelian(1)).dim(), 5);
}

TEST(Catalog, SelectorsAndBadParameters) {
    EXPECT_EQ(parse_catalog_selector("direct_sum(herm_complex(2),spin(3))").dim(), 8);
    EXPECT_EQ(catalog("spin", {4}).dim(), 5);
    EXPECT_THROW(catalog("sym_real", {0}), InputError);
    EXPECT_THROW(catalog("octonions", {3}), InputError);
    EXPECT_THROW(parse_catalog_selector("herm_complex(2"), InputError);
}

TEST(Catalog, MatrixStructureMatchesDenseOracle) {
    for (int n = 2; n <= 3; ++n) {
        for (bool cplx : {false, true}) {
            const AlgebraSpec a = cplx ? herm_complex(n) : sym_real(n);
            const auto basis = oracle::hermitian_basis(n, cplx);
            const auto c = oracle::jordan_structure(basis);
            ASSERT_EQ(static_cast<int>(c.size()), a.dim());
            for (int k = 0; k < a.dim(); ++k) EXPECT_LT((a.structure(k) - c[k]).cwiseAbs().maxCoeff(), 1e-14);
        }
    }
}

TEST(Product, IdentityActsAsUnit) {
    for (const auto& a : small_catalog()) {
        Rng rng = make_rng(5);
        const Element x = random_element(a, rng);
        EXPECT_LT((product(a, a.identity(), x) - x).norm(), 1e-14) << a.name();
        EXPECT_LT((l_operator(a, a.identity()) - Mat::Identity(a.dim(), a.dim())).norm(), 1e-14) << a.name();
    }
}

TEST(Product, SymReal2OffDiagonalTimesDiagonalVanishes) {
    const AlgebraSpec a = sym_real(2);
    const auto basis = oracle::hermitian_basis(2, false);
    oracle::CMat x(2, 2), y(2, 2);
    x << 0, 1, 1, 0;
    y << 1, 0, 0, -1;
    const Vec xv = herm_coords(basis, x);
    const Vec yv = herm_coords(basis, y);
    const Vec expected = herm_coords(basis, 0.5 * (x * y + y * x));
    EXPECT_LT(expected.norm(), 1e-15);
    EXPECT_LT(product(a, xv, yv).norm(), 1e-15);
}

TEST(Product, HermComplexRandomPairsMatchMatrices) {
    const AlgebraSpec a = herm_complex(3);
    const auto basis = oracle::hermitian_basis(3, true);
    Rng rng = make_rng(11);
    for (int t = 0; t < 20; ++t) {
        const Element x = random_element(a, rng);
        const Element y = random_element(a, rng);
        const oracle::CMat mx = oracle::to_matrix(basis, x);
        const oracle::CMat my = oracle::to_matrix(basis, y);
        EXPECT_LT((product(a, x, y) - herm_coords(basis, 0.5 * (mx * my + my * mx))).norm(), 1e-13);
    }
}

TEST(Product, SpinFactorFormula) {
    const AlgebraSpec a = spin_factor(3);
    Vec u(4), v(4);
    u << 0, 1, 2, -1;
    v << 0, 0.5, -1, 3;
    Vec expected = Vec::Zero(4);
    expected(0) = 0.5 - 2 - 3;
    EXPECT_LT((product(a, u, v) - expected).norm(), 1e-14);
    Rng rng = make_rng(3);
    for (int t = 0; t < 10; ++t) {
        const Element x = random_element(a, rng);
        const Element y = random_element(a, rng);
        EXPECT_LT((product(a, x, y) - oracle::spin_product(x, y)).norm(), 1e-13);
    }
}

TEST(LOperator, LinearAndEigenvalues) {
    const AlgebraSpec a = sym_real(2);
    Rng rng = make_rng(1);
    const Element x = random_element(a, rng);
    EXPECT_LT((l_operator(a, 2.5 * x) - 2.5 * l_operator(a, x)).norm(), 1e-13);

    Vec d(3);
    d << 1, 2, 0;  // diag(1, 2)
    Eigen::EigenSolver<Mat> es(l_operator(a, d));
    std::vector<double> ev;
    for (int i = 0; i < 3; ++i) ev.push_back(es.eigenvalues()(i).real());
    std::sort(ev.begin(), ev.end());
    EXPECT_NEAR(ev[0], 1.0, 1e-13);
    EXPECT_NEAR(ev[1], 1.5, 1e-13);
    EXPECT_NEAR(ev[2], 2.0, 1e-13);
}

TEST(Spectral, Identity) {
    const AlgebraSpec a = herm_complex(2);
    const auto s = spectral(a, a.identity());
    ASSERT_EQ(s.values.size(), 1u);
    EXPECT_NEAR(s.values[0], 1.0, 1e-12);
    EXPECT_LT((s.frame[0] - a.identity()).norm(), 1e-12);
}

TEST(Spectral, SpinFactorValues) {
    for (int k : {2, 3, 5}) {
        const AlgebraSpec a = spin_factor(k);
        Rng rng = make_rng(static_cast<std::uint64_t>(k));
        for (int t = 0; t < 10; ++t) {
            const Element x = random_element(a, rng);
            const double s = x(0);
            const double r = x.tail(k).norm();
            const auto v = spectral_values(a, x);
            ASSERT_EQ(v.size(), 2u);
            EXPECT_NEAR(v[0], s - r, 1e-10);
            EXPECT_NEAR(v[1], s + r, 1e-10);
        }
    }
}

TEST(Spectral, HermComplexMatchesEigenvalues) {
    const AlgebraSpec a = herm_complex(2);
    const auto basis = oracle::hermitian_basis(2, true);
    oracle::CMat m = oracle::CMat::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = 3;
    const auto v = spectral_values(a, herm_coords(basis, m));
    ASSERT_EQ(v.size(), 2u);
    EXPECT_NEAR(v[0], 1.0, 1e-12);
    EXPECT_NEAR(v[1], 3.0, 1e-12);

    const AlgebraSpec b = herm_complex(3);
    const auto basis3 = oracle::hermitian_basis(3, true);
    Rng rng = make_rng(8);
    for (int t = 0; t < 10; ++t) {
        const Element x = random_element(b, rng);
        Eigen::SelfAdjointEigenSolver<oracle::CMat> es(oracle::to_matrix(basis3, x));
        const auto vals = spectral_values(b, x);
        ASSERT_EQ(vals.size(), 3u);
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(vals[static_cast<std::size_t>(i)], es.eigenvalues()(i), 1e-9);
    }
}

TEST(Spectral, ReconstructionAndFrame) {
    for (const auto& a : small_catalog()) {
        Rng rng = make_rng(21);
        for (int t = 0; t < 10; ++t) {
            const Element x = random_element(a, rng);
            const auto s = spectral(a, x);
            Element sum = Element::Zero(a.dim());
            Element rebuilt = Element::Zero(a.dim());
            for (std::size_t i = 0; i < s.values.size(); ++i) {
                sum += s.frame[i];
                rebuilt += s.values[i] * s.frame[i];
                EXPECT_LT((product(a, s.frame[i], s.frame[i]) - s.frame[i]).norm(), 1e-9) << a.name();
            }
            EXPECT_LT((sum - a.identity()).norm(), 1e-9) << a.name();
            EXPECT_LT((rebuilt - x).norm(), 1e-9 * (1 + x.norm())) << a.name();
        }
    }
}

TEST(Spectral, DegenerateSpectrumRaises) {
    // Dual numbers R[ε]/ε²: ε has minimal polynomial λ², a merged double root.
    std::vector<Mat> c(2, Mat::Zero(2, 2));
    c[0](0, 0) = 1;
    c[1](0, 1) = c[1](1, 0) = 1;
    Vec e(2);
    e << 1, 0;
    const AlgebraSpec dual("dual", c, e, Mat::Identity(2, 2));
    Vec eps(2);
    eps << 0, 1;
    EXPECT_THROW(spectral(dual, eps), DegenerateSpectrumError);
    const auto v = spectral_values(dual, eps);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NEAR(v[0], 0.0, 1e-12);
}

TEST(Spectral, MergeToleranceKnob) {
    EXPECT_THROW(set_default_merge_tol(0.0), InputError);
    EXPECT_THROW(set_default_merge_tol(2.0), InputError);
    const double old = default_merge_tol();
    set_default_merge_tol(1e-3);
    const AlgebraSpec a = abelian(2);
    Vec x(2);
    x << 1.0, 1.0 + 1e-5;
    EXPECT_EQ(spectral_values(a, x).size(), 1u);
    set_default_merge_tol(old);
    EXPECT_EQ(spectral_values(a, x).size(), 2u);
}

TEST(FunctionalCalculus, InverseSqrtLog) {
    const AlgebraSpec a = sym_real(2);
    EXPECT_LT((inverse(a, a.identity()) - a.identity()).norm(), 1e-12);

    Vec d(3);
    d << 2, 4, 0;
    Vec expected(3);
    expected << 0.5, 0.25, 0;
    EXPECT_LT((inverse(a, d) - expected).norm(), 1e-12);

    const auto basis = oracle::hermitian_basis(2, false);
    Rng rng = make_rng(4);
    for (int t = 0; t < 10; ++t) {
        const Element x = random_element(a, rng);
        const oracle::CMat mx = oracle::to_matrix(basis, x);
        if (std::abs(mx.determinant()) > 1e-3) {
            EXPECT_LT((inverse(a, x) - herm_coords(basis, mx.inverse())).norm(), 1e-8 * (1 + mx.inverse().norm()));
        }
        const Element p = random_interior(a, rng);
        EXPECT_LT((sqrt(a, product(a, p, p)) - p).norm(), 1e-9 * (1 + p.norm()));
        EXPECT_LT((functional_calculus(a, log(a, p), [](double v) { return std::exp(v); }) - p).norm(), 1e-9 * (1 + p.norm()));
    }
    Vec neg(3);
    neg << 1, -1, 0;
    EXPECT_THROW(log(a, neg), DomainError);
    EXPECT_THROW(sqrt(a, neg), DomainError);
    EXPECT_THROW(inverse(a, Vec::Zero(3)), DomainError);
}

TEST(QuadRep, MatchesCongruence) {
    for (int n = 2; n <= 3; ++n) {
        const AlgebraSpec a = sym_real(n);
        const auto basis = oracle::hermitian_basis(n, false);
        EXPECT_LT((quad_rep(a, a.identity()) - Mat::Identity(a.dim(), a.dim())).norm(), 1e-13);
        Rng rng = make_rng(9);
        for (int t = 0; t < 10; ++t) {
            const Element x = random_element(a, rng);
            const Element y = random_element(a, rng);
            const oracle::CMat mx = oracle::to_matrix(basis, x);
            const oracle::CMat my = oracle::to_matrix(basis, y);
            EXPECT_LT((quad_rep(a, x) * y - herm_coords(basis, mx * my * mx)).norm(), 1e-12 * (1 + x.squaredNorm() * y.norm()));
        }
    }
}

TEST(QuadRep, FundamentalIdentities) {
    for (const auto& a : small_catalog()) {
        Rng rng = make_rng(13);
        for (int t = 0; t < 10; ++t) {
            const Element x = random_interior(a, rng);
            const Element xi = inverse(a, x);
            EXPECT_LT((quad_rep(a, x) * xi - x).norm(), 1e-9 * (1 + x.norm())) << a.name();
            const Mat prod = quad_rep(a, x) * quad_rep(a, xi);
            EXPECT_LT((prod - Mat::Identity(a.dim(), a.dim())).norm(), 1e-8) << a.name();
        }
    }
}

TEST(Center, Dimensions) {
    EXPECT_EQ(center(abelian(3)).cols(), 3);
    EXPECT_EQ(center(herm_complex(2)).cols(), 1);
    EXPECT_EQ(center(direct_sum(herm_complex(2), herm_complex(2))).cols(), 2);
    EXPECT_EQ(center(spin_factor(4)).cols(), 1);
    const AlgebraSpec a = direct_sum(sym_real(2), abelian(2));
    const Mat z = center(a);
    EXPECT_EQ(z.cols(), 3);
    for (int c = 0; c < z.cols(); ++c) EXPECT_LT(center_residual(a, z.col(c)), 1e-9);
    // first column is e normalised in the trace form
    EXPECT_LT((z.col(0) - a.identity() / a.norm(a.identity())).norm(), 1e-12);
}

TEST(Identities, CommutativityJordanPowerAssociativity) {
    const std::vector<AlgebraSpec> all = {sym_real(2), sym_real(3), sym_real(4), herm_complex(2), herm_complex(3),
                                          herm_complex(4), herm_quat(1), herm_quat(2), spin_factor(2),
                                          spin_factor(6), abelian(5)};
    for (const auto& a : all) {
        Rng rng = make_rng(17);
        for (int t = 0; t < 100; ++t) {
            const Element x = random_unit_element(a, rng);
            const Element y = random_unit_element(a, rng);
            EXPECT_LE((product(a, x, y) - product(a, y, x)).norm(), 1e-15) << a.name();
            EXPECT_LE(jordan_residual(a, x, y), 1e-10) << a.name();
        }
        Rng r2 = make_rng(18);
        EXPECT_LE(power_associativity_residual(a, random_unit_element(a, r2)), 1e-12) << a.name();
    }
}

TEST(VerifyJb, KnownAlgebrasPass) {
    for (const auto& a : {herm_complex(3), spin_factor(5), herm_quat(2)}) {
        const JbReport r = verify_jb(a, 100, 1);
        EXPECT_TRUE(r.pass) << a.name() << " " << r.max_residual();
        EXPECT_LE(r.max_residual(), 1e-8);
        EXPECT_EQ(r.spectral_failures, 0);
    }
}

TEST(VerifyJb, PerturbedStructureFails) {
    const AlgebraSpec base = herm_complex(2);
    std::vector<Mat> c = base.structure();
    const double eps = 1e-2;
    c[2](2, 3) += eps;
    c[2](3, 2) += eps;
    const AlgebraSpec bad("perturbed", c, base.identity(), base.trace_form());
    const JbReport r = verify_jb(bad, 100, 1);
    EXPECT_FALSE(r.pass);
    EXPECT_GE(r.jordan_identity, eps / 10);
}

TEST(AlgebraSpec, ConstructionRejectsBadInput) {
    std::vector<Mat> c(2, Mat::Zero(2, 2));
    c[0](0, 0) = 1;
    c[1](0, 1) = 1;  // asymmetric
    Vec e(2);
    e << 1, 0;
    EXPECT_THROW(AlgebraSpec("asym", c, e), InputError);
    c[1](1, 0) = 1;
    Vec wrong(2);
    wrong << 0, 1;
    EXPECT_THROW(AlgebraSpec("no unit", c, wrong, Mat::Identity(2, 2)), InputError);
    Mat indefinite = Mat::Identity(2, 2);
    indefinite(1, 1) = -1;
    EXPECT_THROW(AlgebraSpec("indefinite", c, e, indefinite), InputError);
    EXPECT_THROW(product(herm_complex(2), Vec::Zero(3), Vec::Zero(4)), InputError);
}
