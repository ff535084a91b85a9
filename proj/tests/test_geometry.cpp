#include "oracles.hpp"

#include "conelab/catalog.hpp"
#include "conelab/derivations.hpp"
#include "conelab/errors.hpp"
#include "conelab/geometry.hpp"
#include "conelab/io.hpp"
#include "conelab/oracle_wire.hpp"
#include "conelab/order.hpp"
#include "conelab/sampling.hpp"
#include "conelab/spectral.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace conelab;

namespace {

Vec sym_coords(int n, const oracle::CMat& m) { return oracle::coords_of(oracle::hermitian_basis(n, false), m).real(); }

oracle::CMat diag(std::initializer_list<double> v) {
    oracle::CMat m = oracle::CMat::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) m(i, i) = x, ++i;
    return m;
}

}  // namespace

TEST(Symmetry, Examples) {
    const AlgebraSpec a = sym_real(2);
    const Element e = a.identity();
    EXPECT_LT((symmetry_at(a, e, e) - e).norm(), 1e-13);
    EXPECT_LT((symmetry_at(a, e, sym_coords(2, diag({2, 4}))) - sym_coords(2, diag({0.5, 0.25}))).norm(), 1e-12);
    EXPECT_THROW(symmetry_at(a, sym_coords(2, diag({1, -1})), e), PreconditionError);
}

TEST(Symmetry, MatchesCongruenceOracle) {
    const AlgebraSpec a = sym_real(3);
    const auto basis = oracle::hermitian_basis(3, false);
    Rng rng = make_rng(1);
    for (int t = 0; t < 10; ++t) {
        const Element p = random_interior(a, rng);
        const Element x = random_interior(a, rng);
        const oracle::CMat mp = oracle::to_matrix(basis, p);
        const oracle::CMat expected = mp * oracle::to_matrix(basis, x).inverse() * mp;
        const Element s = symmetry_at(a, p, x);
        EXPECT_LT((s - oracle::coords_of(basis, expected).real()).norm(), 1e-9 * (1 + s.norm()));
        EXPECT_LT((symmetry_at(a, p, s) - x).norm(), 1e-9 * (1 + x.norm()));
    }
}

TEST(Symmetry, DerivativeAtFixedPointIsMinusIdentity) {
    const AlgebraSpec a = herm_complex(2);
    Rng rng = make_rng(3);
    const Element p = random_interior(a, rng);
    const Mat d = symmetry_derivative(a, p, p);
    EXPECT_LT((d + Mat::Identity(4, 4)).norm(), 1e-6);
}

TEST(TangentNorm, Examples) {
    const AlgebraSpec a = herm_complex(2);
    const auto basis = oracle::hermitian_basis(2, true);
    const Element e = a.identity();
    EXPECT_NEAR(tangent_norm(a, e, e), 1.0, 1e-12);
    Rng rng = make_rng(4);
    const Element p = random_interior(a, rng);
    EXPECT_NEAR(tangent_norm(a, p, p), 1.0, 1e-9);
    const Element q = oracle::coords_of(basis, diag({1, 4})).real();
    EXPECT_NEAR(tangent_norm(a, q, e), 1.0, 1e-10);

    // max |eig(p^{-1/2} v p^{-1/2})|
    for (int t = 0; t < 5; ++t) {
        const Element pp = random_interior(a, rng);
        const Element v = random_element(a, rng);
        Eigen::SelfAdjointEigenSolver<oracle::CMat> es(oracle::to_matrix(basis, pp));
        const oracle::CMat r = es.operatorInverseSqrt();
        EXPECT_NEAR(tangent_norm(a, pp, v), oracle::max_abs_eig(r * oracle::to_matrix(basis, v) * r), 1e-9);
    }
    const TangentSandwich s = tangent_norm_sandwich(a, p, 50, 1);
    EXPECT_GT(s.lower, 0.0);
    EXPECT_GE(s.upper, s.lower);
}

TEST(GInvariance, Examples) {
    const AlgebraSpec a = sym_real(2);
    const InvarianceReport id = g_invariance_check(a, Mat::Identity(3, 3), 20, 0);
    EXPECT_TRUE(id.pass);
    EXPECT_EQ(id.isometry_residual, 0.0);

    Rng rng = make_rng(5);
    const Element p = random_interior(a, rng);
    const InvarianceReport u = g_invariance_check(a, quad_rep(a, sqrt(a, p)), 20, 0);
    EXPECT_TRUE(u.pass);
    EXPECT_LE(u.isometry_residual, 1e-8);

    const InvarianceReport two = g_invariance_check(a, 2.0 * Mat::Identity(3, 3), 20, 0);
    EXPECT_TRUE(two.pass);
    EXPECT_EQ(two.cone_violations, 0);

    // a reflection of the diagonal entry breaks the cone
    Mat flip = Mat::Identity(3, 3);
    flip(1, 1) = -1;
    EXPECT_FALSE(g_invariance_check(a, flip, 20, 0).pass);
    EXPECT_THROW(g_invariance_check(a, Mat::Zero(3, 3), 5, 0), InputError);
}

TEST(TransitiveMap, Examples) {
    const AlgebraSpec a = sym_real(2);
    const Element e = a.identity();
    EXPECT_LT((transitive_map(a, e, e) - Mat::Identity(3, 3)).norm(), 1e-12);
    Rng rng = make_rng(8);
    const Element u = random_interior(a, rng);
    EXPECT_LT((transitive_map(a, u, e) * u - e).norm(), 1e-9);

    // u = diag(4, 1), p = e: g(y) = d y d with d = diag(1/2, 1)
    const Element u2 = sym_coords(2, diag({4, 1}));
    const Mat g = transitive_map(a, u2, e);
    const oracle::CMat dd = diag({0.5, 1});
    const auto basis = oracle::hermitian_basis(2, false);
    for (int t = 0; t < 10; ++t) {
        const Element y = random_element(a, rng);
        const Vec expected = oracle::coords_of(basis, dd * oracle::to_matrix(basis, y) * dd).real();
        EXPECT_LT((g * y - expected).norm(), 1e-10);
    }
    EXPECT_TRUE(g_invariance_check(a, g, 10, 0).pass);
}

TEST(ExpChart, Examples) {
    const AlgebraSpec a = sym_real(3);
    const auto basis = oracle::hermitian_basis(3, false);
    EXPECT_LT((exp_chart(a, Vec::Zero(6)) - a.identity()).norm(), 1e-14);
    Rng rng = make_rng(10);
    for (int t = 0; t < 10; ++t) {
        const Element x = random_element(a, rng);
        const Element got = exp_chart(a, x);
        const Vec expected = oracle::coords_of(basis, oracle::herm_exp(oracle::to_matrix(basis, x))).real();
        EXPECT_LT((got - expected).norm(), 1e-10 * (1 + expected.norm()));
        EXPECT_EQ(positivity(a, got), Positivity::Interior);
        const Element small = x / (order_unit_norm(a, x) + 1e-12);
        EXPECT_LT((log(a, exp_chart(a, small)) - small).norm(), 1e-9);
    }
}

TEST(LieAlgebra, SplitDimensions) {
    {
        const AlgebraSpec a = abelian(3);
        const CartanSplit s = lie_algebra_linear(a, derivation_space(a));
        EXPECT_EQ(s.p_basis.size(), 3u);
        EXPECT_EQ(s.k_basis.size(), 0u);
        EXPECT_TRUE(s.pass(1e-8));
    }
    {
        const AlgebraSpec a = herm_complex(2);
        const CartanSplit s = lie_algebra_linear(a, derivation_space(a));
        EXPECT_EQ(s.p_basis.size(), 4u);
        EXPECT_EQ(s.k_basis.size(), 3u);
        EXPECT_EQ(s.span_rank, 7);
        EXPECT_LE(s.grading_residual, 1e-8);
        EXPECT_LE(s.theta_square_residual, 1e-12);
        EXPECT_LE(s.bracket_residual, 1e-8);
        EXPECT_TRUE(s.pass(1e-8));
        // θ is −1 on 𝔭 and +1 on 𝔨 in the [p, k] ordering
        Vec signs(7);
        signs << -1, -1, -1, -1, 1, 1, 1;
        EXPECT_LT((s.theta - Mat(signs.asDiagonal())).norm(), 1e-8);
    }
}

TEST(LieAlgebra, AdjointSymmetryOnLinearFields) {
    const AlgebraSpec a = spin_factor(3);
    Rng rng = make_rng(12);
    const Element x = random_element(a, rng);
    double lin = 1.0;
    EXPECT_LT((adjoint_symmetry(a, l_operator(a, x), &lin) + l_operator(a, x)).norm(), 1e-8);
    EXPECT_LT(lin, 1e-8);
    const DerivationSpace ds = derivation_space(a);
    ASSERT_GT(ds.dimension(), 0);
    EXPECT_LT((adjoint_symmetry(a, ds.basis[0]) - ds.basis[0]).norm(), 1e-8);
}

TEST(Evaluation, Bijective) {
    const AlgebraSpec a = herm_complex(2);
    const EvaluationReport r = evaluation_bijection_check(a, lie_algebra_linear(a, derivation_space(a)));
    EXPECT_TRUE(r.bijective);
    EXPECT_LT(r.condition_number, 1e3);
    EXPECT_LE(r.reconstruction_residual, 1e-10);
    EXPECT_LE(r.identity_residual, 1e-10);
}

TEST(GeometrySuite, PassesOnSmallCatalog) {
    for (const auto& a : {sym_real(2), herm_complex(2), spin_factor(4), abelian(2), herm_quat(2)}) {
        const GeometryReport r = geometry_suite(a, derivation_space(a), 10, 0);
        EXPECT_TRUE(r.pass) << a.name();
        EXPECT_LE(r.involution, 1e-7);
        EXPECT_LE(r.isometry, 1e-7);
        EXPECT_LE(r.derivative_at_p, 1e-6);
        EXPECT_TRUE(r.structural_error.empty());
    }
    const AlgebraSpec d = io::load_algebra(std::string(CONELAB_TEST_DATA) + "/half_plane.json");
    const DerivationSpace dds = derivation_space(d);
    EXPECT_FALSE(dds.warnings.empty());
    EXPECT_THROW(geometry_suite(d, dds, 5, 0), PreconditionError);
}

TEST(RecoverProduct, MatchesMatrixProduct) {
    const AlgebraSpec a = sym_real(2);
    const auto basis = oracle::hermitian_basis(2, false);
    const ConeOracle o = make_cone_oracle(a);
    EXPECT_LT((recover_product(o, a.identity(), a.identity()) - a.identity()).norm(), 1e-6);
    Rng rng = make_rng(14);
    for (int t = 0; t < 10; ++t) {
        const Element x = random_element(a, rng);
        const Element y = random_element(a, rng);
        const oracle::CMat mx = oracle::to_matrix(basis, x);
        const oracle::CMat my = oracle::to_matrix(basis, y);
        const Vec expected = oracle::coords_of(basis, 0.5 * (mx * my + my * mx)).real();
        const Element rxy = recover_product(o, x, y);
        EXPECT_LT((rxy - expected).cwiseAbs().maxCoeff(), 1e-5 * (1 + x.squaredNorm()) * (1 + y.norm()));
        EXPECT_LT((rxy - recover_product(o, y, x)).norm(), 2e-5 * (1 + x.squaredNorm() + y.squaredNorm()));
        EXPECT_LT((recover_product(o, a.identity(), y) - y).norm(), 1e-6 * (1 + y.norm()));
    }
}

TEST(RecoverProduct, SecondOrderConvergence) {
    const AlgebraSpec a = herm_complex(2);
    const ConeOracle o = make_cone_oracle(a);
    auto err = [&](double h) {
        const auto rec = recover_structure(o, {h, false});
        double worst = 0.0;
        for (int k = 0; k < a.dim(); ++k) worst = std::max(worst, (rec[k] - a.structure(k)).cwiseAbs().maxCoeff());
        return worst;
    };
    const double e1 = err(1e-3);
    const double e2 = err(5e-4);
    EXPECT_LE(e1, 1e-4);
    EXPECT_GE(e1 / e2, 3.5);
    const auto rich = recover_structure(o, {1e-3, true});
    double worst = 0.0;
    for (int k = 0; k < a.dim(); ++k) worst = std::max(worst, (rich[k] - a.structure(k)).cwiseAbs().maxCoeff());
    EXPECT_LT(worst, e1);
}

TEST(RecoverProduct, Errors) {
    const AlgebraSpec a = sym_real(2);
    ConeOracle o = make_cone_oracle(a);
    const Element e = a.identity();
    EXPECT_THROW(recover_product(o, e, e, {1e-1, false}), InputError);
    EXPECT_THROW(recover_product(o, e, e, {1e-7, false}), InputError);
    // a constant shift breaks s_p ∘ s_p = id (a rescaling would not)
    ConeOracle broken = o;
    broken.symmetry = [inner = o.symmetry](const Element& p, const Element& x) {
        return Element(inner(p, x) + Element::Constant(x.size(), 1e-3));
    };
    EXPECT_THROW(recover_product(broken, e, e), UnreliableOracleError);
}

TEST(OracleWire, RequestRoundTrip) {
    std::stringstream buf;
    Vec v(3);
    v << 1.5, -2, 1e-300;
    wire::write_request(buf, {"SYM", {v, Vec::Zero(2)}});
    const auto r = wire::read_request(buf);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->command, "SYM");
    ASSERT_EQ(r->args.size(), 2u);
    EXPECT_EQ(r->args[0], v);
    EXPECT_EQ(r->args[1].size(), 2);
    EXPECT_FALSE(wire::read_request(buf).has_value());
}

TEST(OracleWire, ServeAnswersCommands) {
    const AlgebraSpec a = sym_real(2);
    const ConeOracle o = make_cone_oracle(a);
    std::stringstream in, out;
    Rng rng = make_rng(2);
    const Element x = random_element(a, rng);
    const Element p = random_interior(a, rng);
    wire::write_request(in, {"EXP", {x}});
    wire::write_request(in, {"SYM", {p, p}});
    wire::write_request(in, {"MEMBER", {a.identity()}});
    wire::write_request(in, {"BOGUS", {}});
    wire::serve(o, in, out);
    EXPECT_LT((wire::read_array(out) - exp_chart(a, x)).norm(), 1e-15);
    EXPECT_LT((wire::read_array(out) - p).norm(), 1e-10);
    EXPECT_EQ(wire::read_array(out)(0), 1.0);  // Interior
    EXPECT_EQ(wire::read_array(out).size(), 0);
}

TEST(OracleWire, SubprocessOracleRecoversProduct) {
    const AlgebraSpec a = herm_complex(2);
    const ConeOracle o =
        wire::subprocess_oracle({CONELAB_CLI_PATH, "oracle-serve", "--catalog", "herm_complex", "--n", "2"}, 4);
    EXPECT_EQ(o.dim, 4);
    EXPECT_LT((o.base_point - a.identity()).norm(), 1e-14);
    Rng rng = make_rng(3);
    const Element x = random_element(a, rng);
    const Element y = random_element(a, rng);
    EXPECT_LT((recover_product(o, x, y) - product(a, x, y)).cwiseAbs().maxCoeff(), 1e-5 * (1 + x.squaredNorm()) * (1 + y.norm()));
    EXPECT_EQ(o.membership(a.identity()), Positivity::Interior);
}
