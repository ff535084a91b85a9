#pragma once

#include "conelab/derivations.hpp"
#include "conelab/order.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace conelab {

/// s_p(x) = U_p(x⁻¹); s_e is Jordan inversion. Throws PreconditionError unless
/// p and x are interior.
Element symmetry_at(const AlgebraSpec& a, const Element& p, const Element& x);

/// Derivative of s_p at x by central differences along the basis vectors, with
/// one Richardson extrapolation step when `richardson` is set.
Mat symmetry_derivative(const AlgebraSpec& a, const Element& p, const Element& x, double h = 1e-3,
                        bool richardson = true);

/// ν(p, v) = ‖v‖_p. Throws PreconditionError unless p is interior.
double tangent_norm(const AlgebraSpec& a, const Element& p, const Element& v);

/// Sampled constants with r·‖v‖ ≤ ν(p, v) ≤ R·‖v‖ in the identity chart (τ-norm).
struct TangentSandwich {
    double lower = 0.0;
    double upper = 0.0;
};

TangentSandwich tangent_norm_sandwich(const AlgebraSpec& a, const Element& p, int samples, std::uint64_t seed);

struct InvarianceReport {
    int samples = 0;
    int cone_violations = 0;         ///< sampled interior p with g·p not interior
    double isometry_residual = 0.0;  ///< max |ν(gp, gv) − ν(p, v)| / (1 + ν(p, v))
    double tolerance = 1e-8;
    bool pass = false;
};

/// Samples interior p and directions v and checks g(Ω) ⊂ Ω and ν-invariance.
/// Throws InputError for singular or wrongly sized g.
InvarianceReport g_invariance_check(const AlgebraSpec& a, const Mat& g, int samples, std::uint64_t seed,
                                    double tol = 1e-8);

/// g = U_{p^{1/2}} U_{u^{−1/2}}, a cone automorphism with g(u) = p.
Mat transitive_map(const AlgebraSpec& a, const Element& u, const Element& p);

/// exp(L_a)(e), the exponential chart onto Ω.
Element exp_chart(const AlgebraSpec& a, const Element& x);

/// Pushforward of the linear field y ↦ X y by the symmetry at e,
/// y ↦ −U_y X(y⁻¹), fitted as a matrix on interior points. `linearity_residual`
/// receives the misfit on extra points (zero for fields in the Lie algebra of G(Ω)).
Mat adjoint_symmetry(const AlgebraSpec& a, const Mat& x, double* linearity_residual = nullptr);

/// Cartan split of the linear part of the Lie algebra of G(Ω): 𝔭 = {L_a}, 𝔨 = aut V.
struct CartanSplit {
    std::vector<Mat> k_basis;
    std::vector<Mat> p_basis;
    Mat theta;                       ///< θ on coefficients over [p_basis, k_basis]
    double grading_residual = 0.0;   ///< max ‖θX ∓ X‖ over the basis (and linearity misfit)
    double theta_square_residual = 0.0;
    double bracket_residual = 0.0;   ///< max distance of [L_i, L_j] from span(k_basis)
    double p_is_l_residual = 0.0;    ///< max ‖X − L_{X(e)}‖ over p_basis
    int span_rank = 0;               ///< rank of k ∪ p; equals sum of dims iff k ∩ p = {0}

    bool pass(double tol) const;
};

CartanSplit lie_algebra_linear(const AlgebraSpec& a, const DerivationSpace& ds);

struct EvaluationReport {
    bool bijective = false;
    double condition_number = 0.0;
    double reconstruction_residual = 0.0;  ///< max ‖L(a)(e) − a‖ on basis and samples
    double identity_residual = 0.0;        ///< ‖L(e) − I‖
};

/// Checks X ∈ 𝔭 ↦ X(e) ∈ V is bijective and reconstructs L(a). Throws
/// StructuralError when the evaluation map is singular.
EvaluationReport evaluation_bijection_check(const AlgebraSpec& a, const CartanSplit& split);

/// Black-box description of a symmetric cone.
struct ConeOracle {
    int dim = 0;
    std::function<Positivity(const Element&)> membership;
    std::function<Element(const Element&, const Element&)> symmetry;  ///< (p, x) ↦ s_p(x)
    std::function<Element(const Element&)> exp_chart;
    Element base_point;
};

/// Oracle backed by a structure-constant algebra.
ConeOracle make_cone_oracle(const AlgebraSpec& a);

struct RecoverOptions {
    double step = 1e-3;
    bool richardson = false;
};

/// Jordan product from cone data alone: d/dt (s_{γ(t/2)} ∘ s_e)(b) at t = 0 with
/// γ(t) = exp_chart(t·a), by central differences. Non-interior b is handled by
/// linearity through b + μe. Throws InputError for a step outside (1e−6, 1e−2) and
/// UnreliableOracleError when the oracle's symmetry is not involutive to 1e−6.
Element recover_product(const ConeOracle& oracle, const Element& x, const Element& y,
                        const RecoverOptions& opts = {});

/// Structure constants c[k](i, j) recovered for all basis pairs.
std::vector<Mat> recover_structure(const ConeOracle& oracle, const RecoverOptions& opts = {});

/// Cone-geometry checks run by `verify` and the acceptance suite.
struct GeometryReport {
    int samples = 0;
    double involution = 0.0;       ///< max ‖s_p(s_p(x)) − x‖ / (1 + ‖x‖)
    double fixed_point = 0.0;      ///< max ‖s_p(p) − p‖ / (1 + ‖p‖)
    double derivative_at_p = 0.0;  ///< max ‖ds_p(p) + I‖ (finite differences)
    double isometry = 0.0;         ///< max |ν(s_p x, ds_p(x) v) − ν(x, v)| / (1 + ν(x, v))
    double own_unit = 0.0;         ///< max |ν(p, p) − 1|
    InvarianceReport quad_invariance;   ///< g = U_q
    InvarianceReport flow_invariance;   ///< g = exp(D) for a derivation D (skipped when d = 0)
    CartanSplit split;
    EvaluationReport evaluation;
    std::string structural_error;  ///< set when the evaluation map is singular
    double tolerance = 1e-7;
    bool pass = false;
};

/// Sampled symmetry, tangent-norm and Cartan checks. Throws PreconditionError
/// when the cone is not proper.
GeometryReport geometry_suite(const AlgebraSpec& a, const DerivationSpace& ds, int samples, std::uint64_t seed,
                              double tol = 1e-7);

}  // namespace conelab
