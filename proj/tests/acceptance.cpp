// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Reference values come from the dense-matrix oracles in oracles.hpp.

#include "oracles.hpp"

#include "conelab/catalog.hpp"
#include "conelab/complex.hpp"
#include "conelab/derivations.hpp"
#include "conelab/extension.hpp"
#include "conelab/geometry.hpp"
#include "conelab/jb_check.hpp"
#include "conelab/orientation.hpp"
#include "conelab/sampling.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace conelab;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::vector<AlgebraSpec> acceptance_catalog() {
    std::vector<AlgebraSpec> out;
    for (int n = 2; n <= 4; ++n) out.push_back(sym_real(n));
    for (int n = 2; n <= 4; ++n) out.push_back(herm_complex(n));
    for (int n = 1; n <= 2; ++n) out.push_back(herm_quat(n));
    for (int k = 2; k <= 6; ++k) out.push_back(spin_factor(k));
    for (int n = 1; n <= 5; ++n) out.push_back(abelian(n));
    return out;
}

std::vector<Mat> images_on_basis(const Orientation& j) {
    std::vector<Mat> out;
    for (int i = 0; i < j.dim(); ++i) {
        Mat m = Mat::Zero(j.dim(), j.dim());
        for (std::size_t k = 0; k < j.basis().size(); ++k) m += j.coeffs()(static_cast<Eigen::Index>(k), i) * j.basis()[k];
        out.push_back(m);
    }
    return out;
}

double max_entry_error(const std::vector<Mat>& got, const std::vector<Mat>& want) {
    double worst = 0.0;
    for (std::size_t k = 0; k < want.size(); ++k) worst = std::max(worst, (got[k] - want[k]).cwiseAbs().maxCoeff());
    return worst;
}

// Orientations found in criterion 4, reused by 5 and 7.
struct FoundCase {
    std::string name;
    AlgebraSpec algebra;
    Orientation j;
};
std::vector<FoundCase> g_found;

Outcome jb_suite() {
    Outcome o;
    double worst = 0.0;
    int count = 0;
    for (const auto& a : acceptance_catalog()) {
        const JbReport r = verify_jb(a, 100, 1);
        worst = std::max(worst, r.max_residual());
        o.require(r.pass && r.max_residual() <= 1e-8, a.name());
        ++count;
    }
    // the catalog tensors themselves agree with the dense and closed-form products
    for (int n = 2; n <= 4; ++n) {
        for (bool cplx : {false, true}) {
            const AlgebraSpec a = cplx ? herm_complex(n) : sym_real(n);
            o.require(max_entry_error(a.structure(), oracle::jordan_structure(oracle::hermitian_basis(n, cplx))) <= 1e-14,
                      a.name() + " tensor");
        }
    }
    for (int k = 2; k <= 6; ++k) {
        const AlgebraSpec a = spin_factor(k);
        Rng rng = make_rng(static_cast<std::uint64_t>(k));
        const Element x = random_element(a, rng), y = random_element(a, rng);
        o.require((product(a, x, y) - oracle::spin_product(x, y)).norm() <= 1e-13, a.name() + " product");
    }
    o.detail << count << " algebras, max residual " << worst;
    return o;
}

Outcome geometry() {
    Outcome o;
    double worst = 0.0;
    for (const auto& a : acceptance_catalog()) {
        const GeometryReport r = geometry_suite(a, derivation_space(a), 10, 2, 1e-7);
        const double m = std::max({r.involution, r.isometry, r.split.grading_residual, r.split.bracket_residual});
        worst = std::max(worst, m);
        o.require(r.pass && r.evaluation.bijective && m <= 1e-7, a.name());
    }
    // s_p(x) = p x⁻¹ p against dense matrices
    const AlgebraSpec h = herm_complex(3);
    const auto basis = oracle::hermitian_basis(3, true);
    Rng rng = make_rng(3);
    double sym_err = 0.0;
    for (int t = 0; t < 20; ++t) {
        const Element p = random_interior(h, rng), x = random_interior(h, rng);
        const oracle::CMat mp = oracle::to_matrix(basis, p);
        const Vec want = oracle::coords_of(basis, mp * oracle::to_matrix(basis, x).inverse() * mp).real();
        sym_err = std::max(sym_err, (symmetry_at(h, p, x) - want).norm() / (1 + want.norm()));
    }
    o.require(sym_err <= 1e-9, "symmetry vs dense oracle");
    o.detail << "max residual " << worst << ", dense symmetry error " << sym_err;
    return o;
}

Outcome recovery() {
    Outcome o;
    {
        const int n = 2;
        for (bool cplx : {false, true}) {
            const AlgebraSpec a = cplx ? herm_complex(n) : sym_real(n);
            const auto want = oracle::jordan_structure(oracle::hermitian_basis(n, cplx));
            const ConeOracle oracle_fn = make_cone_oracle(a);
            const double e1 = max_entry_error(recover_structure(oracle_fn, {1e-3, false}), want);
            const double e2 = max_entry_error(recover_structure(oracle_fn, {5e-4, false}), want);
            o.require(e1 <= 1e-4, a.name() + " error");
            o.require(e1 / e2 >= 3.5, a.name() + " ratio");
            o.detail << (cplx ? "; " : "") << a.name() << ": err(1e-3) " << e1 << ", ratio " << e1 / e2;
        }
    }
    return o;
}

Outcome dichotomy() {
    Outcome o;
    std::vector<AlgebraSpec> expect_found = {herm_complex(2), herm_complex(3)};
    for (int n = 1; n <= 5; ++n) expect_found.push_back(abelian(n));
    const std::vector<AlgebraSpec> expect_not = {spin_factor(2), spin_factor(5)};

    for (const auto& a : expect_found) {
        const DerivationSpace ds = derivation_space(a);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            SolveOptions opts;
            opts.seed = seed;
            const SolveResult r = solve_orientation(a, ds, opts);
            const bool ok = r.verdict == Verdict::Found && r.best_residual < 1e-9 && r.orientation;
            o.require(ok, a.name() + " seed " + std::to_string(seed));
            if (!ok) continue;
            // independent re-evaluation of the witness
            o.require(oracle::orientation_floor(a.structure(), images_on_basis(*r.orientation)) < 1e-9,
                      a.name() + " witness floor");
            g_found.push_back({a.name() + "/seed" + std::to_string(seed), a, *r.orientation});
        }
    }
    double min_floor = std::numeric_limits<double>::infinity();
    for (const auto& a : expect_not) {
        const DerivationSpace ds = derivation_space(a);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            SolveOptions opts;
            opts.seed = seed;
            opts.restarts = 64;
            const SolveResult r = solve_orientation(a, ds, opts);
            o.require(r.verdict == Verdict::NotFound && r.best_residual > 1e-2,
                      a.name() + " seed " + std::to_string(seed));
            min_floor = std::min(min_floor, r.best_residual);
        }
    }
    // grid oracle for spin_factor(2): α ∈ [−3, 3]³ then compass polish
    const AlgebraSpec s2 = spin_factor(2);
    const Mat d = derivation_space(s2).basis.at(0);
    auto floor = [&](const Vec& alpha) {
        std::vector<Mat> img;
        for (int i = 0; i < 3; ++i) img.push_back(alpha(i) * d);
        return oracle::orientation_floor(s2.structure(), img);
    };
    double grid_best = std::numeric_limits<double>::infinity();
    Vec best_alpha(3);
    for (int x = -15; x <= 15; ++x)
        for (int y = -15; y <= 15; ++y)
            for (int z = -15; z <= 15; ++z) {
                Vec alpha(3);
                alpha << 0.2 * x, 0.2 * y, 0.2 * z;
                const double f = floor(alpha);
                if (f < grid_best) grid_best = f, best_alpha = alpha;
            }
    grid_best = oracle::compass_polish(floor, best_alpha, 0.1, 1e-9);
    o.require(grid_best > 1e-2, "spin_factor(2) grid floor");
    o.detail << g_found.size() << " Found runs, NotFound floor " << min_floor << ", spin_factor(2) grid floor "
             << grid_best;
    return o;
}

Outcome cstar() {
    Outcome o;
    double worst_assoc = 0.0, worst_cstar = 0.0;
    o.require(!g_found.empty(), "no Found orientations from the dichotomy run");
    for (const auto& f : g_found) {
        const ComplexAlgebra c = complexify(f.algebra, f.j);
        const double assoc = associativity_residual(c);
        const CstarReport r = cstar_identity_check(c, 100, 0, 1e-7);
        worst_assoc = std::max(worst_assoc, assoc);
        worst_cstar = std::max(worst_cstar, r.cstar_identity);
        o.require(assoc <= 1e-9 && r.pass && r.cstar_identity <= 1e-7, f.name);
    }
    // canonical herm_complex(2) product against complex 2×2 multiplication
    const AlgebraSpec a = herm_complex(2);
    const ComplexAlgebra c = complexify(a, canonical_orientation(a, derivation_space(a)));
    const auto basis = oracle::hermitian_basis(2, true);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            worst = std::max(worst, (c.product(CVec::Unit(4, i), CVec::Unit(4, j)) -
                                     oracle::coords_of(basis, basis[i] * basis[j]))
                                        .cwiseAbs()
                                        .maxCoeff());
    o.require(worst <= 1e-10, "herm_complex(2) vs matrix product");
    o.detail << "associativity " << worst_assoc << ", C* identity " << worst_cstar << ", matrix product error "
             << worst;
    return o;
}

Outcome real_case() {
    Outcome o;
    const ExtensionSpec e = transpose_extension(2);
    const RealReconstruction r = real_reconstruct(e, 1000, 0);
    o.require(r.dim() == 4, "dim R(V) = " + std::to_string(r.dim()));
    o.require(r.hermitian_part_is_v && r.pass, "hermitian part");
    o.require(r.antiautomorphism <= 1e-9, "antiautomorphism");

    // product tensor against real 2×2 matrices under the basis identification
    const auto basis = oracle::hermitian_basis(2, true);
    std::vector<oracle::CMat> mats;
    double imag = 0.0;
    for (int j = 0; j < r.dim(); ++j) {
        mats.push_back(oracle::to_matrix(basis, to_complex(r.basis, j)));
        imag = std::max(imag, mats.back().imag().norm());
    }
    o.require(imag <= 1e-12, "basis is real");
    double worst = 0.0;
    for (int i = 0; i < r.dim(); ++i)
        for (int j = 0; j < r.dim(); ++j) {
            oracle::CMat rebuilt = oracle::CMat::Zero(2, 2);
            for (int k = 0; k < r.dim(); ++k) rebuilt += r.structure[k](i, j) * mats[k];
            worst = std::max(worst, (rebuilt - mats[i] * mats[j]).cwiseAbs().maxCoeff());
        }
    o.require(worst <= 1e-10, "product tensor");

    // hermitian part of R(V) is V = sym_real(2): dense symmetric matrices
    double herm = 0.0;
    for (Eigen::Index j = 0; j < r.hermitian_part.cols(); ++j) {
        const oracle::CMat m = oracle::to_matrix(basis, Vec(r.hermitian_part.col(j)));
        herm = std::max(herm, m.imag().norm() + (m - m.transpose()).norm());
    }
    o.require(r.hermitian_part.cols() == 3 && herm <= 1e-10, "hermitian part is sym_real(2)");

    const ComplexAlgebra c = complexify(*e.ambient, e.orientation);
    const ReversibilityReport rev = reversibility_check(c, e.fixed);
    o.require(rev.reversible, "reversibility");

    // ψ(zw) = ψ(w)ψ(z) for ψ = transpose, on 1000 sampled pairs
    Rng rng = make_rng(17);
    std::normal_distribution<double> g;
    double psi = 0.0;
    for (int t = 0; t < 1000; ++t) {
        oracle::CMat z(2, 2), w(2, 2);
        for (int k = 0; k < 4; ++k) z(k) = {g(rng), g(rng)}, w(k) = {g(rng), g(rng)};
        const CVec zc = oracle::coords_of(basis, z), wc = oracle::coords_of(basis, w);
        const CMat phi = e.phi.cast<std::complex<double>>();
        const CVec lhs = phi * c.product(zc, wc);
        const CVec rhs = c.product(phi * wc, phi * zc);
        psi = std::max(psi, (lhs - rhs).norm() / (1 + zc.norm() * wc.norm()));
    }
    o.require(psi <= 1e-9, "psi reverses products");
    o.detail << "dim R(V) " << r.dim() << ", tensor error " << worst << ", psi residual " << psi
             << ", reversibility residual " << rev.residual;
    return o;
}

Outcome lemma_suite() {
    Outcome o;
    o.require(!g_found.empty(), "no Found orientations from the dichotomy run");
    double worst = 0.0;
    for (const auto& f : g_found) {
        for (double sign : {1.0, -1.0}) {
            const auto l = oracle::lemma_residuals(f.algebra.structure(), images_on_basis(f.j.scaled(sign)));
            const double m = std::max({l.antisymmetry, l.center_kernel, l.bracket});
            worst = std::max(worst, m);
            o.require(m <= 1e-8, f.name + (sign < 0 ? " (−J)" : ""));
        }
    }
    o.detail << 2 * g_found.size() << " orientations (±J), max residual " << worst;
    return o;
}

Outcome falsification() {
    Outcome o;
    const AlgebraSpec a = herm_complex(2);
    const DerivationSpace ds = derivation_space(a);
    const Orientation j = canonical_orientation(a, ds);
    double min_assoc = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng = make_rng(seed, 7);
        std::normal_distribution<double> g;
        Mat delta(ds.dimension(), a.dim());
        for (Eigen::Index i = 0; i < delta.size(); ++i) delta(i) = g(rng);
        const Orientation bad(share_basis(ds), j.coeffs() + 1e-2 * delta / delta.norm(), a.identity());
        min_assoc = std::min(min_assoc, associativity_residual(complexify(a, bad, false)));
    }
    o.require(min_assoc > 1e-4, "perturbed orientation stays associative");

    struct Perturb {
        AlgebraSpec base;
        int k, i, j;
    };
    double min_jordan = std::numeric_limits<double>::infinity();
    for (const Perturb& p : {Perturb{herm_complex(2), 2, 2, 3}, Perturb{sym_real(3), 3, 4, 5},
                             Perturb{spin_factor(3), 1, 2, 3}, Perturb{herm_complex(3), 4, 5, 6}}) {
        std::vector<Mat> c = p.base.structure();
        c[p.k](p.i, p.j) += 1e-2;
        if (p.i != p.j) c[p.k](p.j, p.i) += 1e-2;
        const AlgebraSpec bad("perturbed " + p.base.name(), c, p.base.identity(), p.base.trace_form());
        const JbReport r = verify_jb(bad, 100, 1);
        min_jordan = std::min(min_jordan, r.jordan_identity);
        o.require(!r.pass, bad.name());
    }
    o.detail << "min associativity after 1e-2 perturbation " << min_assoc << ", min Jordan residual " << min_jordan;
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<Outcome()> run;
        double budget_s;
    };
    const std::vector<Criterion> criteria = {
        {"1 JB verification suite", jb_suite, 10},
        {"2 cone geometry suite", geometry, 30},
        {"3 product recovery", recovery, 5},
        {"4 orientation dichotomy", dichotomy, 120},
        {"5 C*-reconstruction", cstar, 0},
        {"6 real reconstruction", real_case, 0},
        {"7 orientation identities", lemma_suite, 0},
        {"8 falsification sensitivity", falsification, 0},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0 && secs > c.budget_s) o.require(false, "runtime budget " + std::to_string(c.budget_s) + " s");
        all = all && o.pass;
        std::printf("%s  %-30s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.label, secs, o.detail.str().c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
