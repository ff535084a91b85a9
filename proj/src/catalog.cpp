#include "conelab/catalog.hpp"

#include "conelab/errors.hpp"

#include <cctype>
#include <cmath>
#include <complex>
#include <sstream>

namespace conelab {

namespace {

using cd = std::complex<double>;
const cd kI{0.0, 1.0};

CMat unit(int n, int i, int j) {
    CMat m = CMat::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

double gram(const CMat& b) { return (b * b).trace().real(); }

void require_positive(std::string_view name, int value) {
    if (value < 1) {
        throw InputError(std::string(name) + ": size parameter must be >= 1 (got " + std::to_string(value) + ")");
    }
}

std::string with_param(std::string_view name, int p) { return std::string(name) + "(" + std::to_string(p) + ")"; }

// 2n×2n complex block form [[A, B], [−B̄, Ā]] of the quaternion matrix A + B·j.
CMat quaternion_block(const CMat& a, const CMat& b) {
    const auto n = a.rows();
    CMat m(2 * n, 2 * n);
    m << a, b, -b.conjugate(), a.conjugate();
    return m;
}

}  // namespace

AlgebraSpec from_hermitian_basis(std::string name, std::vector<CMat> basis) {
    const int n = static_cast<int>(basis.size());
    if (n == 0) throw InputError("empty hermitian basis");
    const auto size = basis.front().rows();
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const CMat& b = basis[static_cast<std::size_t>(k)];
        if (b.rows() != size || b.cols() != size || (b - b.adjoint()).norm() > 1e-14) {
            throw InputError(name + ": basis matrix " + std::to_string(k) + " is not hermitian of common size");
        }
        g[static_cast<std::size_t>(k)] = gram(b);
    }
    auto coords = [&](const CMat& m, const char* what) {
        Vec c(n);
        CMat rebuilt = CMat::Zero(size, size);
        for (int k = 0; k < n; ++k) {
            c(k) = (basis[static_cast<std::size_t>(k)] * m).trace().real() / g[static_cast<std::size_t>(k)];
            rebuilt += c(k) * basis[static_cast<std::size_t>(k)];
        }
        if ((rebuilt - m).norm() > 1e-12 * (1.0 + m.norm())) {
            throw InputError(name + ": " + what + " leaves the span of the hermitian basis");
        }
        return c;
    };

    std::vector<Mat> structure(static_cast<std::size_t>(n), Mat::Zero(n, n));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const CMat& bi = basis[static_cast<std::size_t>(i)];
            const CMat& bj = basis[static_cast<std::size_t>(j)];
            const Vec c = coords(0.5 * (bi * bj + bj * bi), "a Jordan product");
            for (int k = 0; k < n; ++k) {
                structure[static_cast<std::size_t>(k)](i, j) = c(k);
                structure[static_cast<std::size_t>(k)](j, i) = c(k);
            }
        }
    }
    Vec identity = coords(CMat::Identity(size, size), "the identity matrix");
    return AlgebraSpec(std::move(name), std::move(structure), std::move(identity), std::nullopt, std::move(basis));
}

AlgebraSpec sym_real(int n) {
    require_positive("sym_real", n);
    std::vector<CMat> basis;
    for (int i = 0; i < n; ++i) basis.push_back(unit(n, i, i));
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) basis.push_back(s * (unit(n, i, j) + unit(n, j, i)));
    }
    return from_hermitian_basis(with_param("sym_real", n), std::move(basis));
}

AlgebraSpec herm_complex(int n) {
    require_positive("herm_complex", n);
    std::vector<CMat> basis;
    for (int i = 0; i < n; ++i) basis.push_back(unit(n, i, i));
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            basis.push_back(s * (unit(n, i, j) + unit(n, j, i)));
            basis.push_back(s * kI * (unit(n, i, j) - unit(n, j, i)));
        }
    }
    return from_hermitian_basis(with_param("herm_complex", n), std::move(basis));
}

AlgebraSpec herm_quat(int n) {
    require_positive("herm_quat", n);
    const CMat zero = CMat::Zero(n, n);
    std::vector<CMat> basis;
    for (int i = 0; i < n; ++i) basis.push_back(quaternion_block(unit(n, i, i), zero));
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const CMat sym = unit(n, i, j) + unit(n, j, i);
            const CMat anti = unit(n, i, j) - unit(n, j, i);
            // quaternion units 1, i, j, k placed at (i, j) with conjugates at (j, i)
            basis.push_back(s * quaternion_block(sym, zero));
            basis.push_back(s * quaternion_block(kI * anti, zero));
            basis.push_back(s * quaternion_block(zero, anti));
            basis.push_back(s * quaternion_block(zero, kI * anti));
        }
    }
    return from_hermitian_basis(with_param("herm_quat", n), std::move(basis));
}

AlgebraSpec spin_factor(int k) {
    require_positive("spin_factor", k);
    const int n = k + 1;
    std::vector<Mat> c(static_cast<std::size_t>(n), Mat::Zero(n, n));
    c[0](0, 0) = 1.0;
    for (int i = 1; i < n; ++i) {
        c[0](i, i) = 1.0;
        c[static_cast<std::size_t>(i)](0, i) = 1.0;
        c[static_cast<std::size_t>(i)](i, 0) = 1.0;
    }
    return AlgebraSpec(with_param("spin_factor", k), std::move(c), Vec::Unit(n, 0));
}

AlgebraSpec abelian(int n) {
    require_positive("abelian", n);
    std::vector<CMat> basis;
    for (int i = 0; i < n; ++i) basis.push_back(unit(n, i, i));
    return from_hermitian_basis(with_param("abelian", n), std::move(basis));
}

AlgebraSpec direct_sum(const AlgebraSpec& a, const AlgebraSpec& b) {
    const int p = a.dim();
    const int q = b.dim();
    const int n = p + q;
    std::vector<Mat> c(static_cast<std::size_t>(n), Mat::Zero(n, n));
    for (int k = 0; k < p; ++k) c[static_cast<std::size_t>(k)].topLeftCorner(p, p) = a.structure(k);
    for (int k = 0; k < q; ++k) c[static_cast<std::size_t>(p + k)].bottomRightCorner(q, q) = b.structure(k);
    Vec e(n);
    e << a.identity(), b.identity();
    Mat form = Mat::Zero(n, n);
    form.topLeftCorner(p, p) = a.trace_form();
    form.bottomRightCorner(q, q) = b.trace_form();

    std::vector<CMat> realization;
    if (a.has_realization() && b.has_realization()) {
        const auto ra = a.realization().front().rows();
        const auto rb = b.realization().front().rows();
        for (const auto& m : a.realization()) {
            CMat big = CMat::Zero(ra + rb, ra + rb);
            big.topLeftCorner(ra, ra) = m;
            realization.push_back(big);
        }
        for (const auto& m : b.realization()) {
            CMat big = CMat::Zero(ra + rb, ra + rb);
            big.bottomRightCorner(rb, rb) = m;
            realization.push_back(big);
        }
    }
    return AlgebraSpec("direct_sum(" + a.name() + "," + b.name() + ")", std::move(c), std::move(e), form,
                       std::move(realization));
}

std::vector<std::string> catalog_names() {
    return {"sym_real", "herm_complex", "herm_quat", "spin_factor", "abelian", "direct_sum"};
}

AlgebraSpec catalog(std::string_view name, const std::vector<int>& params) {
    auto one = [&]() {
        if (params.size() != 1) {
            throw InputError(std::string(name) + " takes exactly one integer parameter");
        }
        return params.front();
    };
    if (name == "sym_real") return sym_real(one());
    if (name == "herm_complex") return herm_complex(one());
    if (name == "herm_quat") return herm_quat(one());
    if (name == "spin_factor" || name == "spin") return spin_factor(one());
    if (name == "abelian") return abelian(one());
    if (name == "direct_sum") throw InputError("direct_sum needs algebra operands; use a selector string");
    throw InputError("unknown catalog algebra '" + std::string(name) + "'");
}

namespace {

class SelectorParser {
public:
    explicit SelectorParser(std::string_view text) : text_(text) {}

    AlgebraSpec parse() {
        AlgebraSpec out = algebra();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters");
        return out;
    }

private:
    AlgebraSpec algebra() {
        const std::string name = identifier();
        expect('(');
        if (name == "direct_sum") {
            AlgebraSpec acc = algebra();
            while (peek() == ',') {
                ++pos_;
                acc = direct_sum(acc, algebra());
            }
            expect(')');
            return acc;
        }
        std::vector<int> params{integer()};
        while (peek() == ',') {
            ++pos_;
            params.push_back(integer());
        }
        expect(')');
        return catalog(name, params);
    }

    std::string identifier() {
        skip_ws();
        const auto start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_) fail("expected an algebra name");
        return std::string(text_.substr(start, pos_ - start));
    }

    int integer() {
        skip_ws();
        const auto start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& why) const {
        std::ostringstream msg;
        msg << "bad catalog selector '" << text_ << "' at offset " << pos_ << ": " << why;
        throw InputError(msg.str());
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

AlgebraSpec parse_catalog_selector(std::string_view selector) { return SelectorParser(selector).parse(); }

CMat to_matrix(const AlgebraSpec& a, const CVec& coords) {
    if (!a.has_realization()) throw InputError("algebra '" + a.name() + "' has no matrix realization");
    if (coords.size() != a.dim()) throw InputError("to_matrix: coordinate length mismatch");
    const auto size = a.realization().front().rows();
    CMat m = CMat::Zero(size, size);
    for (int k = 0; k < a.dim(); ++k) m += coords(k) * a.realization()[static_cast<std::size_t>(k)];
    return m;
}

CVec matrix_coords(const AlgebraSpec& a, const CMat& m, double* residual) {
    if (!a.has_realization()) throw InputError("algebra '" + a.name() + "' has no matrix realization");
    CVec c(a.dim());
    for (int k = 0; k < a.dim(); ++k) {
        const CMat& b = a.realization()[static_cast<std::size_t>(k)];
        c(k) = (b * m).trace() / gram(b);
    }
    if (residual) *residual = (to_matrix(a, c) - m).norm();
    return c;
}

}  // namespace conelab
