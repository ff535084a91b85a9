#include "conelab/io.hpp"

#include "conelab/catalog.hpp"
#include "conelab/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unistd.h>

namespace conelab::io {

namespace {

void allow_keys(const json& doc, const std::set<std::string>& keys, const char* what) {
    if (!doc.is_object()) throw InputError(std::string(what) + " must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        if (!keys.count(key)) throw InputError(std::string(what) + ": unknown key '" + key + "'");
    }
}

const json& require(const json& doc, const char* key, const char* what) {
    if (!doc.contains(key)) throw InputError(std::string(what) + ": missing key '" + key + "'");
    return doc.at(key);
}

double number(const json& v, const char* what) {
    if (!v.is_number()) throw InputError(std::string(what) + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InputError(std::string(what) + ": non-finite value");
    return x;
}

int index(const json& v, int bound, const char* what) {
    if (!v.is_number_integer()) throw InputError(std::string(what) + ": expected an integer index");
    const auto i = v.get<long long>();
    if (i < 0 || i >= bound) throw InputError(std::string(what) + ": index " + std::to_string(i) + " out of range");
    return static_cast<int>(i);
}

Vec vector_of(const json& v, int n, const char* what) {
    if (!v.is_array() || static_cast<int>(v.size()) != n) {
        throw InputError(std::string(what) + ": expected an array of " + std::to_string(n) + " numbers");
    }
    Vec out(n);
    for (int i = 0; i < n; ++i) out(i) = number(v[static_cast<std::size_t>(i)], what);
    return out;
}

Mat matrix_of(const json& v, int rows, int cols, const char* what) {
    if (!v.is_array() || static_cast<int>(v.size()) != rows) {
        throw InputError(std::string(what) + ": expected " + std::to_string(rows) + " rows");
    }
    Mat out(rows, cols);
    for (int r = 0; r < rows; ++r) out.row(r) = vector_of(v[static_cast<std::size_t>(r)], cols, what).transpose();
    return out;
}

}  // namespace

json to_json(const Vec& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json to_json(const Mat& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Vec(m.row(r).transpose())));
    return out;
}

AlgebraSpec algebra_from_json(const json& doc) {
    allow_keys(doc, {"name", "dim", "identity", "structure", "trace_form"}, "algebra");
    const json& dim_v = require(doc, "dim", "algebra");
    if (!dim_v.is_number_integer() || dim_v.get<long long>() < 1 || dim_v.get<long long>() > 4096) {
        throw InputError("algebra: 'dim' must be a positive integer");
    }
    const int n = dim_v.get<int>();
    std::string name = "custom";
    if (doc.contains("name")) {
        if (!doc.at("name").is_string()) throw InputError("algebra: 'name' must be a string");
        name = doc.at("name").get<std::string>();
    }
    const Vec identity = vector_of(require(doc, "identity", "algebra"), n, "algebra identity");

    const json& entries = require(doc, "structure", "algebra");
    if (!entries.is_array()) throw InputError("algebra: 'structure' must be an array of [k, i, j, value]");
    std::map<std::tuple<int, int, int>, double> given;
    for (const auto& t : entries) {
        if (!t.is_array() || t.size() != 4) throw InputError("algebra: structure entries must be [k, i, j, value]");
        const int k = index(t[0], n, "structure k");
        const int i = index(t[1], n, "structure i");
        const int j = index(t[2], n, "structure j");
        const double v = number(t[3], "structure value");
        const auto [it, fresh] = given.emplace(std::make_tuple(k, i, j), v);
        if (!fresh && it->second != v) {
            std::ostringstream msg;
            msg << "algebra: conflicting duplicate entries for c[" << k << "][" << i << "][" << j << "]";
            throw InputError(msg.str());
        }
    }
    std::vector<Mat> structure(static_cast<std::size_t>(n), Mat::Zero(n, n));
    for (const auto& [key, v] : given) {
        const auto [k, i, j] = key;
        structure[static_cast<std::size_t>(k)](i, j) = v;
        if (!given.count({k, j, i})) structure[static_cast<std::size_t>(k)](j, i) = v;
    }
    for (int k = 0; k < n; ++k) {
        const Mat& c = structure[static_cast<std::size_t>(k)];
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (c(i, j) != c(j, i)) {
                    std::ostringstream msg;
                    msg << "algebra: structure constants violate symmetry: c[" << k << "][" << i << "][" << j
                        << "] = " << c(i, j) << " but c[" << k << "][" << j << "][" << i << "] = " << c(j, i);
                    throw InputError(msg.str());
                }
            }
        }
    }
    std::optional<Mat> form;
    if (doc.contains("trace_form")) form = matrix_of(doc.at("trace_form"), n, n, "algebra trace_form");
    return AlgebraSpec(std::move(name), std::move(structure), identity, form);
}

json algebra_to_json(const AlgebraSpec& a) {
    const int n = a.dim();
    json entries = json::array();
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                const double v = a.structure(k)(i, j);
                if (v != 0.0) entries.push_back({k, i, j, v});
            }
        }
    }
    return json{{"name", a.name()},
                {"dim", n},
                {"identity", to_json(a.identity())},
                {"structure", entries},
                {"trace_form", to_json(a.trace_form())}};
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

AlgebraSpec load_algebra(const std::filesystem::path& path) { return algebra_from_json(read_json(path)); }

std::string basis_hash(const DerivationSpace& ds) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::int64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= static_cast<std::uint64_t>(v >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(ds.dimension());
    for (const auto& d : ds.basis) {
        mix(d.rows());
        for (Eigen::Index c = 0; c < d.cols(); ++c) {
            for (Eigen::Index r = 0; r < d.rows(); ++r) mix(std::llround(d(r, c) * 1e8));
        }
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

json orientation_to_json(const Orientation& j, const DerivationSpace& ds) {
    return json{{"basis_hash", basis_hash(ds)}, {"coeffs", to_json(j.coeffs())}, {"residual", j.residual()}};
}

Orientation orientation_from_json(const json& doc, const AlgebraSpec& a, const DerivationSpace& ds) {
    allow_keys(doc, {"basis_hash", "coeffs", "residual"}, "orientation");
    const json& hash = require(doc, "basis_hash", "orientation");
    if (!hash.is_string() || hash.get<std::string>() != basis_hash(ds)) {
        throw InputError("orientation: basis_hash does not match the derivation basis of '" + a.name() + "'");
    }
    const Mat coeffs = matrix_of(require(doc, "coeffs", "orientation"), ds.dimension(), a.dim(), "orientation coeffs");
    const double residual = doc.contains("residual") ? number(doc.at("residual"), "orientation residual") : 0.0;
    return Orientation(share_basis(ds), coeffs, a.identity(), residual);
}

ExtensionSpec extension_from_json(const json& doc) {
    allow_keys(doc, {"ambient", "phi", "fixed", "orientation", "name"}, "extension");
    const json& amb_v = require(doc, "ambient", "extension");
    AlgebraSpec ambient = amb_v.is_string() ? parse_catalog_selector(amb_v.get<std::string>()) : algebra_from_json(amb_v);
    const int n = ambient.dim();
    const Mat phi = matrix_of(require(doc, "phi", "extension"), n, n, "extension phi");
    std::optional<Mat> fixed;
    if (doc.contains("fixed")) {
        const json& f = doc.at("fixed");
        if (!f.is_array() || f.empty()) throw InputError("extension: 'fixed' must be a non-empty array of vectors");
        Mat m(n, static_cast<Eigen::Index>(f.size()));
        for (std::size_t c = 0; c < f.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = vector_of(f[c], n, "extension fixed");
        fixed = m;
    }
    const DerivationSpace ds = derivation_space(ambient);
    Orientation j = zero_orientation(ambient, ds);
    const json orient = doc.contains("orientation") ? doc.at("orientation") : json("canonical");
    if (orient.is_string()) {
        const auto kind = orient.get<std::string>();
        if (kind == "canonical") {
            j = canonical_orientation(ambient, ds);
        } else if (kind != "zero") {
            throw InputError("extension: orientation must be \"canonical\", \"zero\" or an orientation object");
        }
    } else {
        j = orientation_from_json(orient, ambient, ds);
    }
    std::string name;
    if (doc.contains("name")) {
        if (!doc.at("name").is_string()) throw InputError("extension: 'name' must be a string");
        name = doc.at("name").get<std::string>();
    }
    return make_extension(ambient, phi, j, fixed, name);
}

ExtensionSpec load_extension(const std::filesystem::path& path) { return extension_from_json(read_json(path)); }

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    const auto tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw InputError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw InputError("cannot move report into '" + path.string() + "'");
    }
}

}  // namespace conelab::io
