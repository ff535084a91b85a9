#include "conelab/cli.hpp"

#include "conelab/catalog.hpp"
#include "conelab/errors.hpp"
#include "conelab/extension.hpp"
#include "conelab/geometry.hpp"
#include "conelab/io.hpp"
#include "conelab/jb_check.hpp"
#include "conelab/oracle_wire.hpp"
#include "conelab/order.hpp"
#include "conelab/spectral.hpp"

#include <CLI11/CLI11.hpp>

#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

namespace conelab::cli {

using nlohmann::json;

namespace {

constexpr int kSchema = 1;

json header(const char* command, const std::string& algebra, const RunConfig& cfg) {
    return json{{"schema", kSchema}, {"command", command}, {"algebra", algebra}, {"seed", cfg.seed}};
}

std::string verdict_word(bool ok) { return ok ? "PASS" : "FAIL"; }

// one "name  value  verdict" line
std::string line(const std::string& name, double value, bool ok) {
    std::ostringstream s;
    s << "  " << std::left << std::setw(28) << name << std::setw(14) << std::setprecision(4) << value
      << verdict_word(ok) << "\n";
    return s.str();
}

std::vector<std::string> split_words(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

}  // namespace

void apply_config(RunConfig& cfg, const json& doc) {
    static const std::set<std::string> keys = {
        "catalog", "n", "k", "file", "extension", "seed", "restarts", "tol_success", "tol_fail",
        "spectral_merge", "samples", "json", "out", "witness", "oracle_cmd", "dim", "step", "richardson"};
    if (!doc.is_object()) throw InputError("config must be a JSON object");
    for (const auto& [key, v] : doc.items()) {
        if (!keys.count(key)) throw InputError("config: unknown key '" + key + "'");
        auto need = [&](bool ok, const char* what) {
            if (!ok) throw InputError("config: '" + key + "' must be " + what);
        };
        if (key == "catalog" || key == "file" || key == "extension" || key == "out" || key == "witness" ||
            key == "oracle_cmd") {
            need(v.is_string(), "a string");
            const auto s = v.get<std::string>();
            if (key == "catalog") cfg.catalog = s;
            if (key == "file") cfg.file = s;
            if (key == "extension") cfg.extension_file = s;
            if (key == "out") cfg.out = s;
            if (key == "witness") cfg.witness = s;
            if (key == "oracle_cmd") cfg.oracle_cmd = s;
        } else if (key == "seed") {
            need(v.is_number_unsigned(), "a non-negative integer");
            cfg.seed = v.get<std::uint64_t>();
        } else if (key == "n" || key == "k" || key == "restarts" || key == "samples" || key == "dim") {
            need(v.is_number_integer(), "an integer");
            const int x = v.get<int>();
            if (key == "n") cfg.n = x;
            if (key == "k") cfg.k = x;
            if (key == "restarts") cfg.restarts = x;
            if (key == "samples") cfg.samples = x;
            if (key == "dim") cfg.oracle_dim = x;
        } else if (key == "json" || key == "richardson") {
            need(v.is_boolean(), "a boolean");
            (key == "json" ? cfg.json : cfg.richardson) = v.get<bool>();
        } else {
            need(v.is_number(), "a number");
            const double x = v.get<double>();
            if (key == "tol_success") cfg.tol_success = x;
            if (key == "tol_fail") cfg.tol_fail = x;
            if (key == "spectral_merge") cfg.spectral_merge = x;
            if (key == "step") cfg.step = x;
        }
    }
}

void validate(const RunConfig& cfg) {
    if (!(cfg.tol_success > 0.0 && cfg.tol_success < cfg.tol_fail)) {
        throw InputError("tolerances must satisfy 0 < tol_success < tol_fail");
    }
    if (cfg.restarts < 1) throw InputError("restarts must be >= 1");
    if (cfg.samples < 1) throw InputError("samples must be >= 1");
    if (!(cfg.spectral_merge > 0.0 && cfg.spectral_merge < 1.0)) throw InputError("spectral_merge must lie in (0, 1)");
    if (!cfg.catalog.empty() && !cfg.file.empty()) throw InputError("give either --catalog or --file, not both");
}

AlgebraSpec resolve_algebra(const RunConfig& cfg) {
    if (!cfg.file.empty()) return io::load_algebra(cfg.file);
    if (cfg.catalog.empty()) throw InputError("no algebra selected: pass --catalog NAME [--n N | --k K] or --file PATH");
    if (cfg.catalog.find('(') != std::string::npos) return parse_catalog_selector(cfg.catalog);
    const bool spin = cfg.catalog == "spin" || cfg.catalog == "spin_factor";
    const int p = spin ? (cfg.k ? cfg.k : cfg.n) : (cfg.n ? cfg.n : cfg.k);
    if (p == 0) throw InputError("catalog algebra '" + cfg.catalog + "' needs " + (spin ? "--k" : "--n"));
    return catalog(cfg.catalog, {p});
}

CommandResult cmd_verify(const RunConfig& cfg) {
    const AlgebraSpec a = resolve_algebra(cfg);
    CommandResult res;
    json rep = header("verify", a.name(), cfg);
    rep["dim"] = a.dim();
    std::string text = "verify " + a.name() + " (dim " + std::to_string(a.dim()) + ")\n";
    bool all = true;

    // each stage records its own failure so one fault does not hide the others
    auto stage = [&](const char* name, const std::function<bool(json&)>& body) {
        json part;
        bool ok = false;
        try {
            ok = body(part);
        } catch (const InputError&) {
            throw;
        } catch (const Error& e) {
            part["error"] = e.what();
        }
        part["pass"] = ok;
        rep["checks"][name] = part;
        all = all && ok;
        return ok;
    };

    stage("jb", [&](json& p) {
        const auto r = verify_jb(a, 100, cfg.seed);
        p = {{"commutativity", r.commutativity},           {"jordan_identity", r.jordan_identity},
             {"power_associativity", r.power_associativity}, {"submultiplicativity", r.submultiplicativity},
             {"square_norm", r.square_norm},               {"square_monotone", r.square_monotone},
             {"spectral_failures", r.spectral_failures},   {"samples", r.samples}};
        text += line("JB axioms (max residual)", r.max_residual(), r.pass);
        return r.pass;
    });
    bool proper = false;
    stage("proper", [&](json& p) {
        const auto r = properness_check(a);
        p = {{"kernel_dim", r.kernel.cols()}};
        text += line("seminorm kernel dim", static_cast<double>(r.kernel.cols()), r.proper);
        proper = r.proper;
        return r.proper;
    });
    stage("normality", [&](json& p) {
        if (!proper) throw PreconditionError("cone is not proper");
        const auto r = normality_estimate(a, cfg.seed);
        p = {{"gamma", r.gamma}, {"r", r.inner_radius}, {"bound_violation", r.bound_violation}};
        const bool ok = std::isfinite(r.gamma) && r.gamma >= 1.0 - 1e-9 && r.inner_radius > 0.0 &&
                        r.bound_violation <= 1e-8;
        text += line("normality gamma", r.gamma, ok);
        text += line("inner radius r", r.inner_radius, ok);
        return ok;
    });
    const DerivationSpace ds = derivation_space(a);
    rep["derivations"] = {{"dim", ds.dimension()}, {"gap_ratio", ds.gap_ratio}, {"warnings", ds.warnings}};
    stage("geometry", [&](json& p) {
        if (!proper) throw PreconditionError("cone is not proper");
        const auto g = geometry_suite(a, ds, cfg.samples, cfg.seed);
        p = {{"involution", g.involution},
             {"fixed_point", g.fixed_point},
             {"derivative_at_p", g.derivative_at_p},
             {"isometry", g.isometry},
             {"own_unit", g.own_unit},
             {"quad_invariance", g.quad_invariance.isometry_residual},
             {"flow_invariance", g.flow_invariance.isometry_residual},
             {"cartan",
              {{"dim_k", g.split.k_basis.size()},
               {"dim_p", g.split.p_basis.size()},
               {"grading", g.split.grading_residual},
               {"theta_square", g.split.theta_square_residual},
               {"bracket", g.split.bracket_residual},
               {"p_is_l", g.split.p_is_l_residual}}},
             {"evaluation",
              {{"condition_number", g.evaluation.condition_number},
               {"reconstruction", g.evaluation.reconstruction_residual}}}};
        if (!g.structural_error.empty()) p["evaluation"]["error"] = g.structural_error;
        text += line("symmetry involution", g.involution, g.involution <= g.tolerance);
        text += line("nu-isometry of s_p", g.isometry, g.isometry <= g.tolerance);
        text += line("ds_p(p) + I", g.derivative_at_p, g.derivative_at_p <= g.tolerance);
        text += line("Cartan bracket [p,p] in k", g.split.bracket_residual, g.split.pass(g.tolerance));
        text += line("evaluation condition", g.evaluation.condition_number, g.structural_error.empty());
        return g.pass;
    });
    rep["pass"] = all;
    text += std::string("result: ") + verdict_word(all) + "\n";
    res.exit_code = all ? kPass : kFail;
    res.report = std::move(rep);
    res.text = std::move(text);
    return res;
}

CommandResult cmd_orient(const RunConfig& cfg) {
    const AlgebraSpec a = resolve_algebra(cfg);
    const DerivationSpace ds = derivation_space(a);
    SolveOptions opts;
    opts.restarts = cfg.restarts;
    opts.tol_success = cfg.tol_success;
    opts.tol_fail = cfg.tol_fail;
    opts.seed = cfg.seed;
    const SolveResult r = solve_orientation(a, ds, opts);

    CommandResult res;
    json rep = header("orient", a.name(), cfg);
    rep["dim"] = a.dim();
    rep["derivation_dim"] = ds.dimension();
    rep["verdict"] = to_string(r.verdict);
    rep["residual"] = r.best_residual;
    rep["best_restart"] = r.best_restart;
    rep["restarts_run"] = r.restarts_run;
    rep["free_parameters"] = r.free_parameters;
    if (!r.obstruction.empty()) rep["obstruction"] = r.obstruction;
    std::ostringstream text;
    text << "orient " << a.name() << ": " << to_string(r.verdict) << ", residual " << std::setprecision(4)
         << r.best_residual << " (" << r.restarts_run << " restarts, " << r.free_parameters << " free parameters)\n";
    if (!r.obstruction.empty()) text << "  " << r.obstruction << "\n";

    res.exit_code = r.verdict == Verdict::Found ? kPass : r.verdict == Verdict::NotFound ? kFail : kInconclusive;
    if (r.verdict == Verdict::NotFound) text << "  residual floor " << r.best_residual << "\n";
    if (r.orientation) {
        const json witness = io::orientation_to_json(*r.orientation, ds);
        rep["orientation"] = witness;
        if (!cfg.witness.empty()) io::write_atomic(cfg.witness, witness.dump(2) + "\n");
        const auto check = verify_orientation(a, *r.orientation, 10.0 * cfg.tol_success);
        const ComplexAlgebra c = complexify(a, *r.orientation, false);
        const double assoc = associativity_residual(c);
        rep["lemma_checks"] = {{"quadratic", check.quadratic},
                               {"antisymmetry", check.antisymmetry},
                               {"center_kernel", check.center_kernel},
                               {"bracket", check.bracket},
                               {"pass", check.pass}};
        rep["associativity"] = assoc;
        bool ok = check.pass && assoc <= 1e-9;
        text << line("orientation identities", check.max_residual(), check.pass);
        text << line("associativity", assoc, assoc <= 1e-9);
        if (assoc <= 1e-8) {
            const auto cs = cstar_identity_check(c, 100, cfg.seed);
            rep["cstar_identity"] = {{"cstar", cs.cstar_identity},
                                     {"star_isometry", cs.star_isometry},
                                     {"adjoint", cs.adjoint},
                                     {"min_square_spectrum", cs.min_square_spectrum},
                                     {"pass", cs.pass}};
            text << line("C*-identity", cs.cstar_identity, cs.pass);
            ok = ok && cs.pass;
        } else {
            ok = false;
        }
        rep["pass"] = ok;
        if (!ok) res.exit_code = kFail;
    } else {
        rep["pass"] = false;
    }
    res.report = std::move(rep);
    res.text = text.str();
    return res;
}

CommandResult cmd_reconstruct(const RunConfig& cfg) {
    ExtensionSpec e;
    if (!cfg.extension_file.empty()) {
        e = io::load_extension(cfg.extension_file);
    } else if (!cfg.file.empty()) {
        throw InputError("reconstruct takes an extension via --extension, not an algebra file");
    } else {
        const std::string& name = cfg.catalog;
        if (name != "sym_real" && name != "herm_quat") {
            throw InputError("no built-in extension for '" + name + "'; use sym_real, herm_quat or --extension FILE");
        }
        const int n = cfg.n ? cfg.n : cfg.k;
        if (n < 1) throw InputError(name + " needs --n");
        e = name == "sym_real" ? transpose_extension(n) : quaternionic_extension(n);
    }

    CommandResult res;
    json rep = header("reconstruct", e.sub->name(), cfg);
    rep["ambient"] = e.ambient->name();
    std::ostringstream text;
    text << "reconstruct " << e.sub->name() << " inside " << e.ambient->name() << "\n";

    const auto ev = extension_verify(e, 200, cfg.seed);
    rep["extension"] = {{"phi_involution", ev.phi_involution},
                        {"phi_isometry", ev.phi_isometry},
                        {"jordan_subalgebra", ev.jordan_subalgebra},
                        {"membership_mismatches", ev.membership_mismatches},
                        {"compatibility", ev.compatibility},
                        {"violations", ev.violations},
                        {"pass", ev.pass}};
    text << line("extension compatibility", ev.compatibility, ev.pass);
    for (const auto& v : ev.violations) text << "  violation: " << v << "\n";
    const auto orient = verify_orientation(*e.ambient, e.orientation, 1e-8);
    rep["orientation_residual"] = orient.max_residual();
    if (!ev.pass || !orient.pass) {
        rep["pass"] = false;
        text << "result: FAIL\n";
        res.exit_code = kFail;
        res.report = std::move(rep);
        res.text = text.str();
        return res;
    }

    const ComplexAlgebra c = complexify(*e.ambient, e.orientation);
    const double assoc = associativity_residual(c);
    const RealReconstruction r = real_reconstruct(e, 1000, cfg.seed);
    const ReversibilityReport rev = reversibility_check(c, e.fixed);
    rep["associativity"] = assoc;
    rep["cstar_identity"] = r.cstar_identity;
    rep["hermitian_part_match"] = r.hermitian_part_is_v;
    rep["hermitian_part_residual"] = r.hermitian_match;
    rep["antiautomorphism"] = r.antiautomorphism;
    rep["closure"] = {{"steps", r.closure_steps}, {"residual", r.closure_residual}, {"involution", r.involution_residual}};
    rep["reversible"] = rev.reversible;
    rep["reversibility_residual"] = rev.residual;
    rep["dims"] = {{"V", e.fixed.cols()}, {"R(V)", r.dim()}, {"complexification", 2 * e.ambient->dim()}};
    const bool ok = r.pass && rev.reversible && assoc <= 1e-9;
    rep["pass"] = ok;

    text << "  dims: V " << e.fixed.cols() << ", R(V) " << r.dim() << ", complexification "
         << 2 * e.ambient->dim() << "\n";
    text << line("associativity", assoc, assoc <= 1e-9);
    text << line("C*-identity on R(V)", r.cstar_identity, r.cstar_identity <= 1e-7);
    text << line("hermitian part = V", r.hermitian_match, r.hermitian_part_is_v);
    text << line("psi antiautomorphism", r.antiautomorphism, r.antiautomorphism <= 1e-9);
    text << line("reversibility", rev.residual, rev.reversible);
    text << "result: " << verdict_word(ok) << "\n";
    res.exit_code = ok ? kPass : kFail;
    res.report = std::move(rep);
    res.text = text.str();
    return res;
}

CommandResult cmd_catalog(const RunConfig& cfg) {
    CommandResult res;
    if (cfg.catalog.empty() && cfg.file.empty()) {
        json rep = {{"schema", kSchema}, {"command", "catalog"}};
        json list = json::array();
        std::ostringstream text;
        text << "catalog algebras:\n";
        for (const auto& name : catalog_names()) {
            const char* param = name == "spin_factor" ? "--k" : name == "direct_sum" ? "selector" : "--n";
            list.push_back({{"name", name}, {"parameter", param}});
            text << "  " << std::left << std::setw(14) << name << param << "\n";
        }
        text << "selectors such as \"direct_sum(herm_complex(2),abelian(1))\" are accepted by --catalog\n";
        rep["algebras"] = list;
        res.report = std::move(rep);
        res.text = text.str();
        return res;
    }
    const AlgebraSpec a = resolve_algebra(cfg);
    json rep = header("catalog", a.name(), cfg);
    rep["algebra_json"] = io::algebra_to_json(a);
    rep["center_dim"] = center(a).cols();
    std::ostringstream text;
    text << a.name() << ": dim " << a.dim() << ", centre dim " << center(a).cols() << "\n";
    res.report = std::move(rep);
    res.text = text.str();
    return res;
}

CommandResult cmd_recover(const RunConfig& cfg) {
    std::optional<AlgebraSpec> a;
    ConeOracle oracle;
    if (!cfg.oracle_cmd.empty()) {
        if (cfg.oracle_dim < 1) throw InputError("--oracle-cmd needs --dim");
        oracle = wire::subprocess_oracle(split_words(cfg.oracle_cmd), cfg.oracle_dim);
    } else {
        a = resolve_algebra(cfg);
        oracle = make_cone_oracle(*a);
    }
    RecoverOptions opts;
    opts.step = cfg.step;
    opts.richardson = cfg.richardson;
    const auto c = recover_structure(oracle, opts);

    CommandResult res;
    json rep = header("recover", a ? a->name() : cfg.oracle_cmd, cfg);
    json entries = json::array();
    const int n = oracle.dim;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                const double v = c[static_cast<std::size_t>(k)](i, j);
                if (std::abs(v) > 1e-12) entries.push_back({k, i, j, v});
            }
        }
    }
    rep["dim"] = n;
    rep["identity"] = io::to_json(oracle.base_point);
    rep["structure"] = entries;
    rep["step"] = cfg.step;
    std::ostringstream text;
    text << "recovered " << entries.size() << " structure constants (dim " << n << ", step " << cfg.step << ")\n";
    bool ok = true;
    if (a) {
        double err = 0.0;
        for (int k = 0; k < n; ++k) err = std::max(err, (c[static_cast<std::size_t>(k)] - a->structure(k)).cwiseAbs().maxCoeff());
        rep["max_error"] = err;
        ok = err <= 1e-4;
        text << line("max entrywise error", err, ok);
    }
    rep["pass"] = ok;
    res.exit_code = ok ? kPass : kFail;
    res.report = std::move(rep);
    res.text = text.str();
    return res;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Jordan algebras, symmetric cones, orientations and C*-reconstruction", "conelab"};
    app.require_subcommand(1);
    RunConfig given;
    std::string config_path;
    std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> explicit_opts;

    auto common = [&](CLI::App* sub) {
        auto track = [&](CLI::Option* o, std::function<void(RunConfig&)> copy) { explicit_opts.emplace_back(o, copy); };
        track(sub->add_option("--catalog", given.catalog, "catalog algebra name or selector"),
              [&](RunConfig& c) { c.catalog = given.catalog; });
        track(sub->add_option("--n", given.n, "size parameter"), [&](RunConfig& c) { c.n = given.n; });
        track(sub->add_option("--k", given.k, "spin-factor parameter"), [&](RunConfig& c) { c.k = given.k; });
        track(sub->add_option("--file", given.file, "algebra JSON file"), [&](RunConfig& c) { c.file = given.file; });
        track(sub->add_option("--seed", given.seed, "random seed"), [&](RunConfig& c) { c.seed = given.seed; });
        track(sub->add_option("--spectral-merge", given.spectral_merge, "root merge tolerance"),
              [&](RunConfig& c) { c.spectral_merge = given.spectral_merge; });
        track(sub->add_flag("--json", given.json, "print the JSON report"), [&](RunConfig& c) { c.json = given.json; });
        track(sub->add_option("--out", given.out, "write the JSON report to this path"),
              [&](RunConfig& c) { c.out = given.out; });
        sub->add_option("--config", config_path, "JSON config file (flags override it)");
    };

    CLI::App* verify = app.add_subcommand("verify", "JB axioms, order structure and cone geometry");
    common(verify);
    verify->add_option("--samples", given.samples, "geometry samples");
    explicit_opts.emplace_back(verify->get_option("--samples"), [&](RunConfig& c) { c.samples = given.samples; });

    CLI::App* orient = app.add_subcommand("orient", "search for an orientation and check the C*-product");
    common(orient);
    explicit_opts.emplace_back(orient->add_option("--restarts", given.restarts, "solver restarts"),
                               [&](RunConfig& c) { c.restarts = given.restarts; });
    explicit_opts.emplace_back(orient->add_option("--tol-success", given.tol_success, "Found threshold"),
                               [&](RunConfig& c) { c.tol_success = given.tol_success; });
    explicit_opts.emplace_back(orient->add_option("--tol-fail", given.tol_fail, "NotFound threshold"),
                               [&](RunConfig& c) { c.tol_fail = given.tol_fail; });
    explicit_opts.emplace_back(orient->add_option("--witness", given.witness, "write the orientation here"),
                               [&](RunConfig& c) { c.witness = given.witness; });

    CLI::App* reconstruct = app.add_subcommand("reconstruct", "real C*-algebra from an orientable extension");
    common(reconstruct);
    explicit_opts.emplace_back(reconstruct->add_option("--extension", given.extension_file, "extension JSON file"),
                               [&](RunConfig& c) { c.extension_file = given.extension_file; });

    CLI::App* cat = app.add_subcommand("catalog", "list catalog algebras or export one as JSON");
    common(cat);

    CLI::App* recover = app.add_subcommand("recover", "recover the Jordan product from a cone oracle");
    common(recover);
    explicit_opts.emplace_back(recover->add_option("--oracle-cmd", given.oracle_cmd, "external oracle command"),
                               [&](RunConfig& c) { c.oracle_cmd = given.oracle_cmd; });
    explicit_opts.emplace_back(recover->add_option("--dim", given.oracle_dim, "dimension of the external oracle"),
                               [&](RunConfig& c) { c.oracle_dim = given.oracle_dim; });
    explicit_opts.emplace_back(recover->add_option("--step", given.step, "finite-difference step"),
                               [&](RunConfig& c) { c.step = given.step; });
    explicit_opts.emplace_back(recover->add_flag("--richardson", given.richardson, "Richardson extrapolation"),
                               [&](RunConfig& c) { c.richardson = given.richardson; });

    CLI::App* serve = app.add_subcommand("oracle-serve", "answer cone-oracle requests on stdin/stdout");
    common(serve);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) apply_config(cfg, io::read_json(config_path));
        for (const auto& [opt, copy] : explicit_opts) {
            if (opt->count() > 0) copy(cfg);
        }
        validate(cfg);
        set_default_merge_tol(cfg.spectral_merge);

        if (serve->parsed()) {
            const AlgebraSpec a = resolve_algebra(cfg);
            wire::serve(make_cone_oracle(a), in, out);
            return kPass;
        }
        CommandResult res;
        if (verify->parsed()) {
            cfg.command = "verify";
            res = cmd_verify(cfg);
        } else if (orient->parsed()) {
            cfg.command = "orient";
            res = cmd_orient(cfg);
        } else if (reconstruct->parsed()) {
            cfg.command = "reconstruct";
            res = cmd_reconstruct(cfg);
        } else if (cat->parsed()) {
            cfg.command = "catalog";
            res = cmd_catalog(cfg);
        } else {
            cfg.command = "recover";
            res = cmd_recover(cfg);
        }
        const std::string doc = res.report.dump(2) + "\n";
        if (!cfg.out.empty()) io::write_atomic(cfg.out, doc);
        out << (cfg.json ? doc : res.text);
        return res.exit_code;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kFail;
    }
}

}  // namespace conelab::cli
