#pragma once

#include "conelab/algebra.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace conelab::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2, kInconclusive = 3 };

struct RunConfig {
    std::string command;
    std::string catalog;         ///< catalog name or full selector such as "direct_sum(abelian(1),spin(2))"
    int n = 0;                   ///< size parameter (0: unset)
    int k = 0;                   ///< spin-factor parameter (0: unset)
    std::string file;            ///< algebra JSON file
    std::string extension_file;  ///< extension JSON file (reconstruct)
    std::uint64_t seed = 0;
    int restarts = 64;
    double tol_success = 1e-9;
    double tol_fail = 1e-4;
    double spectral_merge = 1e-7;
    int samples = 10;            ///< geometry samples for verify
    bool json = false;
    std::string out;             ///< JSON report path
    std::string witness;         ///< orientation witness path (orient)
    std::string oracle_cmd;      ///< external oracle command line (recover)
    int oracle_dim = 0;
    double step = 1e-3;
    bool richardson = false;
};

/// Overlays keys from a JSON config object; unknown keys raise InputError.
void apply_config(RunConfig& cfg, const nlohmann::json& doc);

/// Throws InputError for inconsistent settings (e.g. tol_success >= tol_fail).
void validate(const RunConfig& cfg);

/// Algebra named by --catalog/--n/--k or loaded from --file.
AlgebraSpec resolve_algebra(const RunConfig& cfg);

struct CommandResult {
    int exit_code = kPass;
    nlohmann::json report;
    std::string text;
};

CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_orient(const RunConfig& cfg);
CommandResult cmd_reconstruct(const RunConfig& cfg);
CommandResult cmd_catalog(const RunConfig& cfg);
CommandResult cmd_recover(const RunConfig& cfg);

/// Full command-line entry point; `args` excludes the program name. The
/// oracle-serve subcommand reads requests from `in` and answers on `out`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace conelab::cli
