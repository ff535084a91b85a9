#pragma once

#include "conelab/geometry.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace conelab::wire {

/**
 * Framing for the external cone-oracle boundary. All integers and floats are
 * little-endian.
 *
 *   request  := u32 len, len ASCII bytes (MEMBER | SYM | EXP), u32 argc, argc × array
 *   response := array
 *   array    := u64 count, count × f64
 *
 * MEMBER x → [1] interior, [0] boundary, [−1] outside. SYM p x → s_p(x).
 * EXP a → exp_chart(a). An empty response array signals an error.
 */
struct Request {
    std::string command;
    std::vector<Vec> args;
};

void write_array(std::ostream& out, const Vec& v);
/// Throws InputError on truncated input or an implausible length.
Vec read_array(std::istream& in);

void write_request(std::ostream& out, const Request& r);
/// std::nullopt on clean end of input before a request starts.
std::optional<Request> read_request(std::istream& in);

/// Answers requests against `oracle` until end of input; returns the request count.
int serve(const ConeOracle& oracle, std::istream& in, std::ostream& out);

/// Oracle backed by a child process speaking the framing above on its stdin and
/// stdout. The base point is obtained as EXP(0). Calls are serialised by a mutex;
/// the child is terminated when the last copy of the oracle is destroyed. Throws
/// UnreliableOracleError when the child cannot be started or stops answering.
ConeOracle subprocess_oracle(const std::vector<std::string>& argv, int dim);

}  // namespace conelab::wire
