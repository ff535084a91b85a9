#pragma once

#include "conelab/extension.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace conelab::io {

using nlohmann::json;

/// Parses an algebra document:
/// {"name", "dim", "identity": [n], "structure": [[k, i, j, v], ...], "trace_form"?: [[n×n]]}.
/// A triple with i ≠ j also sets (k, j, i) unless that entry is given explicitly;
/// explicit entries that disagree after expansion are rejected with InputError.
AlgebraSpec algebra_from_json(const json& doc);

/// Inverse of algebra_from_json (upper-triangular triples, zeros omitted).
json algebra_to_json(const AlgebraSpec& a);

AlgebraSpec load_algebra(const std::filesystem::path& path);

/// FNV-1a (64 bit) over the derivation basis rounded to 1e−8, as 16 hex digits.
std::string basis_hash(const DerivationSpace& ds);

/// {"basis_hash", "coeffs": [[d×dim]], "residual"}.
json orientation_to_json(const Orientation& j, const DerivationSpace& ds);

/// Throws InputError if the hash or the shape does not match `ds`.
Orientation orientation_from_json(const json& doc, const AlgebraSpec& a, const DerivationSpace& ds);

/**
 * Extension document:
 * {"ambient": selector string | algebra object, "phi": [[n×n]],
 *  "fixed"?: [[n], ...] (fixed basis vectors), "orientation"?: "canonical" | "zero" | orientation object,
 *  "name"?: string}
 */
ExtensionSpec extension_from_json(const json& doc);
ExtensionSpec load_extension(const std::filesystem::path& path);

/// Reads and parses a JSON file; InputError on I/O or syntax errors.
json read_json(const std::filesystem::path& path);

/// Writes through a temporary file in the same directory and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

json to_json(const Vec& v);
json to_json(const Mat& m);  ///< row-major nested arrays

}  // namespace conelab::io
