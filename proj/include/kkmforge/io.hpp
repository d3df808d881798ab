#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kkmforge/complex.hpp"
#include "kkmforge/covers.hpp"
#include "kkmforge/lp.hpp"
#include "kkmforge/pl_sections.hpp"
#include "kkmforge/rational.hpp"

namespace kkmforge {

using Json = nlohmann::json;

/// Malformed or unreadable input (CLI exit code 2).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json read_json_file(const std::filesystem::path& path);

/// Writes via a temporary file in the same directory and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

/// Two-space indented dump with a trailing newline; keys come out sorted.
std::string dump(const Json& value);

// Rationals travel as strings ("p/q"); integers are accepted on input.
Rational rational_from_json(const Json& value);
Json to_json(const Rational& value);
RationalVector vector_from_json(const Json& value);
Json to_json(const RationalVector& value);
std::vector<RationalVector> points_from_json(const Json& value);
Json to_json(const std::vector<RationalVector>& points);

/// {"facets": [[v, ...], ...]}, or {"simplices": [...]} listing a face-closed set.
SimplicialComplex complex_from_json(const Json& value);
Json to_json(const SimplicialComplex& complex);

/// {"degree": k, "support": [[v, ...], ...]}.
Gf2Cochain cochain_from_json(const SimplicialComplex& complex, const Json& value);
Json cochain_to_json(const SimplicialComplex& complex, const Gf2Cochain& cochain);
Json simplices_to_json(const std::vector<Simplex>& simplices);

/// {"variables": n, "rows": [{"coeffs": [...], "rel": "<=" | "=" | ">=", "rhs": q}]}.
LinearSystem system_from_json(const Json& value);
Json to_json(const LinearSystem& system);
Json to_json(const RationalCertificate& certificate);

/// {"base": {"simplex_sizes": [...], "resolution": N}, "sets": {label: [cell ids]}}.
GridCover cover_from_json(const Json& value, bool require_covering = true);
Json to_json(const GridCover& cover);

/// A family is a list of weight vectors.
DisjointFamily family_from_json(const Json& value);
Json to_json(const DisjointFamily& family);

/// Wraps parse errors from nlohmann and the library's std::invalid_argument
/// into InputError with `what` as context.
template <typename F>
auto parse_or_throw(const std::string& what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(what + ": " + e.what());
    }
}

}  // namespace kkmforge
