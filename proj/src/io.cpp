#include "kkmforge/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

namespace kkmforge {

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
    const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    const auto tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << text;
        out.flush();
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

std::string dump(const Json& value) { return value.dump(2) + "\n"; }

Rational rational_from_json(const Json& value) {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return make_rational(value.get<long long>());
    throw InputError("expected a rational string or an integer, got " + value.dump());
}

Json to_json(const Rational& value) { return format_rational(value); }

RationalVector vector_from_json(const Json& value) {
    if (!value.is_array()) throw InputError("expected an array of rationals");
    RationalVector out;
    for (const auto& x : value) out.push_back(rational_from_json(x));
    return out;
}

Json to_json(const RationalVector& value) {
    Json out = Json::array();
    for (const auto& x : value) out.push_back(to_json(x));
    return out;
}

std::vector<RationalVector> points_from_json(const Json& value) {
    if (!value.is_array()) throw InputError("expected an array of points");
    std::vector<RationalVector> out;
    for (const auto& p : value) out.push_back(vector_from_json(p));
    return out;
}

Json to_json(const std::vector<RationalVector>& points) {
    Json out = Json::array();
    for (const auto& p : points) out.push_back(to_json(p));
    return out;
}

namespace {

std::vector<Simplex> simplices_from_json(const Json& value) {
    if (!value.is_array()) throw InputError("expected an array of simplices");
    std::vector<Simplex> out;
    for (const auto& s : value) {
        if (!s.is_array()) throw InputError("a simplex must be an array of vertex ids");
        Simplex simplex;
        for (const auto& v : s) {
            if (!v.is_number_integer()) throw InputError("vertex ids must be integers");
            simplex.push_back(v.get<Vertex>());
        }
        std::sort(simplex.begin(), simplex.end());
        out.push_back(std::move(simplex));
    }
    return out;
}

const Json& field(const Json& value, const char* key) {
    if (!value.is_object() || !value.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return value.at(key);
}

}  // namespace

SimplicialComplex complex_from_json(const Json& value) {
    return parse_or_throw("complex", [&] {
        if (value.is_object() && value.contains("simplices") && !value.contains("facets")) {
            // An explicit simplex list must already be closed under faces.
            const auto listed = simplices_from_json(value.at("simplices"));
            auto complex = SimplicialComplex::from_facets(listed);
            std::size_t total = 0;
            for (int k = 0; k <= complex.dimension(); ++k) total += complex.count(k);
            const std::set<Simplex> distinct(listed.begin(), listed.end());
            if (distinct.size() != total) throw InputError("simplex list is not closed under faces");
            return complex;
        }
        return SimplicialComplex::from_facets(simplices_from_json(field(value, "facets")));
    });
}

Json to_json(const SimplicialComplex& complex) { return Json{{"facets", simplices_to_json(complex.facets())}}; }

Json simplices_to_json(const std::vector<Simplex>& simplices) {
    Json out = Json::array();
    for (const auto& s : simplices) out.push_back(s);
    return out;
}

Gf2Cochain cochain_from_json(const SimplicialComplex& complex, const Json& value) {
    return parse_or_throw("cochain", [&] {
        const Json& degree = field(value, "degree");
        if (!degree.is_number_integer() || degree.get<int>() < 0) throw InputError("degree must be a nonnegative integer");
        return Gf2Cochain::from_support(complex, degree.get<int>(), simplices_from_json(field(value, "support")));
    });
}

Json cochain_to_json(const SimplicialComplex& complex, const Gf2Cochain& cochain) {
    return Json{{"degree", cochain.degree()}, {"support", simplices_to_json(cochain.support(complex))}};
}

LinearSystem system_from_json(const Json& value) {
    return parse_or_throw("linear system", [&] {
        const Json& vars = field(value, "variables");
        if (!vars.is_number_integer() || vars.get<long long>() < 0) throw InputError("variables must be a count");
        LinearSystem sys(vars.get<std::size_t>());
        for (const auto& row : field(value, "rows")) {
            const std::string rel = field(row, "rel").get<std::string>();
            Relation r;
            if (rel == "<=") {
                r = Relation::LessEqual;
            } else if (rel == "=") {
                r = Relation::Equal;
            } else if (rel == ">=") {
                r = Relation::GreaterEqual;
            } else {
                throw InputError("unknown relation \"" + rel + "\"");
            }
            sys.add_row(vector_from_json(field(row, "coeffs")), r, rational_from_json(field(row, "rhs")));
        }
        return sys;
    });
}

Json to_json(const LinearSystem& system) {
    Json rows = Json::array();
    for (const auto& row : system.rows()) {
        const char* rel = row.relation == Relation::LessEqual ? "<=" : (row.relation == Relation::Equal ? "=" : ">=");
        rows.push_back(Json{{"coeffs", to_json(row.coeffs)}, {"rel", rel}, {"rhs", to_json(row.rhs)}});
    }
    return Json{{"variables", system.variable_count()}, {"rows", rows}};
}

Json to_json(const RationalCertificate& certificate) {
    if (certificate.is_feasible()) return Json{{"kind", "feasible"}, {"point", to_json(certificate.point)}};
    return Json{{"kind", "infeasible"}, {"multipliers", to_json(certificate.multipliers)}};
}

GridCover cover_from_json(const Json& value, bool require_covering) {
    return parse_or_throw("cover", [&] {
        const Json& base = field(value, "base");
        GridBase grid(field(base, "simplex_sizes").get<std::vector<std::size_t>>(), field(base, "resolution").get<int>());
        std::map<std::string, std::vector<std::size_t>> sets;
        for (const auto& [label, cells] : field(value, "sets").items()) sets[label] = cells.get<std::vector<std::size_t>>();
        return GridCover(std::move(grid), std::move(sets), require_covering);
    });
}

Json to_json(const GridCover& cover) {
    Json sets = Json::object();
    for (const auto& [label, cells] : cover.sets()) sets[label] = cells;
    return Json{{"base", {{"simplex_sizes", cover.base().simplex_sizes()}, {"resolution", cover.base().resolution()}}},
                {"sets", sets}};
}

DisjointFamily family_from_json(const Json& value) {
    return parse_or_throw("probe family", [&] {
        std::vector<WeightVector> members;
        for (const auto& w : points_from_json(value)) members.emplace_back(w);
        return DisjointFamily(std::move(members));
    });
}

Json to_json(const DisjointFamily& family) {
    Json out = Json::array();
    for (const auto& m : family.members()) out.push_back(to_json(m.weights()));
    return out;
}

}  // namespace kkmforge
