// kkmforge: command-line front end. Exit codes: 0 witness or success,
// 1 counterexample / hypothesis violation / failed verification, 2 input error.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include "kkmforge/acceptance.hpp"
#include "kkmforge/convex.hpp"
#include "kkmforge/covers.hpp"
#include "kkmforge/io.hpp"
#include "kkmforge/line_bundle.hpp"
#include "kkmforge/report.hpp"

using namespace kkmforge;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct RunConfig {
    std::uint64_t seed = 1;
    int resolution = 0;
    std::size_t probes = 100;
    double epsilon = 1e-9;
    std::string out;
    std::string verify;
};

Json config_json(const RunConfig& c) {
    return Json{{"seed", c.seed}, {"resolution", c.resolution}, {"probes", c.probes}, {"epsilon", c.epsilon}};
}

void emit(const RunConfig& config, Json report) {
    report["config"] = config_json(config);
    const std::string text = dump(report);
    if (config.out.empty()) {
        std::cout << text;
    } else {
        write_file_atomic(config.out, text);
    }
}

// --verify mode: re-check a stored report instead of computing one.
int verified(const std::string& why) {
    if (why.empty()) {
        std::cout << "verified\n";
        return kOk;
    }
    std::cerr << "verification failed: " << why << "\n";
    return kViolation;
}

std::filesystem::path sibling(const std::filesystem::path& input, const std::string& ref) {
    const std::filesystem::path p(ref);
    return p.is_absolute() ? p : input.parent_path() / p;
}

// A JSON field that is either inline or a path relative to the input file.
Json inline_or_file(const std::filesystem::path& input, const Json& value) {
    return value.is_string() ? read_json_file(sibling(input, value.get<std::string>())) : value;
}

const Json& need(const Json& value, const char* key) {
    if (!value.is_object() || !value.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return value.at(key);
}

int cmd_cohomology(const RunConfig& config, const std::string& path, std::optional<int> degree) {
    const auto complex = complex_from_json(read_json_file(path));
    if (!config.verify.empty()) return verified(verify_cohomology_report(complex, read_json_file(config.verify)));
    const int top = complex.dimension();
    if (degree && (*degree < 0 || *degree > top)) throw InputError("degree out of range");
    Json betti = Json::array(), reps = Json::array();
    for (int k = degree.value_or(0); k <= degree.value_or(top); ++k) {
        const auto basis = cohomology_basis(complex, k);
        betti.push_back(basis.betti);
        Json list = Json::array();
        for (const auto& c : basis.basis) list.push_back(cochain_to_json(complex, c));
        reps.push_back(list);
    }
    Json report{{"dimension", top}, {"f_vector", complex.f_vector()}, {"betti", betti}, {"representatives", reps}};
    if (degree) report["degree"] = *degree;
    emit(config, report);
    return kOk;
}

int cmd_euler(const RunConfig& config, const std::vector<int>& dims, std::vector<int> exponents) {
    if (dims.empty()) throw InputError("give at least one --n");
    if (exponents.empty()) exponents.assign(dims.size(), 1);
    if (exponents.size() != dims.size()) throw InputError("one exponent per projective factor");
    std::vector<ProjectiveSpace> spaces;
    for (int n : dims) spaces.push_back(parse_or_throw("projective space", [&] { return projective_space(n); }));
    auto complex = spaces.front().complex;
    std::vector<std::map<Vertex, Vertex>> projections{{}};
    for (Vertex v : complex->vertices()) projections.front()[v] = v;
    for (std::size_t i = 1; i < spaces.size(); ++i) {
        auto prod = product_complex(*complex, *spaces[i].complex);
        for (auto& proj : projections) {
            std::map<Vertex, Vertex> composed;
            for (const auto& [v, left] : prod.to_left) composed[v] = proj.at(left);
            proj = std::move(composed);
        }
        projections.push_back(prod.to_right);
        complex = std::make_shared<const SimplicialComplex>(std::move(prod.complex));
    }
    std::vector<std::pair<LineBundleCocycle, int>> factors;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        const auto h = hopf_cocycle(spaces[i].complex, spaces[i].cover);
        factors.emplace_back(spaces.size() == 1 ? h : pullback_bundle(h, complex, projections[i]), exponents[i]);
    }
    const auto e = parse_or_throw("euler class", [&] { return euler_class_product(factors); });
    Json report = to_json(*complex, e);
    report["projective_dimensions"] = dims;
    report["exponents"] = exponents;
    emit(config, report);
    return kOk;
}

std::vector<FactorParams> parse_params(const std::vector<std::string>& specs) {
    std::vector<FactorParams> out;
    for (const auto& s : specs) {
        const auto colon = s.find(':');
        if (colon == std::string::npos) throw InputError("factor parameters look like d:n, got " + s);
        out.push_back({std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))});
    }
    return out;
}

int verdict_code(Verdict v) { return v == Verdict::Witness ? kOk : kViolation; }

int cmd_check(const RunConfig& config, const std::string& kind, const std::string& path, int d, int n, int r,
              const std::vector<std::string>& param_specs, int rp, int class_count) {
    if (kind == "cupvanish") {
        SimplicialComplex complex = SimplicialComplex::from_facets({{0}});
        std::map<std::string, SimplicialComplex> sets;
        std::vector<Gf2Cochain> classes;
        if (rp > 0) {
            // Random multiplicity-2 cover of RP^rp against powers of the Hopf class.
            const auto space = parse_or_throw("projective space", [&] { return projective_space(rp); });
            complex = *space.complex;
            sets = random_subcomplex_cover(complex, std::max(2, class_count), config.seed);
            classes.assign(static_cast<std::size_t>(class_count), hopf_cocycle(space.complex, space.cover).edge_signs());
        } else {
            if (path.empty()) throw InputError("cupvanish needs an input file or --rp");
            const Json input = read_json_file(path);
            complex = complex_from_json(inline_or_file(path, need(input, "complex")));
            for (const auto& [label, value] : need(input, "sets").items()) sets.emplace(label, complex_from_json(value));
            for (const auto& c : need(input, "classes")) classes.push_back(cochain_from_json(complex, c));
        }
        if (!config.verify.empty()) {
            return verified(verify_cupvanish_report(complex, sets, classes, read_json_file(config.verify)));
        }
        const auto report = parse_or_throw("cupvanish", [&] { return cup_vanishing_check(complex, sets, classes); });
        Json out = to_json(complex, report);
        if (rp > 0) out["sets"] = [&] {
            Json s = Json::object();
            for (const auto& [label, sub] : sets) s[label] = to_json(sub);
            return s;
        }();
        emit(config, out);
        return report.outcome == CupVanishingReport::Outcome::ProductVanishes ? kOk : kViolation;
    }

    const GridCover cover = cover_from_json(read_json_file(path), kind != "skkm");
    if (!config.verify.empty()) return verified(verify_check_report(cover, read_json_file(config.verify)));
    const auto& base = cover.base();
    CheckReport report;
    if (kind == "kkm") {
        const auto probes = default_probes(base.simplex_sizes()[0], d, config.probes, config.seed);
        report = parse_or_throw("kkm", [&] { return kkm_check(cover, d, n, probes); });
    } else if (kind == "lebesgue") {
        const auto params = parse_params(param_specs);
        if (params.size() != base.factor_count()) throw InputError("give one --params d:n per factor");
        std::vector<std::vector<DisjointFamily>> probes;
        for (std::size_t l = 0; l < params.size(); ++l) {
            probes.push_back(parse_or_throw("probes", [&] {
                return default_probes(base.simplex_sizes()[l], params[l].d, config.probes, config.seed + l);
            }));
        }
        report = parse_or_throw("lebesgue", [&] { return lebesgue_check(cover, params, probes); });
    } else if (kind == "skkm") {
        const std::size_t vertices = base.simplex_sizes()[0];
        const auto dp = parse_or_throw("probes", [&] { return default_probes(vertices, d, config.probes, config.seed); });
        const auto rp_probes =
            parse_or_throw("probes", [&] { return default_probes(vertices, r, config.probes, config.seed + 1); });
        report = parse_or_throw("skkm", [&] { return strengthened_kkm_check(cover, d, n, r, dp, rp_probes); });
    } else {
        throw InputError("unknown check " + kind);
    }
    report.sampling.seed = config.seed;
    emit(config, to_json(report));
    return verdict_code(report.verdict);
}

std::vector<std::vector<ConvexSet>> helly_classes(const Json& input) {
    std::vector<std::vector<ConvexSet>> classes;
    for (const auto& cls : need(input, "classes")) {
        std::vector<ConvexSet> sets;
        for (const auto& s : cls) {
            if (s.contains("system")) {
                sets.push_back(ConvexSet::polyhedron(system_from_json(s.at("system"))));
            } else {
                sets.push_back(parse_or_throw("convex set", [&] { return ConvexSet::hull(points_from_json(need(s, "points"))); }));
            }
        }
        classes.push_back(std::move(sets));
    }
    return classes;
}

TverbergInstance general_instance(const Json& input) {
    TverbergInstance inst;
    inst.r = need(input, "r").get<int>();
    inst.dim = need(input, "dim").get<std::size_t>();
    for (const auto& per_color : need(input, "images")) {
        std::vector<std::vector<RationalVector>> blocks;
        for (const auto& block : per_color) blocks.push_back(points_from_json(block));
        inst.images.push_back(std::move(blocks));
    }
    if (input.contains("alpha")) inst.alpha = vector_from_json(input.at("alpha"));
    parse_or_throw("instance", [&] {
        validate_instance(inst);
        return 0;
    });
    return inst;
}

int cmd_convex(const RunConfig& config, const std::string& kind, const std::string& path) {
    const Json body = read_json_file(path);
    if (kind == "centerpoint") {
        const auto points = points_from_json(need(body, "points"));
        if (!config.verify.empty()) return verified(verify_centerpoint_report(points, read_json_file(config.verify)));
        const auto c = parse_or_throw("centerpoint", [&] { return centerpoint(points); });
        emit(config, to_json(c));
        return c.depth.depth >= c.required_depth ? kOk : kViolation;
    }
    if (kind == "helly") {
        const auto classes = parse_or_throw("helly", [&] { return helly_classes(body); });
        const std::size_t dim = need(body, "dim").get<std::size_t>();
        if (!config.verify.empty()) return verified(verify_helly_report(classes, dim, read_json_file(config.verify)));
        const auto result = parse_or_throw("helly", [&] { return colorful_helly(classes, dim); });
        emit(config, to_json(result));
        return result.status == TheoremStatus::Conclusion ? kOk : kViolation;
    }
    if (kind == "barany") {
        const auto k = points_from_json(need(body, "K"));
        std::vector<std::vector<RationalVector>> classes;
        for (const auto& cls : need(body, "classes")) classes.push_back(points_from_json(cls));
        const std::size_t dim = need(body, "dim").get<std::size_t>();
        if (!config.verify.empty()) return verified(verify_barany_report(k, classes, dim, read_json_file(config.verify)));
        const auto result = parse_or_throw("barany", [&] { return barany_dual(k, classes, dim); });
        emit(config, to_json(result));
        return result.status == TheoremStatus::Conclusion ? kOk : kViolation;
    }
    if (kind == "tverberg" || kind == "gentverberg") {
        TverbergInstance inst;
        if (kind == "tverberg") {
            const auto points = points_from_json(need(body, "points"));
            const int r = need(body, "r").get<int>();
            inst = parse_or_throw("tverberg", [&] { return tverberg_instance(points, r); });
            parse_or_throw("tverberg", [&] {
                validate_instance(inst);
                return 0;
            });
        } else {
            inst = parse_or_throw("gentverberg", [&] { return general_instance(body); });
        }
        if (!config.verify.empty()) return verified(verify_tverberg_report(inst, read_json_file(config.verify)));
        const auto report = generalized_tverberg(inst);
        Json out = to_json(report);
        if (kind == "tverberg" && report.brute_force) {
            const auto& c = report.brute_force->common;
            out["tverberg_point"] = to_json(RationalVector(c.begin(), c.end() - 1));
        }
        emit(config, out);
        return report.status == TverbergReport::Status::Witness ? kOk : kViolation;
    }
    throw InputError("unknown convex kind " + kind);
}

int cmd_section_demo(RunConfig config, const std::string& csv) {
    if (config.resolution <= 0) config.resolution = 10000;
    const auto demo = rp1_two_arc_demo(static_cast<std::size_t>(config.resolution));
    if (!csv.empty()) {
        std::ostringstream text;
        text << "parameter,angle,norm_s1,norm_s2,disjoint\n";
        char line[160];
        for (const auto& s : demo.samples) {
            std::snprintf(line, sizeof line, "%s,%.12f,%.12f,%.12f,%d\n", format_rational(s.parameter).c_str(), s.angle,
                          s.norms.at(0), s.norms.at(1), s.disjoint ? 1 : 0);
            text << line;
        }
        write_file_atomic(csv, text.str());
    }
    Json report = to_json(demo);
    const bool ok = demo.min_max_norm > config.epsilon && demo.disjointness_holds;
    report["nowhere_zero"] = demo.min_max_norm > config.epsilon;
    emit(config, report);
    return ok ? kOk : kViolation;
}

int cmd_generate(const RunConfig& config, const std::string& what, const std::vector<std::size_t>& sizes, int n,
                 int max_mult) {
    if (what == "rp") {
        const auto space = parse_or_throw("projective space", [&] { return projective_space(n); });
        Json out = to_json(*space.complex);
        out["hopf_class"] = cochain_to_json(*space.complex, hopf_cocycle(space.complex, space.cover).edge_signs());
        emit(config, out);
        return kOk;
    }
    const int resolution = config.resolution > 0 ? config.resolution : 6;
    const GridBase base = parse_or_throw("grid", [&] { return GridBase(sizes, resolution); });
    if (what == "band") {
        emit(config, to_json(parse_or_throw("band cover", [&] { return random_band_cover(base, max_mult, config.seed); })));
    } else if (what == "stars") {
        emit(config, to_json(parse_or_throw("star cover", [&] { return vertex_star_cover(base); })));
    } else {
        throw InputError("unknown generator " + what);
    }
    return kOk;
}

int cmd_acceptance(const RunConfig& config, std::optional<std::uint64_t> seed, const std::string& rp2, int only) {
    AcceptanceOptions options;
    if (seed) options.seed = *seed;
    if (!rp2.empty()) options.rp2_override = complex_from_json(read_json_file(rp2));
    std::vector<CriterionResult> results;
    auto show = [&](const CriterionResult& r) {
        std::cerr << format_result(r) << "\n";
        results.push_back(r);
    };
    if (only > 0) {
        if (only > kCriterionCount) throw InputError("criterion out of range");
        show(run_criterion(only, options));
    } else {
        run_acceptance(options, show);
    }
    Json rows = Json::array();
    bool all = true;
    for (const auto& r : results) {
        rows.push_back(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"budget", r.budget}});
        all = all && r.passed;
    }
    RunConfig recorded = config;
    recorded.seed = options.seed;
    emit(recorded, Json{{"criteria", rows}, {"all_passed", all}});
    return all ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kkmforge: exact checks for KKM-type covering theorems and their convex corollaries"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig config;
    std::optional<std::uint64_t> seed;
    app.add_option("--seed", seed, "Random seed (default 1; acceptance has its own default)");
    app.add_option("--resolution", config.resolution, "Subdivision parameter / sample count");
    app.add_option("--probes", config.probes, "Random probe families per factor")->check(CLI::NonNegativeNumber);
    app.add_option("--epsilon", config.epsilon, "Tolerance for float renders")->check(CLI::PositiveNumber);
    app.add_option("--out", config.out, "Write the JSON report here (atomically) instead of stdout");
    app.add_option("--verify", config.verify, "Re-validate the certificates in a stored report");

    std::string path;
    std::optional<int> degree;
    auto* cohomology = app.add_subcommand("cohomology", "Mod-2 Betti numbers and cocycle representatives");
    cohomology->add_option("complex", path, "Complex JSON {\"facets\": [...]}")->required();
    cohomology->add_option("--degree", degree, "Single degree");

    std::vector<int> dims, exponents;
    auto* euler = app.add_subcommand("euler", "Powers of Hopf classes on products of projective spaces");
    euler->add_option("--n", dims, "Projective dimensions, one per factor")->required();
    euler->add_option("--exponents,--exponent", exponents, "Exponent per factor (default 1)");

    std::string kind;
    int d = 1, n = 1, r = 0, rp = 0, class_count = 2;
    std::vector<std::string> params;
    auto* check = app.add_subcommand("check", "Check a cover: kkm, lebesgue, skkm or cupvanish");
    check->add_option("kind", kind)->required()->check(CLI::IsMember({"kkm", "lebesgue", "skkm", "cupvanish"}));
    check->add_option("input", path, "Cover JSON (cupvanish: complex, sets and classes)");
    check->add_option("--d", d, "Probe codimension d");
    check->add_option("--n", n, "Multiplicity bound n");
    check->add_option("--r", r, "Extra vertices r (skkm)");
    check->add_option("--params", params, "Per-factor d:n (lebesgue)");
    check->add_option("--rp", rp, "cupvanish: random cover of RP^k instead of an input file");
    check->add_option("--classes", class_count, "cupvanish with --rp: number of Hopf factors");

    auto* convex = app.add_subcommand("convex", "Convex corollaries: centerpoint, helly, barany, tverberg, gentverberg");
    convex->add_option("kind", kind)->required()->check(
        CLI::IsMember({"centerpoint", "helly", "barany", "tverberg", "gentverberg"}));
    convex->add_option("input", path, "Instance JSON")->required();

    std::string csv;
    auto* demo = app.add_subcommand("section-demo", "Glued sections over the two-arc cover of RP^1");
    demo->add_option("--csv", csv, "Also write per-sample values as CSV");

    std::string what;
    std::vector<std::size_t> sizes{3};
    int max_mult = 2;
    auto* generate = app.add_subcommand("generate", "Write sample inputs: band or stars covers, rp complexes");
    generate->add_option("what", what)->required()->check(CLI::IsMember({"band", "stars", "rp"}));
    generate->add_option("--sizes", sizes, "Simplex sizes #V_l of the grid base");
    generate->add_option("--max-mult", max_mult, "Multiplicity bound for band covers");
    generate->add_option("--dim", n, "Dimension for rp");

    std::string rp2;
    int only = 0;
    auto* acceptance = app.add_subcommand("acceptance", "Run the acceptance suite and print a pass/fail table");
    acceptance->add_option("--rp2", rp2, "Substitute complex for RP^2 in the cohomology criterion");
    acceptance->add_option("--criterion", only, "Run a single criterion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }
    if (seed) config.seed = *seed;

    try {
        if (*cohomology) return cmd_cohomology(config, path, degree);
        if (*euler) return cmd_euler(config, dims, exponents);
        if (*check) return cmd_check(config, kind, path, d, n, r, params, rp, class_count);
        if (*convex) return cmd_convex(config, kind, path);
        if (*demo) return cmd_section_demo(config, csv);
        if (*generate) return cmd_generate(config, what, sizes, n, max_mult);
        if (*acceptance) return cmd_acceptance(config, seed, rp2, only);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
