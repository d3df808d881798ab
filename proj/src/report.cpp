#include "kkmforge/report.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace kkmforge {

namespace {

Json functional_to_json(const AffineFunctional& f) {
    return Json{{"linear", to_json(f.linear)}, {"constant", to_json(f.constant)}};
}

AffineFunctional functional_from_json(const Json& value) {
    return AffineFunctional{vector_from_json(value.at("linear")), rational_from_json(value.at("constant"))};
}

Json hypothesis_to_json(const HypothesisCheck& h) {
    return Json{{"multiplicity", h.multiplicity}, {"bound", h.bound}, {"holds", h.holds}};
}

std::string outcome_name(CupVanishingReport::Outcome outcome) {
    switch (outcome) {
    case CupVanishingReport::Outcome::ProductVanishes:
        return "product-vanishes";
    case CupVanishingReport::Outcome::NonzeroRestriction:
        return "nonzero-restriction";
    case CupVanishingReport::Outcome::ProductNonzero:
        return "product-nonzero";
    }
    return "unknown";
}

bool is_distribution(const RationalVector& w) {
    Rational sum = 0;
    for (const auto& x : w) {
        if (x < 0) return false;
        sum += x;
    }
    return sum == 1;
}

RationalVector combine(const RationalVector& weights, const std::vector<RationalVector>& points) {
    RationalVector out(points.front().size(), Rational(0));
    for (std::size_t i = 0; i < points.size(); ++i) out = out + weights[i] * points[i];
    return out;
}

std::vector<Simplex> simplex_list(const Json& value) {
    std::vector<Simplex> out;
    for (const auto& s : value) {
        Simplex simplex = s.get<Simplex>();
        std::sort(simplex.begin(), simplex.end());
        out.push_back(std::move(simplex));
    }
    return out;
}


std::vector<std::vector<DisjointFamily>> probe_lists(const Json& report) {
    std::vector<std::vector<DisjointFamily>> probes;
    for (const auto& list : report.at("probes")) {
        std::vector<DisjointFamily> families;
        for (const auto& f : list) families.push_back(family_from_json(f));
        probes.push_back(std::move(families));
    }
    return probes;
}

std::vector<RationalVector> corners_of(const SimplexGrid& grid, const std::vector<std::size_t>& pts) {
    std::vector<RationalVector> out;
    for (std::size_t q : pts) out.push_back(grid.coordinates(q));
    return out;
}

// A counterexample names, for every set (every set and factor for the product
// check, every complement component for the strengthened check), a probe
// missing it. Each miss is re-checked exactly.
std::string verify_counterexample(const GridCover& cover, const Json& report) {
    const auto& base = cover.base();
    const std::string check = report.at("check");
    const auto probes = probe_lists(report);
    std::map<std::pair<std::string, int>, std::size_t> failures;
    for (const auto& f : report.at("failures")) {
        failures[{f.at("label").get<std::string>(), f.at("factor").get<int>()}] = f.at("probe").get<std::size_t>();
    }
    auto probe_for = [&](const std::string& label, int factor, std::size_t list) -> const DisjointFamily& {
        const auto it = failures.find({label, factor});
        if (it == failures.end()) throw std::invalid_argument("no failing probe recorded for " + label);
        return probes.at(list).at(it->second);
    };
    auto members = [](const DisjointFamily& family) {
        std::vector<RationalVector> out;
        for (const auto& m : family.members()) out.push_back(m.weights());
        return out;
    };
    auto misses = [&](const SimplexGrid& grid, const std::set<std::size_t>& cells, const DisjointFamily& probe) {
        const auto hull = members(probe);
        return std::none_of(cells.begin(), cells.end(),
                            [&](std::size_t c) { return hulls_meet(corners_of(grid, grid.cell(c)), hull).has_value(); });
    };

    for (const auto& [label, cells] : cover.sets()) {
        if (check == "lebesgue") {
            for (std::size_t l = 0; l < base.factor_count(); ++l) {
                std::set<std::size_t> projected;
                for (std::size_t c : cells) projected.insert(base.split_cell(c)[l]);
                if (!misses(base.factor(l), projected, probe_for(label, static_cast<int>(l), l))) {
                    return "recorded probe meets set " + label;
                }
            }
        } else {
            const int factor = check == "kkm" ? -1 : 0;
            const std::set<std::size_t> own(cells.begin(), cells.end());
            if (!misses(base.factor(0), own, probe_for(label, factor, 0))) return "recorded probe meets set " + label;
        }
    }
    if (check != "skkm") return {};

    const auto& grid = base.factor(0);
    std::set<std::vector<std::size_t>> in_y;
    auto faces_of = [&](std::size_t cell) {
        const auto& pts = grid.cell(cell);
        std::vector<std::vector<std::size_t>> out;
        for (unsigned mask = 1; mask < (1u << pts.size()); ++mask) {
            std::vector<std::size_t> f;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (mask >> i & 1u) f.push_back(pts[i]);
            }
            out.push_back(std::move(f));
        }
        return out;
    };
    for (const auto& [label, cells] : cover.sets()) {
        for (std::size_t c : cells) {
            for (auto& f : faces_of(c)) in_y.insert(std::move(f));
        }
    }
    const auto components = complement_components(cover);
    for (std::size_t k = 0; k < components.size(); ++k) {
        const auto hull = members(probe_for("component " + std::to_string(k), 0, 1));
        for (std::size_t c : components[k]) {
            for (const auto& face : faces_of(c)) {
                if (in_y.count(face)) continue;
                if (hulls_meet(corners_of(grid, face), hull, true)) {
                    return "recorded probe meets component " + std::to_string(k);
                }
            }
        }
    }
    return {};
}

}  // namespace

Json to_json(const CheckReport& report) {
    Json certificates = Json::array();
    for (const auto& c : report.certificates) {
        certificates.push_back(Json{{"probe", c.probe},
                                    {"cell", c.cell},
                                    {"point", to_json(c.point)},
                                    {"cell_weights", to_json(c.cell_weights)},
                                    {"hull_weights", to_json(c.hull_weights)}});
    }
    Json failures = Json::array();
    for (const auto& f : report.failures) failures.push_back(Json{{"label", f.label}, {"factor", f.factor}, {"probe", f.probe}});
    Json probes = Json::array();
    for (const auto& list : report.probes) {
        Json families = Json::array();
        for (const auto& f : list) families.push_back(to_json(f));
        probes.push_back(families);
    }
    Json out{{"check", report.check},
             {"verdict", to_string(report.verdict)},
             {"hypothesis", hypothesis_to_json(report.hypothesis)},
             {"certificates", certificates},
             {"failures", failures},
             {"probes", probes},
             {"sampling",
              {{"resolution", report.sampling.resolution},
               {"vertex_probes", report.sampling.vertex_probes},
               {"random_probes", report.sampling.random_probes},
               {"seed", report.sampling.seed}}}};
    if (!report.label.empty()) out["label"] = report.label;
    if (report.factor >= 0) out["factor"] = report.factor;
    if (!report.branch.empty()) out["branch"] = report.branch;
    if (!report.component_cells.empty()) out["component_cells"] = report.component_cells;
    if (!report.note.empty()) out["note"] = report.note;
    return out;
}

Json to_json(const SimplicialComplex& complex, const CupVanishingReport& report) {
    Json out{{"outcome", outcome_name(report.outcome)}, {"hypothesis", hypothesis_to_json(report.hypothesis)}};
    switch (report.outcome) {
    case CupVanishingReport::Outcome::NonzeroRestriction:
        out["label"] = report.label;
        out["class_index"] = report.class_index;
        out["restriction_cycle"] = simplices_to_json(report.restriction_cycle);
        break;
    case CupVanishingReport::Outcome::ProductVanishes:
        out["product"] = cochain_to_json(complex, report.product);
        if (report.primitive) out["primitive"] = cochain_to_json(complex, *report.primitive);
        break;
    case CupVanishingReport::Outcome::ProductNonzero:
        out["product"] = cochain_to_json(complex, report.product);
        out["product_cycle"] = simplices_to_json(report.product_cycle);
        break;
    }
    return out;
}

Json to_json(const SimplicialComplex& complex, const EulerClassReport& report) {
    Json factors = Json::array();
    for (const auto& [w, exponent] : report.factorization) {
        factors.push_back(Json{{"w1", cochain_to_json(complex, w)}, {"exponent", exponent}});
    }
    Json out{{"degree", report.degree},
             {"nonzero", report.nonzero},
             {"beyond_dimension", report.beyond_dimension},
             {"factors", factors}};
    if (!report.beyond_dimension) out["euler_class"] = cochain_to_json(complex, report.euler_class);
    if (report.nonzero) {
        out["cycle_witness"] = simplices_to_json(report.certificate.cycle_witness);
    } else if (report.certificate.primitive) {
        out["primitive"] = cochain_to_json(complex, *report.certificate.primitive);
    }
    return out;
}

Json to_json(const Centerpoint& result) {
    return Json{{"point", to_json(result.point)},
                {"required_depth", result.required_depth},
                {"depth", result.depth.depth},
                {"direction", to_json(result.depth.direction)},
                {"method", result.method}};
}

Json to_json(const CentralPointReport& report) {
    Json out{{"found", report.found}, {"exact", report.exact}, {"resolution", report.resolution},
             {"probe_count", report.probe_count}};
    if (report.found) {
        out["factor"] = report.factor;
        out["point"] = to_json(report.point);
        out["tolerance"] = report.tolerance;
        out["squared_gaps"] = to_json(report.squared_gaps);
    }
    return out;
}

Json to_json(const HellyResult& result) {
    Json out{{"status", to_string(result.status)}, {"tuples_checked", result.tuples_checked}};
    if (result.status == TheoremStatus::Conclusion) {
        out["color"] = result.color;
        out["point"] = to_json(result.point);
    } else if (result.status == TheoremStatus::HypothesisViolated) {
        out["violating_tuple"] = result.violating_tuple;
        out["certificate"] = to_json(result.infeasibility);
    } else if (result.status == TheoremStatus::DimensionRefused) {
        out["explanation"] = "dim E must be smaller than the number of colors";
    }
    return out;
}

Json to_json(const BaranyResult& result) {
    Json out{{"status", to_string(result.status)}, {"tuples_checked", result.tuples_checked}};
    if (result.status == TheoremStatus::Conclusion) {
        out["color"] = result.color;
        out["functional"] = functional_to_json(result.functional);
    } else if (result.status == TheoremStatus::HypothesisViolated) {
        out["violating_tuple"] = result.violating_tuple;
        out["common_point"] = to_json(result.common_point);
        out["tuple_weights"] = to_json(result.tuple_weights);
    } else if (result.status == TheoremStatus::DimensionRefused) {
        out["explanation"] = "dim E must be smaller than the number of colors";
    }
    return out;
}

Json to_json(const TverbergWitness& w) {
    return Json{{"parts", w.parts},
                {"part_of", w.part_of},
                {"chosen", w.chosen},
                {"lambda", to_json(w.lambda)},
                {"common", to_json(w.common)}};
}

TverbergWitness witness_from_json(const Json& value) {
    TverbergWitness w;
    w.parts = value.at("parts").get<std::vector<std::vector<std::size_t>>>();
    w.part_of = value.at("part_of").get<std::vector<std::size_t>>();
    w.chosen = value.at("chosen").get<std::vector<std::size_t>>();
    w.lambda = vector_from_json(value.at("lambda"));
    w.common = vector_from_json(value.at("common"));
    return w;
}

Json to_json(const TverbergReport& report) {
    Json out{{"status", to_string(report.status)},
             {"below_threshold", report.below_threshold},
             {"paths_agree", report.paths_agree},
             {"tuples_checked", report.tuples_checked},
             {"partitions_checked", report.partitions_checked}};
    if (!report.violation.empty()) out["violation"] = report.violation;
    if (report.sarkaria) out["sarkaria"] = to_json(*report.sarkaria);
    if (report.brute_force) out["brute_force"] = to_json(*report.brute_force);
    return out;
}

Json to_json(const TwoArcDemo& demo) {
    return Json{{"resolution", demo.resolution},
                {"samples", demo.samples.size()},
                {"min_max_norm", demo.min_max_norm},
                {"disjointness_holds", demo.disjointness_holds}};
}

std::string verify_check_report(const GridCover& cover, const Json& report) {
    try {
        const auto& base = cover.base();
        const std::string check = report.at("check");
        const auto& hyp = report.at("hypothesis");
        const int mult = multiplicity(cover);
        if (hyp.at("multiplicity").get<int>() != mult) return "recorded multiplicity differs from the cover";
        if (hyp.at("holds").get<bool>() != (mult <= hyp.at("bound").get<int>())) return "hypothesis flag inconsistent";
        const std::string verdict = report.at("verdict");
        if (verdict == "counterexample") return verify_counterexample(cover, report);
        if (verdict != "witness") return "unexpected verdict " + verdict;

        const auto probes = probe_lists(report);
        const std::string branch = report.value("branch", "");
        std::size_t factor = 0;
        if (check == "lebesgue") factor = report.at("factor").get<std::size_t>();
        const std::size_t probe_list = (check == "skkm" && branch == "b") ? 1 : factor;
        if (factor >= base.factor_count() || probe_list >= probes.size()) return "factor out of range";
        const auto& families = probes[probe_list];
        const auto& certs = report.at("certificates");
        if (certs.size() != families.size()) return "expected one certificate per probe";

        const SimplexGrid& grid = base.factor(factor);
        std::set<std::size_t> allowed;
        std::set<std::size_t> covered;
        for (const auto& [label, cells] : cover.sets()) covered.insert(cells.begin(), cells.end());
        if (check == "skkm" && branch == "b") {
            const auto comp = report.at("component_cells").get<std::vector<std::size_t>>();
            allowed.insert(comp.begin(), comp.end());
            for (std::size_t c : comp) {
                if (c >= base.cell_count() || covered.count(c)) return "component cell lies in a set";
            }
            // Facet-connected.
            std::set<std::size_t> seen{comp.front()};
            std::queue<std::size_t> queue;
            queue.push(comp.front());
            while (!queue.empty()) {
                const std::size_t c = queue.front();
                queue.pop();
                for (std::size_t nb : base.neighbours(c)) {
                    if (allowed.count(nb) && seen.insert(nb).second) queue.push(nb);
                }
            }
            if (seen.size() != allowed.size()) return "component is not connected";
        } else {
            const auto& set = cover.sets().at(report.at("label").get<std::string>());
            for (std::size_t c : set) allowed.insert(check == "lebesgue" ? base.split_cell(c)[factor] : c);
        }

        for (std::size_t p = 0; p < certs.size(); ++p) {
            const auto& cert = certs[p];
            if (cert.at("probe").get<std::size_t>() != p) return "certificates out of order";
            const std::size_t cell = cert.at("cell");
            if (!allowed.count(cell)) return "certificate cell not in the witnessing set";
            const RationalVector point = vector_from_json(cert.at("point"));
            const RationalVector hull_weights = vector_from_json(cert.at("hull_weights"));
            std::vector<RationalVector> members;
            for (const auto& m : families[p].members()) members.push_back(m.weights());
            if (hull_weights.size() != members.size() || !is_distribution(hull_weights) ||
                combine(hull_weights, members) != point) {
                return "probe " + std::to_string(p) + ": point not in the probe hull";
            }
            std::vector<RationalVector> corners;
            for (std::size_t q : grid.cell(cell)) corners.push_back(grid.coordinates(q));
            if (check == "skkm" && branch == "b") {
                // The carrier face of the point must avoid every covered cell.
                const auto inside = in_hull(point, corners);
                if (!inside.inside) return "probe " + std::to_string(p) + ": point outside its cell";
                std::vector<std::size_t> carrier;
                for (std::size_t i = 0; i < corners.size(); ++i) {
                    if (inside.weights[i] > 0) carrier.push_back(grid.cell(cell)[i]);
                }
                for (std::size_t c : covered) {
                    const auto& pts = grid.cell(c);
                    if (std::includes(pts.begin(), pts.end(), carrier.begin(), carrier.end())) {
                        return "probe " + std::to_string(p) + ": point lies in a covered cell";
                    }
                }
                continue;
            }
            const RationalVector cell_weights = vector_from_json(cert.at("cell_weights"));
            if (cell_weights.size() != corners.size() || !is_distribution(cell_weights) ||
                combine(cell_weights, corners) != point) {
                return "probe " + std::to_string(p) + ": point not in the cell";
            }
        }
        return {};
    } catch (const std::exception& e) {
        return std::string("malformed report: ") + e.what();
    }
}

std::string verify_cupvanish_report(const SimplicialComplex& complex,
                                    const std::map<std::string, SimplicialComplex>& sets,
                                    const std::vector<Gf2Cochain>& classes, const Json& report) {
    try {
        if (report.at("hypothesis").at("multiplicity").get<int>() != subcomplex_multiplicity(complex, sets)) {
            return "recorded multiplicity differs from the cover";
        }
        const std::string outcome = report.at("outcome");
        if (outcome == "nonzero-restriction") {
            const auto& sub = sets.at(report.at("label").get<std::string>());
            const auto& c = classes.at(report.at("class_index").get<std::size_t>());
            const auto cycle = simplex_list(report.at("restriction_cycle"));
            if (cycle.empty()) return "empty cycle";
            for (const auto& s : cycle) {
                if (!sub.contains(s)) return "cycle leaves the set";
            }
            if (!is_cycle(sub, cycle)) return "restriction witness is not a cycle";
            bool value = false;
            for (const auto& s : cycle) value ^= c.value(complex, s);
            return value ? std::string() : "class evaluates to 0 on the cycle";
        }
        Gf2Cochain product = classes.front();
        for (std::size_t k = 1; k < classes.size(); ++k) product = cup_product(complex, product, classes[k]);
        if (outcome == "product-nonzero") {
            const auto cycle = simplex_list(report.at("product_cycle"));
            if (cycle.empty() || !is_cycle(complex, cycle)) return "product witness is not a cycle";
            bool value = false;
            for (const auto& s : cycle) value ^= product.value(complex, s);
            return value ? std::string() : "product evaluates to 0 on the cycle";
        }
        if (outcome == "product-vanishes") {
            if (product.is_zero()) return {};
            const auto primitive = cochain_from_json(complex, report.at("primitive"));
            return coboundary(complex, primitive) == product ? std::string() : "primitive does not bound the product";
        }
        return "unknown outcome";
    } catch (const std::exception& e) {
        return std::string("malformed report: ") + e.what();
    }
}

std::string verify_centerpoint_report(const std::vector<RationalVector>& points, const Json& report) {
    try {
        const RationalVector q = vector_from_json(report.at("point"));
        const int need = report.at("required_depth");
        const std::size_t d = points.front().size();
        if (need != static_cast<int>((points.size() + d) / (d + 1))) return "wrong required depth";
        if (halfspace_depth(q, points).depth < need) return "point is too shallow";
        return {};
    } catch (const std::exception& e) {
        return std::string("malformed report: ") + e.what();
    }
}

std::string verify_helly_report(const std::vector<std::vector<ConvexSet>>& classes, std::size_t dim,
                                const Json& report) {
    try {
        const std::string status = report.at("status");
        if (status == "dimension-refused") return dim >= classes.size() ? std::string() : "refusal not justified";
        if (status == "conclusion") {
            const RationalVector point = vector_from_json(report.at("point"));
            for (const auto& s : classes.at(report.at("color").get<std::size_t>())) {
                if (!s.contains(point)) return "point misses a set of the color";
            }
            return {};
        }
        if (status == "hypothesis-violated") {
            const auto tuple = report.at("violating_tuple").get<std::vector<std::size_t>>();
            if (tuple.size() != classes.size()) return "tuple of wrong length";
            std::vector<const ConvexSet*> ptrs;
            for (std::size_t l = 0; l < tuple.size(); ++l) ptrs.push_back(&classes[l].at(tuple[l]));
            RationalCertificate cert;
            cert.kind = RationalCertificate::Kind::Infeasible;
            cert.multipliers = vector_from_json(report.at("certificate").at("multipliers"));
            return verify_certificate(intersection_system(ptrs, dim), cert) ? std::string() : "Farkas certificate fails";
        }
        return "no certificate for status " + status;
    } catch (const std::exception& e) {
        return std::string("malformed report: ") + e.what();
    }
}

std::string verify_barany_report(const std::vector<RationalVector>& k_points,
                                 const std::vector<std::vector<RationalVector>>& classes, std::size_t dim,
                                 const Json& report) {
    try {
        const std::string status = report.at("status");
        if (status == "dimension-refused") return dim >= classes.size() ? std::string() : "refusal not justified";
        if (status == "conclusion") {
            const auto f = functional_from_json(report.at("functional"));
            const auto& cls = classes.at(report.at("color").get<std::size_t>());
            return verify_separation(k_points, cls, k_points.front(), f) ? std::string() : "functional does not separate";
        }
        if (status == "hypothesis-violated") {
            const auto tuple = report.at("violating_tuple").get<std::vector<std::size_t>>();
            if (tuple.size() != classes.size()) return "tuple of wrong length";
            std::vector<RationalVector> pts;
            for (std::size_t l = 0; l < tuple.size(); ++l) pts.push_back(classes[l].at(tuple[l]));
            const RationalVector common = vector_from_json(report.at("common_point"));
            if (!verify_hull_weights(common, pts, vector_from_json(report.at("tuple_weights")))) {
                return "common point not in the tuple hull";
            }
            return in_hull(common, k_points).inside ? std::string() : "common point not in K";
        }
        return "no certificate for status " + status;
    } catch (const std::exception& e) {
        return std::string("malformed report: ") + e.what();
    }
}

std::string verify_tverberg_report(const TverbergInstance& instance, const Json& report) {
    try {
        const std::string status = report.at("status");
        if (status != "witness") return {};
        bool any = false;
        for (const char* key : {"sarkaria", "brute_force"}) {
            if (!report.contains(key)) continue;
            any = true;
            if (!verify_witness(instance, witness_from_json(report.at(key)))) return std::string(key) + " witness fails";
        }
        return any ? std::string() : "witness status without a witness";
    } catch (const std::exception& e) {
        return std::string("malformed report: ") + e.what();
    }
}

std::string verify_cohomology_report(const SimplicialComplex& complex, const Json& report) {
    try {
        const auto betti = report.at("betti").get<std::vector<int>>();
        const auto& reps = report.at("representatives");
        if (reps.size() != betti.size()) return "one representative list per degree expected";
        for (std::size_t k = 0; k < betti.size(); ++k) {
            if (reps[k].size() != static_cast<std::size_t>(betti[k])) return "representative count differs from Betti number";
            for (const auto& r : reps[k]) {
                const auto c = cochain_from_json(complex, r);
                if (c.degree() != static_cast<int>(k) || !is_cocycle(complex, c)) return "representative is not a cocycle";
            }
        }
        return {};
    } catch (const std::exception& e) {
        return std::string("malformed report: ") + e.what();
    }
}

}  // namespace kkmforge
