#include "kkmforge/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "kkmforge/convex.hpp"
#include "kkmforge/covers.hpp"
#include "kkmforge/line_bundle.hpp"
#include "kkmforge/lp.hpp"
#include "kkmforge/oracle.hpp"
#include "kkmforge/pl_sections.hpp"
#include "kkmforge/report.hpp"

namespace kkmforge {

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::uint64_t derive(std::uint64_t seed, std::uint64_t criterion, std::uint64_t run) {
    std::seed_seq seq{seed, criterion, run};
    std::uint32_t parts[2];
    seq.generate(parts, parts + 2);
    return (static_cast<std::uint64_t>(parts[0]) << 32) | parts[1];
}

std::vector<RationalVector> random_points(std::mt19937_64& rng, std::size_t count, std::size_t dim, int range) {
    std::uniform_int_distribution<int> coord(-range, range);
    std::vector<RationalVector> out(count);
    for (auto& p : out) {
        for (std::size_t i = 0; i < dim; ++i) p.push_back(make_rational(coord(rng)));
    }
    return out;
}

Outcome projective_cohomology(const AcceptanceOptions& options) {
    std::ostringstream detail;
    for (int n = 1; n <= 3; ++n) {
        const auto rp = projective_space(n);
        const SimplicialComplex& k = (n == 2 && options.rp2_override) ? *options.rp2_override : *rp.complex;
        const auto dense = oracle::betti_numbers(k);
        detail << "RP^" << n << " betti";
        for (int d = 0; d <= n; ++d) {
            const int b = d <= k.dimension() ? cohomology_basis(k, d).betti : 0;
            detail << ' ' << b;
            if (b != 1) return fail(detail.str() + ": expected 1 in degree " + std::to_string(d));
            if (static_cast<std::size_t>(d) >= dense.size() || dense[static_cast<std::size_t>(d)] != b) {
                return fail(detail.str() + ": dense rank oracle disagrees");
            }
        }
        detail << "; ";
    }
    return {true, detail.str()};
}

Outcome euler_powers(const AcceptanceOptions&) {
    std::ostringstream detail;
    for (int n = 1; n <= 3; ++n) {
        const auto rp = projective_space(n);
        const auto h = hopf_cocycle(rp.complex, rp.cover);
        for (int k = 1; k <= n + 1; ++k) {
            const auto e = euler_class_product({{h, k}});
            if (e.nonzero != (k <= n)) {
                return fail("e(H)^" + std::to_string(k) + " on RP^" + std::to_string(n) + " has the wrong vanishing");
            }
        }
        detail << "RP^" << n << ": e^1..e^" << n << " nonzero, e^" << n + 1 << " = 0; ";
    }
    const auto rp1 = projective_space(1);
    const auto prod = product_complex(*rp1.complex, *rp1.complex);
    const auto torus = std::make_shared<const SimplicialComplex>(prod.complex);
    const auto h = hopf_cocycle(rp1.complex, rp1.cover);
    const auto h1 = pullback_bundle(h, torus, prod.to_left);
    const auto h2 = pullback_bundle(h, torus, prod.to_right);
    const auto e = euler_class_product({{h1, 1}, {h2, 1}});
    if (!e.nonzero) return fail(detail.str() + "e(H1)e(H2) vanishes on RP^1 x RP^1");
    if (!is_cycle(*torus, e.certificate.cycle_witness)) return fail("product witness is not a cycle");
    detail << "RP^1 x RP^1: e(H1)e(H2) nonzero";
    return {true, detail.str()};
}

Outcome cup_contrapositive(const AcceptanceOptions& options) {
    const auto rp = projective_space(2);
    const SimplicialComplex& k = *rp.complex;
    const Gf2Cochain e = hopf_cocycle(rp.complex, rp.cover).edge_signs();
    for (std::uint64_t run = 0; run < 50; ++run) {
        const std::uint64_t seed = derive(options.seed, 3, run);
        const auto sets = random_subcomplex_cover(k, 2, seed);
        const auto report = cup_vanishing_check(k, sets, {e, e});
        if (!report.hypothesis.holds) return fail("cover " + std::to_string(run) + " exceeds multiplicity 2");
        if (report.outcome != CupVanishingReport::Outcome::NonzeroRestriction) {
            return fail("cover " + std::to_string(run) + ": no part with a nonzero restriction");
        }
        const auto why = verify_cupvanish_report(k, sets, {e, e}, to_json(k, report));
        if (!why.empty()) return fail("cover " + std::to_string(run) + ": " + why);
    }
    return {true, "50/50 covers of RP^2 have a part where e restricts nonzero (cycle certificates re-verified)"};
}

Outcome gluing_demo(const AcceptanceOptions&) {
    const auto demo = rp1_two_arc_demo(10000);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu samples, min max_k |s_k| = %.6f, U_J disjoint: %s", demo.samples.size(),
                  demo.min_max_norm, demo.disjointness_holds ? "yes" : "no");
    const bool ok = demo.samples.size() == 10000 && demo.min_max_norm > 1e-9 && demo.disjointness_holds;
    return {ok, buf};
}

Outcome kkm_lebesgue(const AcceptanceOptions& options) {
    std::size_t probes_checked = 0;
    for (std::uint64_t run = 0; run < 25; ++run) {
        const std::uint64_t seed = derive(options.seed, 5, run);
        const GridCover cover = random_band_cover(GridBase({3}, 6), 2, seed);
        const auto probes = default_probes(3, 1, 100, seed);
        const auto report = kkm_check(cover, 1, 2, probes);
        if (report.verdict != Verdict::Witness) return fail("simplex cover " + std::to_string(run) + ": no witness");
        const auto why = verify_check_report(cover, to_json(report));
        if (!why.empty()) return fail("simplex cover " + std::to_string(run) + ": " + why);
        probes_checked += probes.size();
    }
    for (std::uint64_t run = 0; run < 25; ++run) {
        const std::uint64_t seed = derive(options.seed, 50, run);
        const GridCover cover = random_band_cover(GridBase({2, 2}, 6), 2, seed);
        const std::vector<std::vector<DisjointFamily>> probes{default_probes(2, 1, 100, seed),
                                                              default_probes(2, 1, 100, seed + 1)};
        const auto report = lebesgue_check(cover, {{1, 1}, {1, 1}}, probes);
        if (report.verdict != Verdict::Witness) return fail("square cover " + std::to_string(run) + ": no witness");
        const auto why = verify_check_report(cover, to_json(report));
        if (!why.empty()) return fail("square cover " + std::to_string(run) + ": " + why);
        probes_checked += probes[0].size() + probes[1].size();
    }
    const GridCover stars = vertex_star_cover(GridBase({3}, 6));
    const auto control = kkm_check(stars, 1, 2, default_probes(3, 1, 100, options.seed));
    if (control.verdict == Verdict::Witness) return fail("vertex-star control produced a witness");
    if (control.hypothesis.multiplicity != 3) return fail("vertex-star control should have multiplicity 3");
    return {true, "25 + 25 covers witnessed with verified LP certificates (" + std::to_string(probes_checked) +
                      " probe families); vertex-star control: no witness, multiplicity 3"};
}

Outcome centerpoints(const AcceptanceOptions& options) {
    int worst = 100;
    for (std::uint64_t run = 0; run < 20; ++run) {
        std::mt19937_64 rng(derive(options.seed, 6, run));
        const auto config = random_points(rng, 12, 2, 20);
        const auto c = centerpoint(config);
        const int depth = oracle::depth_low_dimension(c.point, config);
        worst = std::min(worst, depth);
        if (depth < 4) return fail("config " + std::to_string(run) + ": oracle depth " + std::to_string(depth));
    }
    return {true, "20 configs of 12 points, minimum oracle depth " + std::to_string(worst) + " >= 4"};
}

bool classical_parts_meet(const std::vector<RationalVector>& points, const TverbergWitness& w) {
    const RationalVector c(w.common.begin(), w.common.end() - 1);
    for (const auto& part : w.parts) {
        std::vector<RationalVector> hull;
        for (std::size_t l : part) hull.push_back(points[l]);
        if (!oracle::in_hull_by_simplices(c, hull)) return false;
    }
    return true;
}

Outcome tverberg(const AcceptanceOptions& options) {
    auto solved = [](const std::vector<RationalVector>& points, int r, std::string& why) {
        const auto inst = tverberg_instance(points, r);
        const auto report = generalized_tverberg(inst);
        if (report.status != TverbergReport::Status::Witness || !report.sarkaria || !report.brute_force) {
            why = "no witness";
            return false;
        }
        if (!report.paths_agree || !verify_witness(inst, *report.sarkaria) || !verify_witness(inst, *report.brute_force) ||
            !classical_parts_meet(points, *report.sarkaria) || !classical_parts_meet(points, *report.brute_force)) {
            why = "witness fails re-verification";
            return false;
        }
        return true;
    };
    std::string why;
    for (std::uint64_t run = 0; run < 20; ++run) {
        std::mt19937_64 rng(derive(options.seed, 7, run));
        if (!solved(random_points(rng, 7, 2, 15), 2, why)) return fail("7 points, run " + std::to_string(run) + ": " + why);
    }
    for (std::uint64_t run = 0; run < 20; ++run) {
        std::mt19937_64 rng(derive(options.seed, 70, run));
        if (!solved(random_points(rng, 4, 2, 6), 1, why)) return fail("Radon, run " + std::to_string(run) + ": " + why);
    }
    int compared = 0, with_witness = 0;
    for (std::size_t d = 1; d <= 2; ++d) {
        for (int r = 1; r <= 2; ++r) {
            for (std::size_t m = 2; m <= 9; ++m) {
                std::mt19937_64 rng(derive(options.seed, 700 + d * 10 + static_cast<std::uint64_t>(r), m));
                const auto report = tverberg_partition(random_points(rng, m, d, 6), r);
                ++compared;
                if (report.status == TverbergReport::Status::Witness) ++with_witness;
                if (!report.paths_agree) {
                    return fail("paths disagree at m=" + std::to_string(m) + " d=" + std::to_string(d) +
                                " r=" + std::to_string(r));
                }
                const bool above = m > static_cast<std::size_t>(r) * (d + 1);
                if (above && report.status != TverbergReport::Status::Witness) {
                    return fail("no witness above the threshold at m=" + std::to_string(m));
                }
            }
        }
    }
    return {true, "20/20 seven-point r=2 witnesses, 20/20 Radon; paths agree on " + std::to_string(compared) +
                      " instances (" + std::to_string(with_witness) + " solvable)"};
}

ConvexSet random_interval(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> center(-3, 3), reach(1, 10);
    const int c = center(rng);
    return ConvexSet::hull({{make_rational(c - reach(rng))}, {make_rational(c + reach(rng))}});
}

ConvexSet random_triangle(std::mt19937_64& rng) {
    const auto center = random_points(rng, 1, 2, 3).front();
    auto corners = random_points(rng, 3, 2, 3);
    const std::vector<RationalVector> offsets{{make_rational(10), make_rational(0)},
                                              {make_rational(-6), make_rational(9)},
                                              {make_rational(-6), make_rational(-9)}};
    for (std::size_t i = 0; i < 3; ++i) corners[i] = corners[i] + offsets[i] + center;
    return ConvexSet::hull(std::move(corners));
}

std::vector<std::vector<ConvexSet>> random_helly(std::mt19937_64& rng, std::size_t dim) {
    std::vector<std::vector<ConvexSet>> classes(dim + 1);
    for (auto& cls : classes) {
        const std::size_t count = 2 + rng() % 2;
        for (std::size_t i = 0; i < count; ++i) cls.push_back(dim == 1 ? random_interval(rng) : random_triangle(rng));
    }
    return classes;
}

struct BaranyInstance {
    std::vector<RationalVector> k;
    std::vector<std::vector<RationalVector>> classes;
};

BaranyInstance random_barany(std::mt19937_64& rng, std::size_t dim) {
    BaranyInstance out;
    out.k = random_points(rng, dim + 1, dim, 1);
    for (std::size_t l = 0; l <= dim; ++l) out.classes.push_back(random_points(rng, 2 + rng() % 2, dim, 10));
    return out;
}

Outcome helly_barany(const AcceptanceOptions& options) {
    int attempts = 0, rejected = 0;
    for (std::uint64_t run = 0; run < 50; ++run) {
        std::mt19937_64 rng(derive(options.seed, 8, run));
        const std::size_t dim = 1 + run % 2;
        const bool helly = run < 25;
        // Rejection sampling on the LP-verified hypothesis.
        for (int tries = 0;; ++tries) {
            if (tries == 10000) return fail("instance " + std::to_string(run) + ": no admissible sample");
            ++attempts;
            if (helly) {
                const auto classes = random_helly(rng, dim);
                const auto result = colorful_helly(classes, dim);
                if (result.status == TheoremStatus::HypothesisViolated) continue;
                if (result.status != TheoremStatus::Conclusion) return fail("Helly instance without conclusion");
                const auto why = verify_helly_report(classes, dim, to_json(result));
                if (!why.empty()) return fail("Helly instance " + std::to_string(run) + ": " + why);
            } else {
                const auto inst = random_barany(rng, dim);
                const auto result = barany_dual(inst.k, inst.classes, dim);
                if (result.status == TheoremStatus::HypothesisViolated) continue;
                if (result.status != TheoremStatus::Conclusion) return fail("Barany instance without conclusion");
                const auto why = verify_barany_report(inst.k, inst.classes, dim, to_json(result));
                if (!why.empty()) return fail("Barany instance " + std::to_string(run) + ": " + why);
            }
            break;
        }
    }
    // Violating instances must come back with re-verifiable counterexample tuples.
    for (std::uint64_t run = 0; run < 20; ++run) {
        std::mt19937_64 rng(derive(options.seed, 80, run));
        const std::size_t dim = 1 + run % 2;
        for (int tries = 0;; ++tries) {
            if (tries == 10000) return fail("no violating sample found");
            if (run < 10) {
                auto classes = random_helly(rng, dim);
                classes[0].push_back(ConvexSet::hull(random_points(rng, 1, dim, 40)));
                const auto result = colorful_helly(classes, dim);
                if (result.status != TheoremStatus::HypothesisViolated) continue;
                const auto why = verify_helly_report(classes, dim, to_json(result));
                if (!why.empty()) return fail("violating Helly instance: " + why);
            } else {
                const auto inst = random_barany(rng, dim);
                const auto result = barany_dual(inst.k, inst.classes, dim);
                if (result.status != TheoremStatus::HypothesisViolated) continue;
                const auto why = verify_barany_report(inst.k, inst.classes, dim, to_json(result));
                if (!why.empty()) return fail("violating Barany instance: " + why);
            }
            ++rejected;
            break;
        }
    }
    return {true, "50/50 admissible instances certified (" + std::to_string(attempts) + " samples drawn); " +
                      std::to_string(rejected) + "/20 violating instances rejected with verified tuples"};
}

Outcome lp_engine(const AcceptanceOptions& options) {
    int feasible = 0;
    for (std::uint64_t run = 0; run < 200; ++run) {
        std::mt19937_64 rng(derive(options.seed, 9, run));
        std::uniform_int_distribution<int> vars(1, 6), rows(1, 12), coeff(-5, 5), rhs(-10, 10), rel(0, 5);
        LinearSystem sys(static_cast<std::size_t>(vars(rng)));
        const int count = rows(rng);
        for (int i = 0; i < count; ++i) {
            RationalVector c;
            for (std::size_t j = 0; j < sys.variable_count(); ++j) c.push_back(make_rational(coeff(rng)));
            const int r = rel(rng);
            const Relation relation = r < 3 ? Relation::LessEqual : (r < 5 ? Relation::GreaterEqual : Relation::Equal);
            sys.add_row(std::move(c), relation, make_rational(rhs(rng)));
        }
        const auto cert = lp_feasible(sys);
        if (cert.is_feasible() != oracle::feasible_by_enumeration(sys)) {
            return fail("system " + std::to_string(run) + ": verdict differs from the enumeration oracle");
        }
        if (!verify_certificate(sys, cert)) return fail("system " + std::to_string(run) + ": certificate fails");
        feasible += cert.is_feasible() ? 1 : 0;
    }
    return {true, "200/200 verdicts match the oracle (" + std::to_string(feasible) +
                      " feasible); every certificate re-verified"};
}

struct Criterion {
    const char* name;
    double budget;
    Outcome (*run)(const AcceptanceOptions&);
};

const Criterion kCriteria[kCriterionCount] = {
    {"cohomology of RP^1..RP^3", 60, projective_cohomology},
    {"Euler-class powers", 60, euler_powers},
    {"cup-product vanishing contrapositive on RP^2", 120, cup_contrapositive},
    {"RP^1 two-arc gluing", 60, gluing_demo},
    {"KKM and Lebesgue covers", 600, kkm_lebesgue},
    {"planar centerpoints", 60, centerpoints},
    {"Tverberg and Radon partitions", 600, tverberg},
    {"colorful Helly and Barany dual", 300, helly_barany},
    {"exact LP engine", 60, lp_engine},
};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
    if (id < 1 || id > kCriterionCount) throw std::invalid_argument("criterion id out of range");
    const Criterion& c = kCriteria[id - 1];
    CriterionResult out;
    out.id = id;
    out.name = c.name;
    out.budget = c.budget;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = c.run(options);
    } catch (const std::exception& e) {
        outcome = fail(std::string("exception: ") + e.what());
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.passed = outcome.ok && out.seconds <= out.budget;
    out.detail = outcome.detail;
    if (outcome.ok && !out.passed) out.detail += " (over budget)";
    return out;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& progress) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        out.push_back(run_criterion(id, options));
        if (progress) progress(out.back());
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", r.seconds, r.budget);
    return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + " (" + timing +
           "): " + r.detail;
}

}  // namespace kkmforge
