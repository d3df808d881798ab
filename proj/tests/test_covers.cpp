#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "kkmforge/covers.hpp"
#include "kkmforge/line_bundle.hpp"
#include "kkmforge/lp.hpp"
#include "kkmforge/oracle.hpp"

using namespace kkmforge;

namespace {

Rational q(long long p, long long d = 1) { return make_rational(p, d); }

// Integer y-coordinates of a grid point (partial sums).
std::vector<long long> partial_sums(const std::vector<int>& a) {
    std::vector<long long> y;
    long long s = 0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) y.push_back(s += a[i]);
    return y;
}

long long determinant(std::vector<std::vector<long long>> m) {
    // Small integer matrices only; fraction-free elimination.
    const std::size_t n = m.size();
    long long sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

GridCover brick_tiling(int resolution, int width, int height) {
    GridBase base({2, 2}, resolution);
    std::map<std::string, std::vector<std::size_t>> sets;
    for (std::size_t c = 0; c < base.cell_count(); ++c) {
        const auto parts = base.split_cell(c);
        // Factor cell i of Delta^1 is the interval between the i-th and (i+1)-th grid points along t_0.
        const int x = static_cast<int>(parts[0]);
        const int y = static_cast<int>(parts[1]);
        const int row = y / height;
        const int shift = row % 2 ? width / 2 : 0;
        const int brick = (x + shift) / width;
        sets["r" + std::to_string(row) + "b" + std::to_string(brick)].push_back(c);
    }
    return GridCover(base, std::move(sets));
}

std::vector<RationalVector> corners(const SimplexGrid& grid, std::size_t cell) {
    std::vector<RationalVector> out;
    for (std::size_t p : grid.cell(cell)) out.push_back(grid.coordinates(p));
    return out;
}

void check_certificates(const SimplexGrid& grid, const CheckReport& report, const std::vector<DisjointFamily>& probes) {
    REQUIRE(report.certificates.size() == probes.size());
    for (const auto& cert : report.certificates) {
        std::vector<RationalVector> hull;
        for (const auto& m : probes[cert.probe].members()) hull.push_back(m.weights());
        CHECK(verify_hull_weights(cert.point, corners(grid, cert.cell), cert.cell_weights));
        CHECK(verify_hull_weights(cert.point, hull, cert.hull_weights));
    }
}

}  // namespace

TEST_CASE("edgewise subdivision has N^k unimodular cells forming a pseudomanifold") {
    for (std::size_t vertices = 2; vertices <= 4; ++vertices) {
        for (int n = 1; n <= 4; ++n) {
            const SimplexGrid grid(vertices, n);
            long long expected = 1;
            for (std::size_t i = 1; i < vertices; ++i) expected *= n;
            CHECK(static_cast<long long>(grid.cell_count()) == expected);
            std::set<std::vector<std::size_t>> distinct;
            for (std::size_t c = 0; c < grid.cell_count(); ++c) {
                const auto& cell = grid.cell(c);
                REQUIRE(cell.size() == vertices);
                distinct.insert(cell);
                const auto y0 = partial_sums(grid.point(cell[0]));
                std::vector<std::vector<long long>> m;
                for (std::size_t i = 1; i < cell.size(); ++i) {
                    auto yi = partial_sums(grid.point(cell[i]));
                    for (std::size_t j = 0; j < yi.size(); ++j) yi[j] -= y0[j];
                    m.push_back(yi);
                }
                CHECK(std::abs(determinant(m)) == 1);
            }
            CHECK(distinct.size() == grid.cell_count());
            const auto complex = grid.complex();
            CHECK(complex.euler_characteristic() == 1);
        }
    }
    const SimplexGrid tri(3, 4);
    std::size_t boundary_cells = 0;
    for (std::size_t c = 0; c < tri.cell_count(); ++c) boundary_cells += 3 - tri.neighbours(c).size();
    CHECK(boundary_cells == 12);
    CHECK(oracle::betti_numbers(tri.complex()) == std::vector<int>{1, 0, 0});
}

TEST_CASE("grid products triangulate the product of simplices") {
    const GridBase base({3, 2}, 3);
    CHECK(base.cell_count() == 27);
    CHECK(base.point_count() == 40);
    const auto tri = base.triangulation();
    CHECK(tri.euler_characteristic() == 1);
    CHECK(tri.count(3) == 27 * 3);
    CHECK(oracle::betti_numbers(tri) == std::vector<int>{1, 0, 0, 0});
    for (std::size_t c = 0; c < base.cell_count(); ++c) {
        CHECK(base.join_cell(base.split_cell(c)) == c);
        for (std::size_t nb : base.neighbours(c)) {
            const auto nbs = base.neighbours(nb);
            CHECK(std::find(nbs.begin(), nbs.end(), c) != nbs.end());
        }
    }
    CHECK_THROWS_AS(GridBase({}, 2), std::invalid_argument);
    CHECK_THROWS_AS(GridBase({3}, 0), std::invalid_argument);
}

TEST_CASE("grid cover validation") {
    const GridBase base({3}, 2);
    CHECK_THROWS_AS(GridCover(base, {{"a", {0, 1}}}), std::invalid_argument);
    CHECK_THROWS_AS(GridCover(base, {{"a", {0, 1, 2, 3, 4}}}), std::invalid_argument);
    const GridCover partial(base, {{"a", {1, 1, 0}}}, false);
    CHECK(partial.sets().at("a") == std::vector<std::size_t>{0, 1});
    CHECK_FALSE(partial.covers_base());
}

TEST_CASE("multiplicity counts sets at grid points") {
    const GridBase tri({3}, 6);
    std::vector<std::size_t> all(tri.cell_count());
    std::iota(all.begin(), all.end(), 0);
    CHECK(multiplicity(GridCover(tri, {{"all", all}})) == 1);
    CHECK(multiplicity(vertex_star_cover(tri)) == 3);
    CHECK_THROWS_AS(vertex_star_cover(GridBase({3}, 4)), std::invalid_argument);
    CHECK(multiplicity(brick_tiling(8, 4, 2)) == 3);
}

TEST_CASE("fattening two closed arcs of a circle") {
    auto circle = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_facets(
        {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {0, 7}}));
    std::map<std::string, SimplicialComplex> arcs{
        {"a", SimplicialComplex::from_facets({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}})},
        {"b", SimplicialComplex::from_facets({{4, 5}, {5, 6}, {6, 7}, {0, 7}, {0, 1}})}};
    const auto open = fatten_cover(circle, arcs, 2);
    CHECK(open.multiplicity == 2);
    for (const auto& edge : circle->simplices(1)) {
        for (int k = 0; k <= 8; ++k) {
            const RationalVector bary{q(8 - k, 8), q(k, 8)};
            const auto labels = open.labels_at(edge, bary);
            CHECK(labels.size() >= 1);
            CHECK(labels.size() <= 2);
            Simplex support;
            for (std::size_t i = 0; i < 2; ++i) {
                if (bary[i] > 0) support.push_back(edge[i]);
            }
            for (const auto& [label, sub] : arcs) {
                if (sub.contains(support)) CHECK(std::find(labels.begin(), labels.end(), label) != labels.end());
            }
        }
    }
    // The open arcs extend half an edge past the closed ones.
    CHECK(open.labels_at({5, 6}, {q(3, 5), q(2, 5)}) == std::vector<std::string>{"a", "b"});
    CHECK(open.labels_at({5, 6}, {q(2, 5), q(3, 5)}) == std::vector<std::string>{"b"});
    CHECK_THROWS_AS(fatten_cover(circle, arcs, 1), std::invalid_argument);
}

TEST_CASE("fattened grid covers keep multiplicity at most n") {
    const GridBase base({3}, 6);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto cover = random_band_cover(base, 2, seed);
        const auto open = fatten_cover(cover, 2);
        CHECK(open.multiplicity <= 2);
        std::mt19937_64 rng(seed);
        for (int trial = 0; trial < 50; ++trial) {
            const auto& simplex = open.complex->simplices(2)[rng() % open.complex->count(2)];
            RationalVector bary;
            Rational total(0);
            for (int i = 0; i < 3; ++i) {
                bary.push_back(Rational(static_cast<long long>(rng() % 4)));
                total += bary.back();
            }
            if (total.is_zero()) continue;
            for (auto& b : bary) b /= total;
            const auto labels = open.labels_at(simplex, bary);
            CHECK(labels.size() >= 1);
            CHECK(labels.size() <= 2);
        }
    }
    CHECK_THROWS_AS(fatten_cover(vertex_star_cover(GridBase({3}, 3)), 2), std::invalid_argument);
    const GridBase single({3}, 2);
    const auto whole = fatten_cover(GridCover(single, {{"x", {0, 1, 2, 3}}}), 1);
    CHECK(whole.multiplicity == 1);
}

TEST_CASE("hulls_meet distinguishes closed and relative-interior contact") {
    const std::vector<RationalVector> tri{{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}};
    const std::vector<RationalVector> touching{{q(1), q(0)}, {q(2), q(0)}};
    const std::vector<RationalVector> crossing{{q(-1), q(1, 4)}, {q(1), q(1, 4)}};
    const std::vector<RationalVector> away{{q(2), q(2)}, {q(3), q(2)}};
    CHECK(hulls_meet(tri, touching));
    CHECK_FALSE(hulls_meet(tri, touching, true));
    const auto cert = hulls_meet(tri, crossing, true);
    REQUIRE(cert);
    CHECK(std::all_of(cert->cell_weights.begin(), cert->cell_weights.end(), [](const Rational& w) { return w > 0; }));
    CHECK_FALSE(hulls_meet(tri, away));
}

TEST_CASE("kkm_check on the triangle") {
    const GridBase base({3}, 8);
    const auto probes = default_probes(3, 1, 30, 5);
    std::map<std::string, std::vector<std::size_t>> halves;
    const auto& grid = base.factor(0);
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
        int left = 0;
        for (std::size_t p : grid.cell(c)) left += grid.point(p)[0] - grid.point(p)[1];
        halves[left >= 0 ? "left" : "right"].push_back(c);
    }
    const auto report = kkm_check(GridCover(base, halves), 1, 2, probes);
    CHECK(report.hypothesis.holds);
    REQUIRE(report.verdict == Verdict::Witness);
    check_certificates(grid, report, probes);

    std::vector<std::size_t> all(grid.cell_count());
    std::iota(all.begin(), all.end(), 0);
    CHECK(kkm_check(GridCover(base, {{"all", all}}), 1, 2, probes).verdict == Verdict::Witness);

    const GridBase six({3}, 6);
    const auto stars = kkm_check(vertex_star_cover(six), 1, 2, probes);
    CHECK_FALSE(stars.hypothesis.holds);
    CHECK(stars.verdict == Verdict::Counterexample);
    REQUIRE(stars.failures.size() == 3);
    // Each star misses the opposite edge, which is a vertex family.
    for (const auto& f : stars.failures) {
        const auto& members = probes[f.probe].members();
        CHECK(members.size() == 2);
        const std::size_t star = std::stoul(f.label);
        for (const auto& m : members) CHECK(m[star] == 0);
    }
    CHECK_THROWS_AS(kkm_check(vertex_star_cover(six), 1, 1, probes), std::invalid_argument);
}

TEST_CASE("kkm_check finds witnesses on random multiplicity-2 covers") {
    const GridBase base({3}, 8);
    const auto probes = default_probes(3, 1, 20, 9);
    for (std::uint64_t seed = 100; seed < 106; ++seed) {
        const auto cover = random_band_cover(base, 2, seed);
        CHECK(multiplicity(cover) <= 2);
        const auto report = kkm_check(cover, 1, 2, probes);
        CHECK(report.verdict == Verdict::Witness);
        check_certificates(base.factor(0), report, probes);
    }
}

TEST_CASE("lebesgue_check on the square") {
    const GridBase base({2, 2}, 8);
    std::vector<std::vector<DisjointFamily>> probes{default_probes(2, 1, 10, 1), default_probes(2, 1, 10, 2)};
    const std::vector<FactorParams> params{{1, 1}, {1, 1}};
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto cover = random_band_cover(base, 2, seed);
        const auto report = lebesgue_check(cover, params, probes);
        CHECK(report.hypothesis.holds);
        REQUIRE(report.verdict == Verdict::Witness);
        check_certificates(base.factor(static_cast<std::size_t>(report.factor)), report,
                           probes[static_cast<std::size_t>(report.factor)]);
    }
    std::vector<std::size_t> all(base.cell_count());
    std::iota(all.begin(), all.end(), 0);
    CHECK(lebesgue_check(GridCover(base, {{"all", all}}), params, probes).verdict == Verdict::Witness);

    const auto bricks = lebesgue_check(brick_tiling(8, 4, 2), params, probes);
    CHECK_FALSE(bricks.hypothesis.holds);
    CHECK(bricks.hypothesis.multiplicity == 3);
    CHECK(bricks.verdict == Verdict::Counterexample);
    CHECK_THROWS_AS(lebesgue_check(GridCover(base, {{"all", all}}), {{1, 1}}, probes), std::invalid_argument);
}

TEST_CASE("strengthened KKM branches") {
    const GridBase base({3}, 8);
    const auto& grid = base.factor(0);
    const auto d_probes = default_probes(3, 1, 15, 3);
    const auto r_probes = default_probes(3, 1, 15, 4);

    // A small blob at the midpoint of the edge t_2 = 0.
    std::vector<std::size_t> blob;
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
        bool near = true;
        for (std::size_t p : grid.cell(c)) {
            const auto& a = grid.point(p);
            near = near && a[2] <= 1 && std::abs(a[0] - a[1]) <= 2;
        }
        if (near) blob.push_back(c);
    }
    REQUIRE_FALSE(blob.empty());
    const GridCover blob_cover(base, {{"blob", blob}}, false);
    const auto report = strengthened_kkm_check(blob_cover, 1, 1, 1, d_probes, r_probes);
    REQUIRE(report.verdict == Verdict::Witness);
    CHECK(report.branch == "b");
    REQUIRE(report.certificates.size() == r_probes.size());
    std::set<std::size_t> component(report.component_cells.begin(), report.component_cells.end());
    for (const auto& cert : report.certificates) {
        CHECK(component.count(cert.cell));
        CHECK(std::find(blob.begin(), blob.end(), cert.cell) == blob.end());
    }

    std::vector<std::size_t> all(grid.cell_count());
    std::iota(all.begin(), all.end(), 0);
    const auto whole = strengthened_kkm_check(GridCover(base, {{"all", all}}), 1, 1, 1, d_probes, r_probes);
    CHECK(whole.branch == "a");

    // r = 0 is plain KKM.
    const auto plain = strengthened_kkm_check(random_band_cover(base, 2, 7), 1, 2, 0, d_probes,
                                              default_probes(3, 0, 0, 0));
    CHECK(plain.branch == "a");
    CHECK_THROWS_AS(strengthened_kkm_check(blob_cover, 1, 2, 1, d_probes, r_probes), std::invalid_argument);
}

TEST_CASE("complement components partition the uncovered cells") {
    const GridBase base({3}, 6);
    const auto& grid = base.factor(0);
    // A band across the triangle splits the complement in two.
    std::vector<std::size_t> band;
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
        bool inside = true;
        for (std::size_t p : grid.cell(c)) inside = inside && grid.point(p)[0] >= 2 && grid.point(p)[0] <= 3;
        if (inside) band.push_back(c);
    }
    const GridCover sets(base, {{"band", band}}, false);
    const auto components = complement_components(sets);
    CHECK(components.size() == 2);
    std::size_t total = 0;
    for (const auto& comp : components) total += comp.size();
    CHECK(total + band.size() == grid.cell_count());
}

TEST_CASE("cup vanishing on circles") {
    const auto circle = SimplicialComplex::from_facets({{0, 1}, {1, 2}, {0, 2}});
    const auto gen = cohomology_basis(circle, 1).basis.at(0);
    const std::map<std::string, SimplicialComplex> arcs{{"a", SimplicialComplex::from_facets({{0, 1}, {1, 2}})},
                                                        {"b", SimplicialComplex::from_facets({{0, 2}})}};
    const auto report = cup_vanishing_check(circle, arcs, {gen, gen});
    CHECK(report.hypothesis.holds);
    REQUIRE(report.outcome == CupVanishingReport::Outcome::ProductVanishes);
    CHECK(coboundary(circle, *report.primitive) == report.product);

    const auto two = SimplicialComplex::from_facets({{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    Gf2Cochain u(two, 0);
    u.values().set(0);
    u.values().set(4);
    const auto exact = coboundary(two, u);
    const auto single = cup_vanishing_check(two, {{"all", two}}, {exact});
    REQUIRE(single.outcome == CupVanishingReport::Outcome::ProductVanishes);
    CHECK(coboundary(two, *single.primitive) == exact);

    const auto whole = cup_vanishing_check(circle, {{"all", circle}}, {gen});
    CHECK(whole.outcome == CupVanishingReport::Outcome::NonzeroRestriction);
    CHECK_THROWS_AS(cup_vanishing_check(circle, {{"a", arcs.at("a")}}, {gen}), std::invalid_argument);
}

TEST_CASE("cup vanishing detects the Hopf class on random RP2 covers") {
    const auto rp = projective_space(2);
    const auto e = hopf_cocycle(rp.complex, rp.cover).edge_signs();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto sets = random_subcomplex_cover(*rp.complex, 2, seed);
        CHECK(subcomplex_multiplicity(*rp.complex, sets) <= 2);
        const auto report = cup_vanishing_check(*rp.complex, sets, {e, e});
        CHECK(report.hypothesis.holds);
        REQUIRE(report.outcome == CupVanishingReport::Outcome::NonzeroRestriction);
        const auto& sub = sets.at(report.label);
        CHECK(is_cycle(sub, report.restriction_cycle));
        int pairing = 0;
        for (const auto& s : report.restriction_cycle) pairing ^= e.value(*rp.complex, s);
        CHECK(pairing == 1);
    }
}
