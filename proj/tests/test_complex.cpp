#include <catch_amalgamated.hpp>

#include <random>

#include "kkmforge/complex.hpp"
#include "kkmforge/oracle.hpp"

using namespace kkmforge;

namespace {

// Six-vertex real projective plane.
SimplicialComplex rp2_six() {
    return SimplicialComplex::from_facets({{1, 2, 4}, {1, 2, 6}, {1, 3, 5}, {1, 3, 6}, {1, 4, 5},
                                           {2, 3, 4}, {2, 3, 5}, {2, 5, 6}, {3, 4, 6}, {4, 5, 6}});
}

SimplicialComplex cycle(int n) {
    std::vector<std::vector<Vertex>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return SimplicialComplex::from_facets(edges);
}

Gf2Cochain random_cochain(std::mt19937_64& rng, const SimplicialComplex& k, int degree) {
    Gf2Cochain c(k, degree);
    for (std::size_t i = 0; i < k.count(degree); ++i) c.values().set(i, rng() & 1);
    return c;
}

}  // namespace

TEST_CASE("build_complex closes facets and rejects malformed input") {
    const auto tetra = SimplicialComplex::from_facets({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    CHECK(tetra.f_vector() == std::vector<std::size_t>{4, 6, 4});
    CHECK(tetra.euler_characteristic() == 2);
    CHECK(tetra.facets().size() == 4);
    CHECK_THROWS_AS(SimplicialComplex::from_facets({}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex::from_facets({{1, 1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex::from_facets({{}}), std::invalid_argument);
    const auto mixed = SimplicialComplex::from_facets({{0, 1, 2}, {2, 3}, {4}});
    CHECK(mixed.facets() == std::vector<Simplex>{{4}, {2, 3}, {0, 1, 2}});
}

TEST_CASE("coboundary squares to zero") {
    std::mt19937_64 rng(1);
    const auto k = rp2_six();
    for (int trial = 0; trial < 20; ++trial) {
        for (int deg = 0; deg <= 1; ++deg) {
            const auto c = random_cochain(rng, k, deg);
            CHECK(coboundary(k, coboundary(k, c)).is_zero());
        }
    }
}

TEST_CASE("Betti numbers agree with rank formula") {
    const auto k = rp2_six();
    const auto expected = oracle::betti_numbers(k);
    CHECK(expected == std::vector<int>{1, 1, 1});
    for (int deg = 0; deg <= 2; ++deg) {
        const auto basis = cohomology_basis(k, deg);
        CHECK(basis.betti == expected[static_cast<std::size_t>(deg)]);
        for (const auto& z : basis.basis) CHECK(is_cocycle(k, z));
    }
    CHECK(cohomology_basis(cycle(7), 1).betti == 1);
    CHECK_THROWS_AS(cohomology_basis(k, 3), std::invalid_argument);
}

TEST_CASE("cup product is a cochain map and squares the RP2 generator nontrivially") {
    const auto k = rp2_six();
    const auto a = cohomology_basis(k, 1).basis.at(0);
    const auto a2 = cup_product(k, a, a);
    REQUIRE(is_cocycle(k, a2));
    const auto test = is_coboundary(k, a2);
    CHECK_FALSE(test.is_coboundary);
    CHECK(is_cycle(k, test.cycle_witness));
    int pairing = 0;
    for (const auto& s : test.cycle_witness) pairing ^= a2.value(k, s);
    CHECK(pairing == 1);

    const auto a3 = cup_product(k, a2, a);
    CHECK(a3.beyond_dimension());
    CHECK(a3.is_zero());

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_cochain(rng, k, 0);
        const auto y = random_cochain(rng, k, 1);
        const auto lhs = coboundary(k, cup_product(k, x, y));
        const auto rhs = cup_product(k, coboundary(k, x), y) + cup_product(k, x, coboundary(k, y));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("is_coboundary returns a checked primitive") {
    std::mt19937_64 rng(11);
    const auto k = rp2_six();
    for (int trial = 0; trial < 10; ++trial) {
        const auto u = random_cochain(rng, k, 0);
        const auto c = coboundary(k, u);
        const auto test = is_coboundary(k, c);
        REQUIRE(test.is_coboundary);
        CHECK(coboundary(k, *test.primitive) == c);
    }
    auto not_cocycle = Gf2Cochain::from_support(k, 1, {{1, 2}});
    CHECK_THROWS_AS(is_coboundary(k, not_cocycle), std::invalid_argument);
    auto vertex = Gf2Cochain::from_support(k, 0, {{3}});
    CHECK_THROWS_AS(is_coboundary(k, vertex), std::invalid_argument);
    Gf2Cochain all(k, 0);
    for (std::size_t i = 0; i < k.count(0); ++i) all.values().set(i);
    const auto constant = is_coboundary(k, all);
    CHECK_FALSE(constant.is_coboundary);
    CHECK(constant.cycle_witness.size() == 1);
}

TEST_CASE("restriction to a subcomplex") {
    const auto k = rp2_six();
    const auto sub = SimplicialComplex::from_facets({{1, 2, 4}, {2, 3, 4}});
    const auto a = cohomology_basis(k, 1).basis.at(0);
    const auto r = restrict_cochain(k, sub, a);
    CHECK(r.values().size() == sub.count(1));
    for (const auto& e : sub.simplices(1)) CHECK(r.value(sub, e) == a.value(k, e));
    CHECK(is_coboundary(sub, r).is_coboundary);
    const auto foreign = SimplicialComplex::from_facets({{1, 2, 3}});
    CHECK_THROWS_AS(restrict_cochain(k, foreign, a), std::invalid_argument);
}

TEST_CASE("staircase products multiply Euler characteristics and Betti numbers") {
    const auto circle = cycle(4);
    const auto torus = product_complex(circle, circle);
    CHECK(torus.complex.euler_characteristic() == 0);
    CHECK(oracle::betti_numbers(torus.complex) == std::vector<int>{1, 2, 1});
    CHECK(torus.complex.f_vector() == std::vector<std::size_t>{16, 48, 32});

    const auto k = rp2_six();
    const auto prod = product_complex(k, cycle(3));
    CHECK(prod.complex.euler_characteristic() == k.euler_characteristic() * 0);
    const auto tri = SimplicialComplex::from_facets({{0, 1, 2}});
    const auto prism = product_complex(tri, SimplicialComplex::from_facets({{0, 1}}));
    CHECK(prism.complex.f_vector().back() == 3);
    CHECK(prism.complex.euler_characteristic() == 1);

    const auto a = pullback(torus.complex, circle, torus.to_left, cohomology_basis(circle, 1).basis.at(0));
    CHECK(is_cocycle(torus.complex, a));
    CHECK_FALSE(is_coboundary(torus.complex, a).is_coboundary);
}

TEST_CASE("projective spaces from the cross-polytope quotient") {
    for (int n = 1; n <= 3; ++n) {
        const auto rp = projective_space(n);
        long vertices = 1;
        for (int i = 0; i <= n; ++i) vertices *= 3;
        CHECK(static_cast<long>(rp.complex->count(0)) == (vertices - 1) / 2);
        CHECK(static_cast<long>(rp.cover.source->count(0)) == vertices - 1);
        CHECK(rp.complex->euler_characteristic() == (n % 2 == 0 ? 1 : 0));
        CHECK(oracle::betti_numbers(*rp.complex) == std::vector<int>(static_cast<std::size_t>(n) + 1, 1));
    }
    CHECK_THROWS_AS(projective_space(0), std::invalid_argument);
    CHECK_THROWS_AS(projective_space(5), std::invalid_argument);
}

TEST_CASE("validate_quotient rejects a broken deck transformation") {
    auto rp = projective_space(1);
    auto broken = rp.cover;
    std::swap(broken.deck[0], broken.deck[1]);
    CHECK_THROWS_AS(validate_quotient(broken), std::invalid_argument);
    auto lopsided = rp.cover;
    lopsided.vertex_map[0] = lopsided.vertex_map[2];
    CHECK_THROWS_AS(validate_quotient(lopsided), std::invalid_argument);
}

TEST_CASE("pullback along the double cover kills the generator of RP^2") {
    const auto rp = projective_space(2);
    const auto a = cohomology_basis(*rp.complex, 1).basis.at(0);
    const auto up = pullback(*rp.cover.source, *rp.complex, rp.cover.vertex_map, a);
    CHECK(is_coboundary(*rp.cover.source, up).is_coboundary);
}
