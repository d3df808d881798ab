#include <catch_amalgamated.hpp>

#include <random>

#include "kkmforge/line_bundle.hpp"

using namespace kkmforge;

TEST_CASE("Hopf powers on projective spaces") {
    for (int n = 1; n <= 3; ++n) {
        const auto rp = projective_space(n);
        const auto hopf = hopf_cocycle(rp.complex, rp.cover);
        CHECK(w1(hopf).nonzero);
        for (int k = 1; k <= n + 1; ++k) {
            const auto report = euler_class_product({{hopf, k}});
            CHECK(report.degree == k);
            CHECK(report.nonzero == (k <= n));
            CHECK(report.beyond_dimension == (k > n));
            if (report.nonzero) {
                CHECK(is_cycle(*rp.complex, report.certificate.cycle_witness));
                int pairing = 0;
                for (const auto& s : report.certificate.cycle_witness) pairing ^= report.euler_class.value(*rp.complex, s);
                CHECK(pairing == 1);
            }
        }
    }
}

TEST_CASE("Hopf bundle becomes trivial on the sphere") {
    const auto rp = projective_space(2);
    const auto hopf = hopf_cocycle(rp.complex, rp.cover);
    const auto up = pullback_bundle(hopf, rp.cover.source, rp.cover.vertex_map);
    CHECK_FALSE(w1(up).nonzero);
}

TEST_CASE("w1 is invariant under coboundary perturbation") {
    const auto rp = projective_space(2);
    const auto hopf = hopf_cocycle(rp.complex, rp.cover);
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        Gf2Cochain u(*rp.complex, 0);
        for (std::size_t i = 0; i < u.values().size(); ++i) u.values().set(i, rng() & 1);
        const LineBundleCocycle perturbed(rp.complex, hopf.edge_signs() + coboundary(*rp.complex, u));
        CHECK(w1(perturbed).nonzero);
        CHECK(euler_class_product({{perturbed, 2}}).nonzero);
    }
    CHECK_FALSE(w1(LineBundleCocycle::trivial(rp.complex)).nonzero);
}

TEST_CASE("Product of the two Hopf classes on RP1 x RP1") {
    const auto rp = projective_space(1);
    const auto hopf = hopf_cocycle(rp.complex, rp.cover);
    const auto prod = product_complex(*rp.complex, *rp.complex);
    auto torus = std::make_shared<const SimplicialComplex>(prod.complex);
    const auto h1 = pullback_bundle(hopf, torus, prod.to_left);
    const auto h2 = pullback_bundle(hopf, torus, prod.to_right);
    const auto mixed = euler_class_product({{h1, 1}, {h2, 1}});
    CHECK(mixed.nonzero);
    CHECK_FALSE(euler_class_product({{h1, 2}}).nonzero);
    // Commutativity at class level.
    const auto swapped = euler_class_product({{h2, 1}, {h1, 1}});
    CHECK(is_coboundary(*torus, mixed.euler_class + swapped.euler_class).is_coboundary);
}

TEST_CASE("bundle validation") {
    const auto rp = projective_space(2);
    auto bad = Gf2Cochain::from_support(*rp.complex, 1, {rp.complex->simplices(1).front()});
    CHECK_THROWS_AS(LineBundleCocycle(rp.complex, bad), std::invalid_argument);
    const auto other = projective_space(1);
    const auto h2 = hopf_cocycle(rp.complex, rp.cover);
    const auto h1 = hopf_cocycle(other.complex, other.cover);
    CHECK_THROWS_AS(euler_class_product({{h2, 1}, {h1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(euler_class_product({}), std::invalid_argument);
    CHECK_THROWS_AS(hopf_cocycle(other.complex, rp.cover), std::invalid_argument);
}
