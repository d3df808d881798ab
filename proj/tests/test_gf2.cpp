#include <catch_amalgamated.hpp>

#include <random>

#include "kkmforge/gf2.hpp"
#include "kkmforge/oracle.hpp"

using namespace kkmforge;

namespace {

BitVector random_bits(std::mt19937_64& rng, std::size_t size, double density) {
    std::bernoulli_distribution coin(density);
    BitVector v(size);
    for (std::size_t i = 0; i < size; ++i) v.set(i, coin(rng));
    return v;
}

BitVector combine(const std::vector<BitVector>& gens, const BitVector& coeffs, std::size_t size) {
    BitVector out(size);
    for (std::size_t j : coeffs.ones()) out ^= gens[j];
    return out;
}

}  // namespace

TEST_CASE("bit vector basics") {
    BitVector v(130);
    v.set(0);
    v.set(64);
    v.set(129);
    CHECK(v.count() == 3);
    CHECK(v.lowest() == 0);
    v.flip(0);
    CHECK(v.lowest() == 64);
    CHECK(v.ones() == std::vector<std::size_t>{64, 129});
    BitVector w(130);
    w.set(129);
    w.set(5);
    CHECK(v.dot(w));
    CHECK(BitVector(7).lowest() == 7);
}

TEST_CASE("reducer rank matches dense elimination and dependencies vanish") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t size = 1 + rng() % 90;
        const std::size_t count = 1 + rng() % 40;
        const double density = trial % 2 ? 0.5 : 0.08;
        std::vector<BitVector> gens;
        std::vector<std::vector<bool>> dense;
        Gf2Reducer reducer(size, count);
        for (std::size_t j = 0; j < count; ++j) {
            gens.push_back(random_bits(rng, size, density));
            dense.emplace_back();
            for (std::size_t i = 0; i < size; ++i) dense.back().push_back(gens[j].test(i));
            BitVector dep;
            if (!reducer.insert(gens[j], j, &dep)) {
                CHECK(dep.test(j));
                CHECK(combine(gens, dep, size).none());
            }
        }
        CHECK(reducer.rank() == oracle::gf2_rank(dense));

        const auto target = random_bits(rng, size, 0.3);
        BitVector witness;
        auto sol = reducer.solve(target, &witness);
        if (sol) {
            CHECK(combine(gens, *sol, size) == target);
            CHECK(reducer.reduce(target).none());
        } else {
            CHECK(witness.dot(target));
            for (const auto& g : gens) CHECK_FALSE(witness.dot(g));
        }
    }
}

TEST_CASE("solve succeeds on targets built from the generators") {
    std::mt19937_64 rng(8);
    const std::size_t size = 70, count = 25;
    std::vector<BitVector> gens;
    Gf2Reducer reducer(size, count);
    for (std::size_t j = 0; j < count; ++j) {
        gens.push_back(random_bits(rng, size, 0.2));
        reducer.insert(gens.back(), j);
    }
    for (int trial = 0; trial < 20; ++trial) {
        const auto coeffs = random_bits(rng, count, 0.5);
        const auto target = combine(gens, coeffs, size);
        auto sol = reducer.solve(target);
        REQUIRE(sol);
        CHECK(combine(gens, *sol, size) == target);
    }
}
