#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "kkmforge/lp.hpp"
#include "kkmforge/pl_sections.hpp"

using namespace kkmforge;

namespace {

Rational q(long long p, long long d = 1) { return make_rational(p, d); }

double norm(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<WeightVector> grid(std::size_t vertices, long long resolution) {
    std::vector<WeightVector> out;
    std::vector<long long> counts(vertices, 0);
    std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long left) {
        if (i + 1 == vertices) {
            counts[i] = left;
            RationalVector w;
            for (long long c : counts) w.push_back(q(c, resolution));
            out.emplace_back(std::move(w));
            return;
        }
        for (long long c = 0; c <= left; ++c) {
            counts[i] = c;
            rec(i + 1, left - c);
        }
    };
    rec(0, resolution);
    return out;
}

double distance(const RationalVector& a, const RationalVector& b) { return std::sqrt(to_double(squared_distance(a, b))); }

}  // namespace

TEST_CASE("pi_V on simple points") {
    CHECK(pi_V(RationalVector{q(0), q(5), q(0)}) == WeightVector::vertex(3, 1));
    CHECK(pi_V(RationalVector{q(1), q(1), q(1)}).weights() == RationalVector{q(1, 3), q(1, 3), q(1, 3)});
    CHECK(pi_V(RationalVector{q(1), q(2), q(2)}).weights() == RationalVector{q(1, 9), q(4, 9), q(4, 9)});
    CHECK_THROWS_AS(pi_V(RationalVector{q(0), q(0)}), std::invalid_argument);
}

TEST_CASE("pi_V is constant on projective classes") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> coord(-6, 6), scale(1, 9);
    for (int trial = 0; trial < 40; ++trial) {
        RationalVector p{Rational(coord(rng)), Rational(coord(rng)), q(1), Rational(coord(rng))};
        const Rational lambda = q(scale(rng) * (trial % 2 ? -1 : 1), scale(rng));
        CHECK(pi_V(p) == pi_V(lambda * p));
        CHECK(ProjectivePoint(p) == ProjectivePoint(lambda * p));
    }
}

TEST_CASE("projective points are canonical integer vectors") {
    const ProjectivePoint p({q(0), q(-2, 3), q(4, 3)});
    CHECK(p.coords() == std::vector<Integer>{Integer(0), Integer(1), Integer(-2)});
    CHECK_THROWS_AS(ProjectivePoint({q(0), q(0)}), std::invalid_argument);
}

TEST_CASE("sigma_V inverts pi_V") {
    const auto s = sigma_V(WeightVector({q(1, 4), q(3, 4)}));
    CHECK(std::abs(s[0] - 0.5) < 1e-12);
    CHECK(std::abs(s[1] - std::sqrt(3.0) / 2) < 1e-12);
    CHECK(sigma_V(WeightVector::vertex(3, 2)) == std::vector<double>{0, 0, 1});
    const WeightVector t({q(1, 9), q(4, 9), q(4, 9)});
    CHECK(pi_V(RationalVector{q(1, 3), q(2, 3), q(2, 3)}) == t);
    for (const auto& w : grid(3, 8)) {
        const auto root = sigma_V(w);
        CHECK(std::abs(norm(root) - 1) < 1e-12);
        for (std::size_t v = 0; v < 3; ++v) CHECK(std::abs(root[v] * root[v] - to_double(w[v])) < 1e-12);
    }
}

TEST_CASE("weight vectors and families validate their invariants") {
    CHECK_THROWS_AS(WeightVector({q(1, 2), q(1, 3)}), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector({q(3, 2), q(-1, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(DisjointFamily({WeightVector({q(1, 2), q(1, 2)}), WeightVector::vertex(2, 1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DisjointFamily({}), std::invalid_argument);
    const DisjointFamily edge({WeightVector::vertex(3, 0), WeightVector::vertex(3, 1)});
    CHECK(edge.codim() == 1);
}

TEST_CASE("section_sT vanishes exactly on E_T") {
    const DisjointFamily family({WeightVector({q(1, 9), q(4, 9), q(4, 9), q(0)}), WeightVector::vertex(4, 3)});
    CHECK(family.codim() == 2);
    const auto zero = section_sT(family, {q(1), q(2), q(2), q(5)});
    CHECK(zero.is_zero);
    CHECK(norm(zero.value) < 1e-9);
    CHECK(section_sT(family, {q(-1), q(-2), q(-2), q(5)}).is_zero);
    const auto flipped = section_sT(family, {q(1), q(2), q(-2), q(5)});
    CHECK_FALSE(flipped.is_zero);
    CHECK(norm(flipped.value) > 1e-9);

    const DisjointFamily corner({WeightVector::vertex(4, 0), WeightVector::vertex(4, 1)});
    const auto off = section_sT(corner, {q(0), q(0), q(3), q(4)});
    CHECK(std::abs(norm(off.value) - 5) < 1e-9);
    CHECK_THROWS_AS(section_sT(corner, {q(1), q(2)}), std::invalid_argument);
}

TEST_CASE("section_sT is odd and its float value agrees with the exact predicate") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> coord(-3, 3);
    for (const auto& family : sample_Sd(4, 2, 6, 77)) {
        for (int trial = 0; trial < 20; ++trial) {
            RationalVector p;
            for (int i = 0; i < 4; ++i) p.push_back(Rational(coord(rng)));
            if (std::all_of(p.begin(), p.end(), [](const Rational& c) { return c.is_zero(); })) continue;
            const auto plus = section_sT(family, p);
            const auto minus = section_sT(family, Rational(-1) * p);
            for (std::size_t c = 0; c < plus.value.size(); ++c) CHECK(std::abs(plus.value[c] + minus.value[c]) < 1e-12);
            CHECK(plus.is_zero == (norm(plus.value) < 1e-9));
        }
    }
}

TEST_CASE("zero set of s_T projects onto Delta_T on a 64 grid") {
    const std::vector<DisjointFamily> families{
        DisjointFamily({WeightVector::vertex(3, 0), WeightVector::vertex(3, 1)}),
        DisjointFamily({WeightVector::vertex(3, 0), WeightVector({q(0), q(1, 2), q(1, 2)})}),
        DisjointFamily({WeightVector({q(1, 2), q(1, 2), q(0)}), WeightVector::vertex(3, 2)}),
    };
    const auto points = grid(3, 64);
    for (const auto& family : families) {
        std::vector<RationalVector> zero;
        for (const auto& t : points) {
            if (in_zero_image(family, t)) zero.push_back(t.weights());
        }
        REQUIRE_FALSE(zero.empty());
        std::vector<RationalVector> ends;
        for (const auto& m : family.members()) ends.push_back(m.weights());
        // Every scanned zero lies on Delta_T.
        for (const auto& z : zero) CHECK(in_hull(z, ends).inside);
        // Every point of Delta_T is within 2/64 of a scanned zero.
        double worst = 0;
        for (int k = 0; k <= 256; ++k) {
            const Rational s = q(k, 256);
            const RationalVector p = (1 - s) * ends[0] + s * ends[1];
            double best = 1e9;
            for (const auto& z : zero) best = std::min(best, distance(p, z));
            worst = std::max(worst, best);
        }
        CHECK(worst <= 2.0 / 64);
    }
}

TEST_CASE("exact zero predicate matches hull membership for sampled families") {
    for (std::size_t n : {3u, 4u}) {
        for (int d = 0; d < static_cast<int>(n); ++d) {
            for (const auto& family : sample_Sd(n, d, 5, 1000 + n)) {
                std::vector<RationalVector> members;
                for (const auto& m : family.members()) members.push_back(m.weights());
                for (const auto& t : grid(n, n == 3 ? 12 : 6)) {
                    CHECK(in_zero_image(family, t) == in_hull(t.weights(), members).inside);
                }
            }
        }
    }
}

TEST_CASE("sample_Sd enumerates vertex families first and is seed-stable") {
    const auto points = sample_Sd(4, 3, 0, 1);
    REQUIRE(points.size() == 4);
    for (const auto& f : points) CHECK(f.members().size() == 1);
    const auto edges = sample_Sd(3, 1, 0, 1);
    REQUIRE(edges.size() == 3);
    const auto a = sample_Sd(5, 2, 10, 42);
    const auto b = sample_Sd(5, 2, 10, 42);
    REQUIRE(a.size() == 20);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].codim() == 2);
        CHECK(a[i].members() == b[i].members());
    }
    CHECK_THROWS_AS(sample_Sd(3, 3, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(sample_Sd(3, -1, 1, 0), std::invalid_argument);
}

TEST_CASE("palais_refine picks the argmax and refines into disjoint levels") {
    auto strict = palais_refine({q(1, 2), q(3, 10), q(1, 5)}, 3);
    CHECK(strict.argmax == std::vector<std::size_t>{0});
    auto tie = palais_refine({q(2, 5), q(2, 5), q(1, 5)}, 2);
    CHECK(tie.argmax == std::vector<std::size_t>{0, 1});
    CHECK(in_refined_set({q(2, 5), q(2, 5), q(1, 5)}, {0, 1}));
    CHECK_FALSE(in_refined_set({q(2, 5), q(2, 5), q(1, 5)}, {0}));
    CHECK_THROWS_AS(palais_refine({q(1, 2), q(1, 3)}, 2), std::invalid_argument);

    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> value(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        RationalVector phi;
        Rational total(0);
        for (int i = 0; i < 4; ++i) {
            phi.push_back(Rational(value(rng)));
            total += phi.back();
        }
        if (total.is_zero()) continue;
        for (auto& v : phi) v /= total;
        const auto refined = palais_refine(phi, 4);
        std::vector<int> per_size(5, 0);
        int members = 0;
        for (unsigned mask = 1; mask < 16; ++mask) {
            std::vector<std::size_t> J;
            for (std::size_t i = 0; i < 4; ++i) {
                if (mask >> i & 1u) J.push_back(i);
            }
            const bool in = in_refined_set(phi, J);
            per_size[J.size()] += in;
            members += in;
            const bool listed =
                std::find(refined.memberships.begin(), refined.memberships.end(), J) != refined.memberships.end();
            CHECK(in == listed);
        }
        CHECK(members >= 1);
        for (int c : per_size) CHECK(c <= 1);
    }
}

TEST_CASE("glue_sections collapses to the local section on a single set") {
    GluingProblem problem;
    problem.components = 1;
    problem.partition = {1, [](const RationalVector&) { return RationalVector{q(1)}; }};
    problem.local_section = [](std::size_t, std::size_t, const RationalVector& x) {
        return std::vector<double>{1.0 + to_double(x[0])};
    };
    const auto glued = glue_sections(problem, {q(1, 2)});
    CHECK(glued.components[0] == std::vector<double>{1.5});

    GluingProblem crowded = problem;
    crowded.partition = {2, [](const RationalVector&) { return RationalVector{q(1, 2), q(1, 2)}; }};
    CHECK_THROWS_AS(glue_sections(crowded, {q(0)}), GluingError);

    GluingProblem vanishing = problem;
    vanishing.local_section = [](std::size_t, std::size_t, const RationalVector&) { return std::vector<double>{0.0}; };
    CHECK_THROWS_AS(glue_sections(vanishing, {q(0)}), GluingError);
}

TEST_CASE("two-arc gluing on RP1 never vanishes") {
    const auto demo = rp1_two_arc_demo(10000);
    CHECK(demo.samples.size() == 10000);
    CHECK(demo.disjointness_holds);
    CHECK(demo.min_max_norm > 1e-9);
    // Inside a single arc only s_1 is used.
    const auto& s = demo.samples[2500];
    REQUIRE(s.weights.size() == 1);
    CHECK(s.norms[1] == 0);
}
