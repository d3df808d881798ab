#include <catch_amalgamated.hpp>

#include <random>

#include "kkmforge/lp.hpp"
#include "kkmforge/oracle.hpp"

using namespace kkmforge;

namespace {

Rational q(long long p, long long d = 1) { return make_rational(p, d); }

RationalVector random_point(std::mt19937_64& rng, std::size_t dim, int range) {
    std::uniform_int_distribution<int> coord(-range, range);
    RationalVector p;
    for (std::size_t i = 0; i < dim; ++i) p.push_back(Rational(coord(rng)));
    return p;
}

LinearSystem random_system(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> vars(1, 4), rows(1, 8);
    std::uniform_int_distribution<int> coef(-3, 3), rel(0, 5);
    const std::size_t n = vars(rng);
    LinearSystem sys(n);
    const std::size_t m = rows(rng);
    for (std::size_t i = 0; i < m; ++i) {
        RationalVector a;
        for (std::size_t j = 0; j < n; ++j) a.push_back(Rational(coef(rng)));
        const int r = rel(rng);
        sys.add_row(a, r == 0 ? Relation::Equal : (r % 2 ? Relation::LessEqual : Relation::GreaterEqual),
                    Rational(coef(rng)));
    }
    return sys;
}

}  // namespace

TEST_CASE("rational parsing round-trips and rejects bad input") {
    CHECK(parse_rational("3/6") == q(1, 2));
    CHECK(parse_rational(" -7 ") == q(-7));
    CHECK(format_rational(q(-4, 6)) == "-2/3");
    CHECK(format_rational(q(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("contradictory bounds yield the unit Farkas combination") {
    LinearSystem sys(1);
    sys.add_row({q(1)}, Relation::GreaterEqual, q(0));
    sys.add_row({q(1)}, Relation::LessEqual, q(-1));
    const auto cert = lp_feasible(sys);
    REQUIRE_FALSE(cert.is_feasible());
    CHECK(cert.multipliers == RationalVector{q(1), q(1)});
    CHECK(verify_certificate(sys, cert));
}

TEST_CASE("feasible system returns a satisfying point") {
    LinearSystem sys(2);
    sys.add_nonnegative(0);
    sys.add_nonnegative(1);
    sys.add_row({q(1), q(1)}, Relation::LessEqual, q(1));
    sys.add_row({q(1), q(1)}, Relation::GreaterEqual, q(1, 2));
    sys.add_row({q(1), q(-1)}, Relation::Equal, q(1, 3));
    const auto cert = lp_feasible(sys);
    REQUIRE(cert.is_feasible());
    CHECK(verify_certificate(sys, cert));
}

TEST_CASE("add_row rejects a coefficient count mismatch") {
    LinearSystem sys(2);
    CHECK_THROWS_AS(sys.add_row({q(1)}, Relation::Equal, q(0)), std::invalid_argument);
}

TEST_CASE("lp_maximize reports optimum, unboundedness and infeasibility") {
    LinearSystem box(2);
    box.add_row({q(1), q(0)}, Relation::LessEqual, q(1));
    box.add_row({q(0), q(1)}, Relation::LessEqual, q(2));
    box.add_row({q(1), q(-1)}, Relation::GreaterEqual, q(-5));
    auto opt = lp_maximize(box, {q(1), q(1)});
    REQUIRE(opt.status == LpSolution::Status::Optimal);
    CHECK(opt.value == q(3));

    auto unb = lp_maximize(box, {q(-1), q(-1)});
    CHECK(unb.status == LpSolution::Status::Unbounded);

    box.add_row({q(1), q(0)}, Relation::GreaterEqual, q(2));
    auto inf = lp_maximize(box, {q(1), q(1)});
    REQUIRE(inf.status == LpSolution::Status::Infeasible);
    CHECK(verify_certificate(box, inf.infeasibility));
}

TEST_CASE("lp_maximize matches the best basic solution on bounded random problems") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        LinearSystem sys(2);
        for (std::size_t j = 0; j < 2; ++j) {
            RationalVector e(2, q(0));
            e[j] = 1;
            sys.add_row(e, Relation::LessEqual, q(4));
            sys.add_row(e, Relation::GreaterEqual, q(-4));
        }
        for (int i = 0; i < 3; ++i) {
            auto a = random_point(rng, 2, 3);
            sys.add_row(a, Relation::LessEqual, Rational(rng() % 4));
        }
        const auto c = random_point(rng, 2, 3);
        const auto sol = lp_maximize(sys, c);
        // Oracle: best feasible vertex among pairwise row intersections.
        std::optional<Rational> best;
        for (std::size_t i = 0; i < sys.row_count(); ++i) {
            for (std::size_t j = i + 1; j < sys.row_count(); ++j) {
                auto x = oracle::solve_linear({sys.rows()[i].coeffs, sys.rows()[j].coeffs},
                                              {sys.rows()[i].rhs, sys.rows()[j].rhs}, 2);
                if (!x) continue;
                LinearSystem point(2);
                bool ok = true;
                for (const auto& row : sys.rows()) {
                    const Rational v = dot(row.coeffs, *x);
                    if (row.relation == Relation::LessEqual ? v > row.rhs : v < row.rhs) ok = false;
                }
                if (ok && (!best || dot(c, *x) > *best)) best = dot(c, *x);
            }
        }
        if (!best) {
            CHECK(sol.status == LpSolution::Status::Infeasible);
        } else {
            REQUIRE(sol.status == LpSolution::Status::Optimal);
            CHECK(sol.value == *best);
        }
    }
}

TEST_CASE("lp_feasible agrees with minimal-face enumeration") {
    std::mt19937_64 rng(2024);
    int feasible = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto sys = random_system(rng);
        const auto cert = lp_feasible(sys);
        CHECK(cert.is_feasible() == oracle::feasible_by_enumeration(sys));
        CHECK(verify_certificate(sys, cert));
        feasible += cert.is_feasible();
    }
    CHECK(feasible > 0);
    CHECK(feasible < 50);
}

TEST_CASE("in_hull agrees with simplex enumeration and certifies both outcomes") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dim = 1 + trial % 3;
        std::vector<RationalVector> pts;
        for (int i = 0; i < 5; ++i) pts.push_back(random_point(rng, dim, 4));
        const auto query = random_point(rng, dim, 3);
        const auto res = in_hull(query, pts);
        CHECK(res.inside == oracle::in_hull_by_simplices(query, pts));
        if (res.inside) {
            CHECK(verify_hull_weights(query, pts, res.weights));
        } else {
            CHECK(res.separator(query) < 0);
            for (const auto& p : pts) CHECK(res.separator(p) > 0);
        }
    }
}

TEST_CASE("separate finds a normalized functional or a common point") {
    const std::vector<RationalVector> left{{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}};
    const std::vector<RationalVector> right{{q(3), q(3)}, {q(4), q(3)}, {q(3), q(4)}};
    const auto sep = separate(left, right, left[0]);
    REQUIRE(sep.separated);
    CHECK(sep.functional(left[0]) == q(-1));
    CHECK(verify_separation(left, right, left[0], sep.functional));

    const std::vector<RationalVector> crossing{{q(1, 4), q(1, 4)}, {q(5), q(5)}};
    const auto common = separate(left, crossing, left[0]);
    REQUIRE_FALSE(common.separated);
    CHECK(oracle::in_hull_by_simplices(common.common_point, left));
    CHECK(oracle::in_hull_by_simplices(common.common_point, crossing));

    CHECK_THROWS_AS(separate(left, right, RationalVector{q(9), q(9)}), std::invalid_argument);
}

TEST_CASE("halfspace_depth matches the sweep oracle and its direction realizes it") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t dim = trial % 4 == 0 ? 1 : 2;
        std::vector<RationalVector> pts;
        const int n = 3 + static_cast<int>(rng() % 8);
        for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, dim, 2));
        const auto query = trial % 3 == 0 ? pts[0] : random_point(rng, dim, 2);
        const auto res = halfspace_depth(query, pts);
        CHECK(res.depth == oracle::depth_low_dimension(query, pts));
        int count = 0;
        for (const auto& p : pts) count += dot(res.direction, p - query) >= 0;
        CHECK(count == res.depth);
    }
}

TEST_CASE("halfspace_depth in three dimensions is bounded by coordinate halfspaces") {
    // Cube corners: the center has depth 4, a corner has depth 1.
    std::vector<RationalVector> cube;
    for (int m = 0; m < 8; ++m) cube.push_back({q(m & 1), q(m >> 1 & 1), q(m >> 2 & 1)});
    CHECK(halfspace_depth({q(1, 2), q(1, 2), q(1, 2)}, cube).depth == 4);
    CHECK(halfspace_depth({q(1), q(1), q(1)}, cube).depth == 1);
    CHECK(halfspace_depth({q(2), q(1), q(1)}, cube).depth == 0);
}
