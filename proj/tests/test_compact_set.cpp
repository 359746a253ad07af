#include <catch_amalgamated.hpp>

#include <random>

#include "hyperchaos/compact_set.hpp"
#include "support/generators.hpp"

using namespace hyperchaos;

namespace {

// Brute-force directed Hausdorff oracle on a dyadic grid, independent of the
// candidate-point computation: sample each part of `a` at the given step
// (plus its endpoints) and maximize the exact point-to-set distance.
Rational grid_directed(const CompactSet& a, const CompactSet& b, const Rational& step) {
    Rational best = 0;
    for (const auto& part : a.parts()) {
        Rational x = part.lo();
        for (;;) {
            best = max(best, b.dist_to(x));
            if (x == part.hi()) break;
            x = min(part.hi(), x + step);
        }
    }
    return best;
}

Rational grid_hausdorff(const CompactSet& a, const CompactSet& b, const Rational& step) {
    return max(grid_directed(a, b, step), grid_directed(b, a, step));
}

}  // namespace

TEST_CASE("interval basics") {
    REQUIRE_THROWS_AS(Interval(Rational(1, 2), Rational(1, 4)), std::domain_error);
    REQUIRE_THROWS_AS(Interval(Rational(-1, 4), Rational(1, 2)), std::domain_error);
    REQUIRE_THROWS_AS(Interval(Rational(1, 2), Rational(3, 2)), std::domain_error);
    const Interval j(Rational(1, 4), Rational(1, 2));
    REQUIRE(j.diameter() == Rational(1, 4));
    REQUIRE(j.midpoint() == Rational(3, 8));
    REQUIRE(!j.is_point());
    REQUIRE(Interval::point(Rational(1, 3)).is_point());
    REQUIRE(dist(j, Interval(Rational(3, 4), Rational(1))) == Rational(1, 4));
    REQUIRE(dist(j, Interval(Rational(3, 8), Rational(1))) == Rational(0));
    REQUIRE(dist(Rational(1, 8), j) == Rational(1, 8));
    REQUIRE(j.hull(Interval(Rational(3, 4), Rational(1))) == Interval(Rational(1, 4), Rational(1)));
    REQUIRE(!j.intersect(Interval(Rational(3, 4), Rational(1))));
    REQUIRE(*j.intersect(Interval(Rational(3, 8), Rational(1))) ==
            Interval(Rational(3, 8), Rational(1, 2)));
    REQUIRE(j.str() == "1/4..1/2");
    REQUIRE(Interval::point(Rational(1, 3)).str() == "1/3");
}

TEST_CASE("canonical form") {
    const CompactSet s = CompactSet::of({Interval(Rational(1, 2), Rational(3, 4)),
                                         Interval(0, Rational(1, 4)),
                                         Interval(Rational(1, 4), Rational(1, 2))});
    REQUIRE(s.parts().size() == 1);
    REQUIRE(s.parts()[0] == Interval(0, Rational(3, 4)));

    const CompactSet t = CompactSet::points({Rational(1, 2), Rational(1, 4), Rational(1, 2)});
    REQUIRE(t.parts().size() == 2);
    REQUIRE(t.min_point() == Rational(1, 4));
    REQUIRE(t.max_point() == Rational(1, 2));
}

TEST_CASE("textual form round trip") {
    const CompactSet s = CompactSet::parse("0/1..1/4;1/2;3/4..1/1");
    REQUIRE(s.parts().size() == 3);
    REQUIRE(s.str() == "0/1..1/4;1/2;3/4..1/1");
    REQUIRE(CompactSet::parse(s.str()) == s);
    REQUIRE_THROWS_AS(CompactSet::parse(""), std::invalid_argument);
    REQUIRE_THROWS_AS(CompactSet::parse("1/2;;3/4"), std::invalid_argument);
}

TEST_CASE("hausdorff distance examples") {
    const CompactSet unit = CompactSet::of({Interval::unit()});
    REQUIRE(hausdorff_distance(unit, unit) == Rational(0));
    REQUIRE(hausdorff_distance(CompactSet::point(Rational(0)), CompactSet::point(Rational(1))) ==
            Rational(1));
    REQUIRE(hausdorff_distance(CompactSet::of({Interval(0, Rational(1, 2))}),
                               CompactSet::of({Interval(Rational(1, 4), Rational(3, 4))})) ==
            Rational(1, 4));
    // The maximum can sit strictly inside a part, facing a gap of the other set.
    const CompactSet gapped = CompactSet::points({Rational(0), Rational(1)});
    REQUIRE(hausdorff_distance(unit, gapped) == Rational(1, 2));
}

TEST_CASE("hausdorff distance against the grid oracle") {
    std::mt19937_64 rng(314159);
    const Rational step = dyadic(12);
    for (int trial = 0; trial < 50; ++trial) {
        const CompactSet a = testgen::random_set(rng);
        const CompactSet b = testgen::random_set(rng);
        const Rational exact = hausdorff_distance(a, b);
        const Rational approx = grid_hausdorff(a, b, step);
        REQUIRE(approx <= exact);
        REQUIRE(exact - approx <= step);
    }
}

TEST_CASE("metric axioms on random triples") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        const CompactSet a = testgen::random_set(rng);
        const CompactSet b = testgen::random_set(rng);
        const CompactSet c = testgen::random_set(rng);
        const Rational ab = hausdorff_distance(a, b);
        REQUIRE(ab == hausdorff_distance(b, a));
        REQUIRE((ab == Rational(0)) == (a == b));
        REQUIRE(ab <= hausdorff_distance(a, c) + hausdorff_distance(c, b));
    }
}

TEST_CASE("eps neighborhoods") {
    REQUIRE(CompactSet::point(Rational(1, 2)).eps_neighborhood(Rational(1, 4)) ==
            CompactSet::of({Interval(Rational(1, 4), Rational(3, 4))}));
    const CompactSet unit = CompactSet::of({Interval::unit()});
    REQUIRE(unit.eps_neighborhood(Rational(1, 10)) == unit);
    REQUIRE(CompactSet::points({Rational(0), Rational(1)}).eps_neighborhood(Rational(1, 8)) ==
            CompactSet::parse("0/1..1/8;7/8..1/1"));
    REQUIRE_THROWS_AS(unit.eps_neighborhood(Rational(0)), std::domain_error);
    REQUIRE_THROWS_AS(unit.eps_neighborhood(Rational(-1, 2)), std::domain_error);
}

TEST_CASE("neighborhood consistency with the metric") {
    std::mt19937_64 rng(1618);
    for (int trial = 0; trial < 100; ++trial) {
        const CompactSet a = testgen::random_set(rng);
        const CompactSet b = testgen::random_set(rng);
        const Rational d = hausdorff_distance(a, b);
        const Rational wider = d + Rational(1, 97);
        REQUIRE(b.subset_of(a.eps_neighborhood(wider)));
        REQUIRE(a.subset_of(b.eps_neighborhood(wider)));
    }
}

TEST_CASE("set predicates") {
    const CompactSet s = CompactSet::parse("0/1..1/4;1/2");
    REQUIRE(s.contains(Rational(1, 8)));
    REQUIRE(s.contains(Rational(1, 2)));
    REQUIRE(!s.contains(Rational(3, 8)));
    REQUIRE(s.subset_of(CompactSet::of({Interval(0, Rational(1, 2))})));
    REQUIRE(!CompactSet::of({Interval(0, Rational(1, 2))}).subset_of(s));
    REQUIRE(s.dist_to(Rational(3, 8)) == Rational(1, 8));
    REQUIRE(s.intersect(Interval(Rational(1, 8), Rational(1, 2))) ==
            CompactSet::parse("1/8..1/4;1/2"));
    REQUIRE(CompactSet().empty());
    REQUIRE_THROWS_AS(CompactSet().dist_to(Rational(0)), std::domain_error);
}
