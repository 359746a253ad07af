#include <catch_amalgamated.hpp>

#include <random>

#include "hyperchaos/constructors.hpp"
#include "hyperchaos/criteria.hpp"
#include "support/generators.hpp"

using namespace hyperchaos;

namespace {

const PLMap kTent = build_tent();
const PLMap kIdentity = build_identity();
const PLMap kFlip({{0, 1}, {1, 0}});
// Two expanding intervals fixed at the shared point 1/2.
const PLMap kDoubleTent({{0, Rational(1, 2)}, {Rational(1, 4), 0}, {Rational(1, 2), Rational(1, 2)},
                         {Rational(3, 4), 1}, {1, Rational(1, 2)}});
// One transitive interval whose halves are exactly swapped.
const PLMap kTwoHump({{0, Rational(1, 2)}, {Rational(1, 4), 1}, {Rational(1, 2), Rational(1, 2)},
                      {Rational(3, 4), 0}, {1, Rational(1, 2)}});

CriteriaParams quick_params(Rational eps) {
    CriteriaParams p;
    p.eps = std::move(eps);
    p.horizon = 256;
    p.interval_grid = 32;
    return p;
}

void assert_wiring(const ChaosVerdict& v) {
    if (v.generic_eps.pass()) {
        REQUIRE(v.generic.pass());
        REQUIRE(v.dense_eps.pass());
    }
    if (v.dense_eps.pass()) REQUIRE(v.dense.pass());
    if (v.dense.fail()) {
        REQUIRE(v.generic.fail());
        REQUIRE(v.generic_eps.fail());
        REQUIRE(v.dense_eps.fail());
    }
}

}  // namespace

TEST_CASE("interval orbits detect exact cycles") {
    const IntervalOrbit o = iterate_orbit(kTent, Interval(0, Rational(1, 8)), 64);
    REQUIRE(o.exact());
    REQUIRE(o.seq[*o.cycle_start] == Interval::unit());
    REQUIRE(o.cycle_hull() == Interval::unit());

    const IntervalOrbit fixed = iterate_orbit(kIdentity, Interval(0, Rational(1, 4)), 64);
    REQUIRE(fixed.exact());
    REQUIRE(fixed.seq.size() == 1);

    const DiamSummary d = diam_summary(o);
    REQUIRE(d.exact);
    REQUIRE(d.limsup == Rational(1));
}

TEST_CASE("condition f1") {
    // Both intervals map onto [0,1/4] after one step, so the first witness is 1.
    const F1Result close =
        check_f1(kTent, Interval(0, Rational(1, 8)), Interval(Rational(7, 8), 1), 64, dyadic(20));
    REQUIRE(close.result.pass());
    REQUIRE(close.witness);
    REQUIRE(*close.witness == 1);

    const F1Result same = check_f1(kTent, Interval(0, Rational(1, 8)), Interval(0, Rational(1, 8)),
                                   64, dyadic(20));
    REQUIRE(same.result.pass());
    REQUIRE(*same.witness == 0);

    // Disjoint invariant intervals are a finite distal certificate.
    const F1Result apart = check_f1(kIdentity, Interval(0, Rational(1, 4)),
                                    Interval(Rational(1, 2), 1), 64, dyadic(20));
    REQUIRE(apart.result.fail());
    REQUIRE(apart.result.certified);

    // The involution cycles with period two and constant positive distance.
    const F1Result flip = check_f1(kFlip, Interval(0, Rational(1, 4)),
                                   Interval(Rational(1, 2), 1), 64, dyadic(20));
    REQUIRE(flip.result.fail());
    REQUIRE(flip.result.certified);

    REQUIRE_THROWS_AS(
        check_f1(kTent, Interval::point(Rational(1, 2)), Interval::unit(), 8, dyadic(20)),
        std::domain_error);
}

TEST_CASE("f1 passes stay passes at larger horizons") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        const Interval j1 = testgen::random_interval(rng, true);
        const Interval j2 = testgen::random_interval(rng, true);
        const F1Result small = check_f1(kTent, j1, j2, 32, dyadic(20));
        if (small.result.pass()) {
            const F1Result large = check_f1(kTent, j1, j2, 256, dyadic(20));
            REQUIRE(large.result.pass());
            REQUIRE(*large.witness == *small.witness);
        }
    }
}

TEST_CASE("diameter growth statistics") {
    const OrbitStats tent_small = check_diam_growth(kTent, Interval(0, dyadic(10)), 64);
    REQUIRE(tent_small.tail_max == Rational(1));

    const OrbitStats ident = check_diam_growth(kIdentity, Interval(0, Rational(1, 4)), 64);
    REQUIRE(ident.tail_min == Rational(1, 4));
    REQUIRE(ident.tail_max == Rational(1, 4));

    const OrbitStats accordion =
        check_diam_growth(build_snoha_example(0), Interval(0, Rational(1, 4)), 64);
    REQUIRE(accordion.tail_max == Rational(1));
    REQUIRE_THROWS_AS(check_diam_growth(kTent, Interval::point(Rational(0)), 64),
                      std::domain_error);
}

TEST_CASE("condition g1") {
    // Images of any nondegenerate interval eventually cover [0,1], which
    // contains the fixed point exactly.
    const ConditionResult pass =
        check_g1(kTent, Rational(2, 3), Interval(Rational(1, 8), Rational(1, 4)), 64, dyadic(20));
    REQUIRE(pass.pass());
    REQUIRE(pass.certified);

    const ConditionResult fail =
        check_g1(kIdentity, Rational(0), Interval(Rational(1, 2), Rational(3, 4)), 64, dyadic(20));
    REQUIRE(fail.fail());
    REQUIRE(fail.certified);

    REQUIRE_THROWS_AS(check_g1(kTent, Rational(1, 2), Interval::unit(), 8, dyadic(20)),
                      std::domain_error);
}

TEST_CASE("covering transitivity") {
    const ConditionResult tent = check_covering_transitivity(kTent, Interval::unit(), 5, 64);
    REQUIRE(tent.pass());

    const ConditionResult ident = check_covering_transitivity(kIdentity, Interval::unit(), 5, 64);
    REQUIRE(ident.fail());
    REQUIRE(ident.certified);

    // The identity tail of a finite accordion stage never expands.
    const PLMap f3 = build_snoha_example(3);
    const Interval tail(Rational(80, 81), 1);
    const ConditionResult still = check_covering_transitivity(f3, tail, 5, 64);
    REQUIRE(still.fail());

    REQUIRE_THROWS_AS(
        check_covering_transitivity(kTent, Interval(0, Rational(1, 4)), 5, 64),
        std::domain_error);  // not invariant
}

TEST_CASE("invariant transitive intervals") {
    CriteriaParams p = quick_params(Rational(1, 2));

    const TransitiveIntervalReport tent = find_invariant_transitive_intervals(kTent, p);
    REQUIRE(tent.transitive_intervals() == std::vector<Interval>{Interval::unit()});
    REQUIRE(tent.h1_satisfied());
    REQUIRE(tent.entries.size() == 1);
    REQUIRE(tent.entries[0].dichotomy == Dichotomy::all_powers_transitive);

    const TransitiveIntervalReport ident = find_invariant_transitive_intervals(kIdentity, p);
    REQUIRE(ident.transitive_intervals().empty());
    REQUIRE(!ident.h1_satisfied());

    // The involution has the exact swap structure but its halves are not
    // transitive under the square (the identity).
    const TransitiveIntervalReport flip = find_invariant_transitive_intervals(kFlip, p);
    bool found_swap = false;
    for (const auto& e : flip.entries) {
        if (e.t == Interval::unit()) {
            REQUIRE(e.dichotomy == Dichotomy::two_swapped_halves);
            REQUIRE(*e.swap_point == Rational(1, 2));
            REQUIRE(!e.transitive);
            found_swap = true;
        }
    }
    REQUIRE(found_swap);
    REQUIRE(flip.transitive_intervals().empty());

    const TransitiveIntervalReport hump = find_invariant_transitive_intervals(kTwoHump, p);
    REQUIRE(hump.transitive_intervals() == std::vector<Interval>{Interval::unit()});
    REQUIRE(hump.entries.size() == 1);
    REQUIRE(hump.entries[0].dichotomy == Dichotomy::two_swapped_halves);
    REQUIRE(*hump.entries[0].swap_point == Rational(1, 2));
    REQUIRE(hump.entries[0].transitive);

    const TransitiveIntervalReport dbl = find_invariant_transitive_intervals(kDoubleTent, p);
    const auto ts = dbl.transitive_intervals();
    REQUIRE(ts.size() == 2);
    REQUIRE(ts[0] == Interval(0, Rational(1, 2)));
    REQUIRE(ts[1] == Interval(Rational(1, 2), 1));
    REQUIRE(dbl.h1_satisfied());
}

TEST_CASE("swap dichotomy is sound") {
    CriteriaParams p = quick_params(Rational(1, 2));
    for (const PLMap* m : {&kFlip, &kTwoHump}) {
        const TransitiveIntervalReport rep = find_invariant_transitive_intervals(*m, p);
        for (const auto& e : rep.entries) {
            if (e.dichotomy != Dichotomy::two_swapped_halves) continue;
            const Rational& y = *e.swap_point;
            REQUIRE(m->eval(y) == y);
            REQUIRE(m->image(Interval(e.t.lo(), y)) == Interval(y, e.t.hi()));
            REQUIRE(m->image(Interval(y, e.t.hi())) == Interval(e.t.lo(), y));
        }
    }
}

TEST_CASE("merge pair construction") {
    const auto mp = find_merge_pair_in(kTent, Interval(Rational(1, 8), Rational(3, 8)),
                                       Rational(1, 2), 64);
    REQUIRE(mp);
    REQUIRE(mp->separation > Rational(1, 2));
    REQUIRE(!(mp->s == mp->p));
    const auto orbit_s = kTent.iterate_point(mp->s, mp->merge_step + 4);
    const auto orbit_p = kTent.iterate_point(mp->p, mp->merge_step + 4);
    REQUIRE(abs(orbit_s[mp->sep_step] - orbit_p[mp->sep_step]) == mp->separation);
    for (std::size_t t = mp->merge_step; t < orbit_s.size(); ++t)
        REQUIRE(orbit_s[t] == orbit_p[t]);

    // No folds, no merge pairs.
    REQUIRE(!find_merge_pair_in(kIdentity, Interval(0, Rational(1, 2)), dyadic(20), 64));
    REQUIRE(!find_merge_pair_in(kFlip, Interval(0, Rational(1, 2)), dyadic(20), 64));
}

TEST_CASE("tent map classifies as chaotic in all four senses") {
    CriteriaParams p;
    p.eps = Rational(1, 2);
    const ChaosVerdict v = classify_chaos(kTent, p);
    REQUIRE(v.generic.pass());
    REQUIRE(v.generic_eps.pass());
    REQUIRE(v.dense.pass());
    REQUIRE(v.dense_eps.pass());
    REQUIRE(!v.dense_eps.certified);  // grid evidence stays sampled
    REQUIRE(v.eps_estimate);
    REQUIRE(*v.eps_estimate >= Rational(1, 2));
    REQUIRE(v.th2_fixed_point);
    assert_wiring(v);
}

TEST_CASE("identity and the involution fail everything") {
    for (const PLMap* m : {&kIdentity, &kFlip}) {
        const ChaosVerdict v = classify_chaos(*m, quick_params(Rational(1, 2)));
        REQUIRE(v.generic.fail());
        REQUIRE(v.generic_eps.fail());
        REQUIRE(v.dense.fail());
        REQUIRE(v.dense_eps.fail());
        assert_wiring(v);
    }
}

TEST_CASE("double tent passes through the two-interval route") {
    const ChaosVerdict v = classify_chaos(kDoubleTent, quick_params(Rational(1, 4)));
    REQUIRE(v.dense.pass());
    REQUIRE(v.dense_eps.pass());
    REQUIRE(v.generic.pass());
    REQUIRE(*v.th2_fixed_point == Rational(1, 2));
    assert_wiring(v);
}

TEST_CASE("accordion stage six: densely but not densely-eps chaotic") {
    CriteriaParams p;
    p.eps = Rational(1, 9);
    const ChaosVerdict v = classify_chaos(build_snoha_example(6), p);
    REQUIRE(v.dense.pass());
    REQUIRE(!v.dense.certified);
    REQUIRE(v.dense_eps.fail());
    REQUIRE(v.dense_eps.certified);  // exact cycle with small diameter
    REQUIRE(v.generic.fail());
    REQUIRE(v.generic_eps.fail());
    REQUIRE(v.witness_box);
    REQUIRE(v.witness_box->first.lo() >= Rational(8, 9));
    assert_wiring(v);
}

TEST_CASE("classifier handles maps with flat pieces and attracting regions") {
    // Flat-top trapezoid: the plateau collapses every interval that reaches it
    // onto a single point, so the diameter conditions certify failure.
    const PLMap trapezoid({{0, 0}, {Rational(1, 4), 1}, {Rational(3, 4), 1}, {1, 0}});
    const ChaosVerdict vt = classify_chaos(trapezoid, quick_params(Rational(1, 4)));
    REQUIRE(vt.generic.fail());
    REQUIRE(vt.dense.fail());
    REQUIRE(vt.dense_eps.fail());
    REQUIRE(vt.dense_eps.certified);
    assert_wiring(vt);

    // Chaotic core with a constant tail absorbing everything into one point:
    // intervals in the tail collapse, so the diameter conditions certify failure.
    const PLMap collapsed({{0, 0}, {Rational(1, 4), Rational(1, 2)}, {Rational(1, 2), 0}, {1, 0}});
    const ChaosVerdict vc = classify_chaos(collapsed, quick_params(Rational(1, 4)));
    REQUIRE(vc.dense.fail());
    REQUIRE(vc.dense_eps.fail());
    REQUIRE(vc.dense_eps.certified);
    assert_wiring(vc);

    // Constant map: every orbit lands on the fixed point immediately.
    const PLMap constant({{0, Rational(1, 2)}, {1, Rational(1, 2)}});
    const ChaosVerdict vk = classify_chaos(constant, quick_params(Rational(1, 4)));
    REQUIRE(vk.generic.fail());
    REQUIRE(vk.dense.fail());
    assert_wiring(vk);
}

TEST_CASE("classifier and constructors survive random maps") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 8; ++trial) {
        const PLMap m = testgen::random_map(rng, 8);
        // Random slopes make orbit denominators grow quickly, so keep the
        // windows and scan resolution small here.
        CriteriaParams p;
        p.eps = Rational(1, 4);
        p.horizon = 96;
        p.interval_grid = 8;
        p.pair_grid = 4;
        p.scan_grid = 2;
        p.radii = {Rational(1, 8)};
        ChaosVerdict v;
        REQUIRE_NOTHROW(v = classify_chaos(m, p));
        assert_wiring(v);
        const VietorisBox bu({OpenInterval(Rational(1, 16), Rational(5, 16))});
        const VietorisBox bv({OpenInterval(Rational(11, 16), Rational(15, 16))});
        REQUIRE_NOTHROW(construct_hyper_ly_pair(m, bu, bv, p));
        REQUIRE_NOTHROW(construct_hyper_eps_ly_pair(m, bu, bv, Rational(1, 4), p));
    }
}

TEST_CASE("square map consistency of orbit statistics") {
    std::mt19937_64 rng(271828);
    const PLMap square = compose(kTent, kTent);
    const Rational modulus = max(Rational(1), kTent.max_abs_slope());
    for (int trial = 0; trial < 50; ++trial) {
        const CompactSet a = testgen::random_set(rng);
        const CompactSet b = testgen::random_set(rng);
        const OrbitStats under_f = hausdorff_orbit_stats(kTent, a, b, 128, 64);
        const OrbitStats under_g = hausdorff_orbit_stats(square, a, b, 64, 32);
        for (std::size_t i = 0; i < under_g.values.size(); ++i)
            REQUIRE(under_g.values[i] == under_f.values[2 * i]);
        REQUIRE(under_f.tail_min <= under_g.tail_min);
        REQUIRE(under_g.tail_min <= modulus * under_f.tail_min);
    }
}
