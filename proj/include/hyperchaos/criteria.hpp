#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperchaos/compact_set.hpp"
#include "hyperchaos/hyperspace.hpp"
#include "hyperchaos/interval.hpp"
#include "hyperchaos/orbit_stats.hpp"
#include "hyperchaos/pair_class.hpp"
#include "hyperchaos/pl_map.hpp"
#include "hyperchaos/rational.hpp"

namespace hyperchaos {

/// Verdict of a condition that quantifies over infinite time or over all
/// intervals. "fail" is only emitted with a finite certificate (an exact
/// interval-orbit cycle, invariant traps, or exact constancy) or, where noted,
/// from sampled evidence; "certified" distinguishes the two.
enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct ConditionResult {
    Verdict verdict = Verdict::inconclusive;
    bool certified = false;
    std::string detail;

    bool pass() const { return verdict == Verdict::pass; }
    bool fail() const { return verdict == Verdict::fail; }
    std::string status() const {
        std::string s = to_string(verdict);
        if (!certified && verdict != Verdict::inconclusive) s += " (sampled)";
        return s;
    }
};

struct CriteriaParams {
    std::size_t horizon = 512;
    Rational tol_low = dyadic(20);
    Rational eps;                       // the epsilon the verdicts are tested at
    std::size_t interval_grid = 64;     // cells for diameter conditions (f-2)/(g-2)/th2(b)
    std::size_t pair_grid = 8;          // cells for (f-1) pairs and (h-2)
    std::size_t covering_grid = 5;      // covering test partitions into 2^covering_grid cells
    std::size_t covering_horizon = 64;
    std::size_t scan_grid = 4;          // pair scan resolution inside th2(c) neighborhoods
    std::vector<Rational> radii = {Rational(1, 8), Rational(1, 32), Rational(1, 128)};

    void validate_eps() const {
        if (!(Rational(0) < tol_low && tol_low < eps))
            throw std::domain_error("CriteriaParams: need 0 < tol_low < eps");
    }
};

// ---------------------------------------------------------------------------
// Exact interval-orbit analysis. PL images of intervals very often repeat
// exactly; a repeat certifies all later behavior, turning liminf/limsup over
// infinite time into finite computations.
// ---------------------------------------------------------------------------

struct IntervalOrbit {
    std::vector<Interval> seq;               // seq[0] is the input interval
    std::optional<std::size_t> cycle_start;  // image(seq.back()) == seq[*cycle_start]

    bool exact() const { return cycle_start.has_value(); }
    std::size_t steps() const { return seq.size() - 1; }

    /// Hull of the recurring part (only meaningful when exact()).
    Interval cycle_hull() const {
        Interval h = seq[*cycle_start];
        for (std::size_t i = *cycle_start + 1; i < seq.size(); ++i) h = h.hull(seq[i]);
        return h;
    }
};

inline IntervalOrbit iterate_orbit(const PLMap& m, const Interval& j, std::size_t horizon) {
    IntervalOrbit o;
    std::map<Interval, std::size_t> seen;
    o.seq.push_back(j);
    seen.emplace(j, 0);
    for (std::size_t t = 1; t <= horizon; ++t) {
        Interval next = m.image(o.seq.back());
        if (auto it = seen.find(next); it != seen.end()) {
            o.cycle_start = it->second;
            return o;
        }
        seen.emplace(next, t);
        o.seq.push_back(std::move(next));
    }
    return o;
}

/// liminf/limsup of diam f^n(J): exact over the cycle when one was found,
/// tail-window proxies otherwise.
struct DiamSummary {
    bool exact = false;
    Rational liminf;
    Rational limsup;
};

inline DiamSummary diam_summary(const IntervalOrbit& o) {
    DiamSummary s;
    std::size_t from = o.exact() ? *o.cycle_start : o.seq.size() / 2;
    s.exact = o.exact();
    s.liminf = o.seq[from].diameter();
    s.limsup = s.liminf;
    for (std::size_t i = from + 1; i < o.seq.size(); ++i) {
        const Rational d = o.seq[i].diameter();
        s.liminf = min(s.liminf, d);
        s.limsup = max(s.limsup, d);
    }
    return s;
}

/// Diameters of the interval orbit, packaged as orbit statistics.
inline OrbitStats check_diam_growth(const PLMap& m, const Interval& j, std::size_t horizon,
                                    std::size_t tail_start) {
    if (j.is_point()) throw std::domain_error("check_diam_growth: interval must be nondegenerate");
    std::vector<Rational> diams;
    diams.reserve(horizon + 1);
    for (const auto& it : m.iterate_interval(j, horizon)) diams.push_back(it.diameter());
    return OrbitStats::from(std::move(diams), tail_start);
}

inline OrbitStats check_diam_growth(const PLMap& m, const Interval& j, std::size_t horizon) {
    return check_diam_growth(m, j, horizon, horizon / 2);
}

// ---------------------------------------------------------------------------
// Condition (f-1): liminf dist(f^n(J1), f^n(J2)) = 0.
// ---------------------------------------------------------------------------

struct F1Result {
    ConditionResult result;
    std::optional<std::size_t> witness;  // first n with dist <= tol_low
};

inline F1Result check_f1(const PLMap& m, const Interval& j1, const Interval& j2,
                         std::size_t horizon, const Rational& tol_low) {
    if (j1.is_point() || j2.is_point())
        throw std::domain_error("check_f1: intervals must be nondegenerate");
    std::map<std::pair<Interval, Interval>, std::size_t> seen;
    std::vector<std::pair<Interval, Interval>> seq{{j1, j2}};
    seen.emplace(seq.back(), 0);
    std::optional<std::size_t> cycle_start;
    for (std::size_t t = 1; t <= horizon; ++t) {
        std::pair<Interval, Interval> next{m.image(seq.back().first), m.image(seq.back().second)};
        if (auto it = seen.find(next); it != seen.end()) {
            cycle_start = it->second;
            break;
        }
        seen.emplace(next, t);
        seq.push_back(std::move(next));
    }

    F1Result r;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        if (dist(seq[n].first, seq[n].second) <= tol_low) {
            r.witness = n;
            break;
        }
    }
    if (cycle_start) {
        Rational liminf = dist(seq[*cycle_start].first, seq[*cycle_start].second);
        for (std::size_t i = *cycle_start + 1; i < seq.size(); ++i)
            liminf = min(liminf, dist(seq[i].first, seq[i].second));
        if (liminf <= tol_low) {
            if (!r.witness) {
                for (std::size_t n = *cycle_start; n < seq.size(); ++n)
                    if (dist(seq[n].first, seq[n].second) <= tol_low) { r.witness = n; break; }
            }
            r.result = {Verdict::pass, true,
                        "orbit pair cycles with liminf dist = " + liminf.str()};
        } else {
            // Distal certificate: the exact cycle keeps the orbits apart, and
            // the cycle hulls are two invariant intervals absorbing them.
            Interval h1 = seq[*cycle_start].first, h2 = seq[*cycle_start].second;
            for (std::size_t i = *cycle_start + 1; i < seq.size(); ++i) {
                h1 = h1.hull(seq[i].first);
                h2 = h2.hull(seq[i].second);
            }
            r.result = {Verdict::fail, true,
                        "orbit pair cycles with dist >= " + liminf.str() + "; absorbing hulls " +
                            h1.str() + " and " + h2.str()};
        }
    } else if (r.witness) {
        r.result = {Verdict::pass, false,
                    "dist <= tol at n = " + std::to_string(*r.witness) + " (no cycle found)"};
    } else {
        r.result = {Verdict::inconclusive, false, "no close approach and no cycle within horizon"};
    }
    return r;
}

// ---------------------------------------------------------------------------
// Condition (g-1) / th2(a): lim dist(f^n(J), x0) = 0 for a fixed point x0.
// ---------------------------------------------------------------------------

inline ConditionResult g1_from_orbit(const IntervalOrbit& o, const Rational& x0,
                                     const Rational& tol_low) {
    if (o.exact()) {
        Rational lim_max = dist(x0, o.seq[*o.cycle_start]);
        for (std::size_t i = *o.cycle_start + 1; i < o.seq.size(); ++i)
            lim_max = max(lim_max, dist(x0, o.seq[i]));
        if (lim_max.is_zero())
            return {Verdict::pass, true, "cycle keeps dist(f^n(J), x0) = 0"};
        return {Verdict::fail, true, "cycle keeps limsup dist = " + lim_max.str()};
    }
    const std::size_t tail = o.seq.size() / 2;
    bool all_small = true, nondecreasing = true;
    Rational tail_min = dist(x0, o.seq[tail]);
    for (std::size_t i = tail; i < o.seq.size(); ++i) {
        const Rational d = dist(x0, o.seq[i]);
        if (d > tol_low) all_small = false;
        if (i > tail && d < dist(x0, o.seq[i - 1])) nondecreasing = false;
        tail_min = min(tail_min, d);
    }
    if (all_small) return {Verdict::pass, false, "tail distances all <= tol"};
    if (tail_min > tol_low && nondecreasing)
        return {Verdict::fail, false, "tail distance >= " + tail_min.str() + " and non-decreasing"};
    return {Verdict::inconclusive, false, "tail neither settles near x0 nor certifiably escapes"};
}

inline ConditionResult check_g1(const PLMap& m, const Rational& x0, const Interval& j,
                                std::size_t horizon, const Rational& tol_low) {
    if (!(m.eval(x0) == x0)) throw std::domain_error("check_g1: x0 is not a fixed point");
    return g1_from_orbit(iterate_orbit(m, j, horizon), x0, tol_low);
}

// ---------------------------------------------------------------------------
// Covering transitivity (the f^2-transitivity test): every dyadic subinterval
// of t must eventually contain the central core of t in all later images.
// ---------------------------------------------------------------------------

inline ConditionResult check_covering_transitivity(const PLMap& m, const Interval& t,
                                                   std::size_t grid, std::size_t horizon) {
    if (t.is_point()) throw std::domain_error("check_covering_transitivity: degenerate interval");
    if (!t.contains(m.image(t)))
        throw std::domain_error("check_covering_transitivity: interval is not invariant");
    const Rational d = t.diameter();
    const Interval core(t.lo() + d / 20, t.hi() - d / 20);
    const std::size_t cells = std::size_t(1) << grid;
    const Rational w = d / Rational(static_cast<long>(cells));

    bool all_certified = true;
    for (std::size_t k = 0; k < cells; ++k) {
        const Interval j(t.lo() + w * Rational(static_cast<long>(k)),
                         t.lo() + w * Rational(static_cast<long>(k + 1)));
        const IntervalOrbit o = iterate_orbit(m, j, horizon);
        // covered_from: first index after which every observed image contains the core.
        std::size_t covered_from = o.seq.size();
        for (std::size_t i = o.seq.size(); i-- > 0;) {
            if (o.seq[i].contains(core)) covered_from = i;
            else break;
        }
        if (o.exact()) {
            bool cycle_covered = true;
            for (std::size_t i = *o.cycle_start; i < o.seq.size(); ++i)
                if (!o.seq[i].contains(core)) { cycle_covered = false; break; }
            if (!cycle_covered)
                return {Verdict::fail, true,
                        "subinterval " + j.str() + " cycles without covering the core"};
            if (covered_from >= o.seq.size())
                return {Verdict::fail, true,
                        "subinterval " + j.str() + " cycle covers but transient never does"};
        } else {
            if (covered_from >= o.seq.size())
                return {Verdict::inconclusive, false,
                        "subinterval " + j.str() + " does not stabilize within horizon"};
            all_certified = false;
        }
    }
    return {Verdict::pass, false, "all " + std::to_string(cells) +
                                      " subintervals eventually keep covering the core" +
                                      (all_certified ? " (each with an exact cycle)" : "")};
}

// ---------------------------------------------------------------------------
// Invariant transitive intervals and the transitivity dichotomy.
// ---------------------------------------------------------------------------

enum class Dichotomy { all_powers_transitive, two_swapped_halves, not_established };

inline const char* to_string(Dichotomy d) {
    switch (d) {
        case Dichotomy::all_powers_transitive: return "all-powers-transitive";
        case Dichotomy::two_swapped_halves: return "two-swapped-halves";
        case Dichotomy::not_established: return "not-established";
    }
    return "?";
}

struct TransitiveEntry {
    Interval t;
    Dichotomy dichotomy = Dichotomy::not_established;
    std::optional<Rational> swap_point;
    bool transitive = false;  // established transitivity of the restriction
    std::string evidence;
};

struct TransitiveIntervalReport {
    std::vector<TransitiveEntry> entries;  // every invariant candidate that was examined
    std::vector<std::string> log;

    std::vector<Interval> transitive_intervals() const {
        std::vector<Interval> out;
        for (const auto& e : entries)
            if (e.transitive) out.push_back(e.t);
        return out;
    }

    /// th1 (h-1): a unique invariant transitive interval, or exactly two
    /// sharing a single endpoint.
    bool h1_satisfied() const {
        const auto ts = transitive_intervals();
        if (ts.size() == 1) return true;
        if (ts.size() == 2) {
            const Interval &a = ts[0], &b = ts[1];
            return a.hi() == b.lo() || b.hi() == a.lo();
        }
        return false;
    }
};

namespace detail {

inline std::vector<Rational> fixed_point_candidates(const PLMap& m) {
    std::vector<Rational> xs;
    const CompactSet fixed = m.fixed_points();
    for (const auto& part : fixed.parts()) {
        xs.push_back(part.lo());
        if (!part.is_point()) {
            xs.push_back(part.midpoint());
            xs.push_back(part.hi());
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

/// Smallest invariant interval obtained by growing a seed under x -> hull(x, f(x)).
inline std::optional<Interval> grown_invariant_hull(const PLMap& m, Interval h,
                                                    std::size_t max_steps = 64) {
    for (std::size_t i = 0; i < max_steps; ++i) {
        const Interval img = m.image(h);
        if (h.contains(img)) return h;
        h = h.hull(img);
    }
    return std::nullopt;
}

}  // namespace detail

inline TransitiveIntervalReport find_invariant_transitive_intervals(const PLMap& m,
                                                                    const CriteriaParams& params) {
    TransitiveIntervalReport report;

    std::set<Interval> candidates;
    const auto consider = [&](const Interval& t) {
        if (!t.is_point() && t.contains(m.image(t))) candidates.insert(t);
    };
    consider(Interval::unit());
    const std::size_t g = params.pair_grid;
    for (std::size_t k = 0; k < g; ++k) {
        const Interval j(Rational(static_cast<long>(k), static_cast<long>(g)),
                         Rational(static_cast<long>(k + 1), static_cast<long>(g)));
        const IntervalOrbit o = iterate_orbit(m, j, params.horizon);
        if (o.exact()) consider(o.cycle_hull());
    }
    const Rational seed_radius(1, 64);
    for (const auto& p : detail::fixed_point_candidates(m)) {
        const Interval seed(max(Rational(0), p - seed_radius), min(Rational(1), p + seed_radius));
        if (seed.is_point()) continue;
        if (auto h = detail::grown_invariant_hull(m, seed)) consider(*h);
    }

    for (const auto& t : candidates) {
        TransitiveEntry entry;
        entry.t = t;
        const ConditionResult covering =
            check_covering_transitivity(m, t, params.covering_grid, params.covering_horizon);
        if (covering.pass()) {
            entry.dichotomy = Dichotomy::all_powers_transitive;
            entry.transitive = true;
            entry.evidence = "covering test: " + covering.detail;
        } else {
            // Look for the exact swap structure around an interior fixed point.
            for (const auto& y : detail::fixed_point_candidates(m)) {
                if (!(t.lo() < y && y < t.hi())) continue;
                const Interval left(t.lo(), y), right(y, t.hi());
                if (m.image(left) == right && m.image(right) == left) {
                    entry.dichotomy = Dichotomy::two_swapped_halves;
                    entry.swap_point = y;
                    const PLMap square = compose(m, m);
                    const ConditionResult covl = check_covering_transitivity(
                        square, left, params.covering_grid, params.covering_horizon);
                    const ConditionResult covr = check_covering_transitivity(
                        square, right, params.covering_grid, params.covering_horizon);
                    entry.transitive = covl.pass() && covr.pass();
                    entry.evidence = "exact swap at " + y.str() + "; halves under f^2: " +
                                     covl.status() + " / " + covr.status();
                    break;
                }
            }
            if (entry.dichotomy == Dichotomy::not_established)
                entry.evidence = "covering test: " + covering.status() + " - " + covering.detail;
        }
        report.log.push_back("candidate " + t.str() + ": " + to_string(entry.dichotomy) +
                             (entry.transitive ? " (transitive)" : ""));
        report.entries.push_back(std::move(entry));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Constructive merge pairs. Exact rational samples can witness liminf 0 only
// by merging exactly; a fold of the map supplies two points with equal image
// and controlled separation, and exact preimage pullback plants them inside
// any target interval. This is the f^{-k} device the hyperspace pair
// constructions are built from.
// ---------------------------------------------------------------------------

struct MergePair {
    Rational s, p;          // distinct points whose orbits coincide from merge_step on
    std::size_t sep_step;   // |f^t(s) - f^t(p)| == separation at t = sep_step
    Rational separation;
    std::size_t merge_step;
};

namespace detail {

/// Backward chain along a stored forward interval orbit: returns w in orbit[0]
/// with f^t(w) = z, choosing the leftmost preimage at every step.
inline Rational pull_back(const PLMap& m, Rational z, const std::vector<Interval>& orbit,
                          std::size_t t) {
    for (std::size_t j = t; j-- > 0;) {
        auto w = m.preimage_in(z, orbit[j]);
        if (!w) throw std::logic_error("pull_back: preimage chain broken");
        z = *w;
    }
    return z;
}

struct Fold {
    Rational z1, z2, sep;
};

/// Widest pair z1 < c < z2 inside w with f(z1) = f(z2), folded over an
/// interior extremum node c of the map.
inline std::optional<Fold> best_fold(const PLMap& m, const Interval& w) {
    std::optional<Fold> best;
    const auto& nodes = m.nodes();
    for (std::size_t k = 1; k + 1 < nodes.size(); ++k) {
        const Rational& c = nodes[k].x;
        if (!(w.lo() < c && c < w.hi())) continue;
        const Rational sl = m.slope(k - 1), sr = m.slope(k);
        if (sl.sign() == 0 || sr.sign() == 0 || sl.sign() == sr.sign()) continue;
        const Rational d1_room = min(c - nodes[k - 1].x, c - w.lo());
        const Rational d2_room = min(nodes[k + 1].x - c, w.hi() - c);
        const Rational lambda = -(sl / sr);  // d2 = lambda * d1 keeps the images equal
        const Rational d1 = min(d1_room, d2_room / lambda);
        if (d1.sign() <= 0) continue;
        const Rational d2 = lambda * d1;
        Fold f{c - d1, c + d2, d1 + d2};
        if (!best || f.sep > best->sep) best = std::move(f);
    }
    return best;
}

}  // namespace detail

/// Finds s, p in S with separation > min_sep at some step and exactly equal
/// orbits afterwards. Deterministic; returns nullopt once the interval orbit
/// starts repeating without having offered a wide enough fold.
inline std::optional<MergePair> find_merge_pair_in(const PLMap& m, const Interval& S,
                                                   const Rational& min_sep, std::size_t horizon) {
    if (S.is_point()) return std::nullopt;
    std::vector<Interval> orbit{S};
    std::set<Interval> seen{S};
    for (std::size_t t = 0; t <= horizon; ++t) {
        if (auto fold = detail::best_fold(m, orbit[t]); fold && fold->sep > min_sep) {
            MergePair mp;
            mp.s = detail::pull_back(m, fold->z1, orbit, t);
            mp.p = detail::pull_back(m, fold->z2, orbit, t);
            mp.sep_step = t;
            mp.separation = fold->sep;
            mp.merge_step = t + 1;
            return mp;
        }
        Interval next = m.image(orbit.back());
        if (!seen.insert(next).second) return std::nullopt;
        orbit.push_back(std::move(next));
    }
    return std::nullopt;
}

/// Same, with s drawn from A and p from B: both map to a common value v after
/// one more step. v is searched over dyadic quantiles of the image overlap.
inline std::optional<MergePair> find_merge_pair_across(const PLMap& m, const Interval& A,
                                                       const Interval& B, const Rational& min_sep,
                                                       std::size_t horizon) {
    std::vector<Interval> oa{A}, ob{B};
    std::set<std::pair<Interval, Interval>> seen{{A, B}};
    static const std::pair<long, long> quantiles[] = {{1, 2}, {1, 4}, {3, 4}, {1, 8},
                                                      {3, 8}, {5, 8}, {7, 8}, {0, 1}, {1, 1}};
    for (std::size_t t = 0; t <= horizon; ++t) {
        const Interval ia = m.image(oa[t]), ib = m.image(ob[t]);
        if (const auto overlap = ia.intersect(ib)) {
            std::optional<MergePair> best;
            for (const auto& [num, den] : quantiles) {
                const Rational v = overlap->lo() + overlap->diameter() * Rational(num, den);
                const auto z1l = m.preimage_in(v, oa[t], PLMap::PickSide::leftmost);
                const auto z1r = m.preimage_in(v, oa[t], PLMap::PickSide::rightmost);
                const auto z2l = m.preimage_in(v, ob[t], PLMap::PickSide::leftmost);
                const auto z2r = m.preimage_in(v, ob[t], PLMap::PickSide::rightmost);
                for (const auto& z1 : {z1l, z1r}) {
                    for (const auto& z2 : {z2l, z2r}) {
                        if (!z1 || !z2 || *z1 == *z2) continue;
                        const Rational sep = abs(*z1 - *z2);
                        if (sep > min_sep && (!best || sep > best->separation)) {
                            MergePair mp;
                            mp.s = detail::pull_back(m, *z1, oa, t);
                            mp.p = detail::pull_back(m, *z2, ob, t);
                            mp.sep_step = t;
                            mp.separation = sep;
                            mp.merge_step = t + 1;
                            best = std::move(mp);
                        }
                    }
                }
                if (best) break;  // first quantile offering enough separation wins
            }
            if (best) return best;
        }
        if (!seen.insert({ia, ib}).second) return std::nullopt;
        oa.push_back(ia);
        ob.push_back(ib);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Aggregate chaos classification.
// ---------------------------------------------------------------------------

struct ChaosVerdict {
    Rational eps;
    Rational tol_low;
    std::size_t horizon = 0;
    ConditionResult generic;
    ConditionResult generic_eps;
    ConditionResult dense;
    ConditionResult dense_eps;
    std::optional<Rational> eps_estimate;  // largest dyadic 2^-k (k <= 10) below every limsup diam
    std::optional<std::pair<Interval, Interval>> witness_box;  // box refuting dense-eps
    std::map<std::string, ConditionResult> evidence;           // per executable condition
    std::optional<Rational> th2_fixed_point;
    TransitiveIntervalReport transitive_report;
};

namespace detail {

inline ConditionResult combine_all(const std::vector<ConditionResult>& rs, const std::string& what) {
    for (const auto& r : rs) {
        if (r.fail()) return {Verdict::fail, r.certified, what + ": " + r.detail};
    }
    for (const auto& r : rs) {
        if (r.verdict == Verdict::inconclusive) return {Verdict::inconclusive, false, what};
    }
    if (rs.empty()) return {Verdict::inconclusive, false, what};
    // A pass that quantifies over a grid of samples is never a proof.
    return {Verdict::pass, false, what};
}

/// th2(c) for one one-sided interval: scan first, then the constructive
/// merge-pair search. Blind sampling misses maps whose rational orbits never
/// merge by accident, while the fold construction finds the pair exactly.
inline ConditionResult th2c_on_interval(const PLMap& m, const Interval& u,
                                        const CriteriaParams& params) {
    PairParams pp{params.horizon, params.tol_low, max(params.eps, params.tol_low * 2), 0};
    const DensityReport scan = scan_pairs(m, u, u, params.scan_grid, pp);
    if (scan.count_li_yorke > 0)
        return {Verdict::pass, false, "scan found a Li-Yorke pair in " + u.str()};
    if (const auto mp = find_merge_pair_in(m, u, params.tol_low * 2, params.horizon)) {
        const PairVerdict v = classify_point_pair(m, mp->s, mp->p, pp);
        if (v.is_li_yorke())
            return {Verdict::pass, false,
                    "constructed pair (" + mp->s.str() + ", " + mp->p.str() + "), separation " +
                        mp->separation.str() + " at step " + std::to_string(mp->sep_step)};
    }
    return {Verdict::fail, false, "no Li-Yorke pair found in " + u.str()};
}

inline ConditionResult th2c_straddling(const PLMap& m, const Interval& left, const Interval& right,
                                       const CriteriaParams& params) {
    PairParams pp{params.horizon, params.tol_low, max(params.eps, params.tol_low * 2), 0};
    const DensityReport scan = scan_pairs(m, left, right, params.scan_grid, pp);
    if (scan.count_li_yorke > 0)
        return {Verdict::pass, false,
                "scan found a straddling Li-Yorke pair in " + left.str() + " x " + right.str()};
    if (const auto mp = find_merge_pair_across(m, left, right, params.tol_low * 2, params.horizon)) {
        const PairVerdict v = classify_point_pair(m, mp->s, mp->p, pp);
        if (v.is_li_yorke())
            return {Verdict::pass, false,
                    "constructed straddling pair (" + mp->s.str() + ", " + mp->p.str() + ")"};
    }
    return {Verdict::fail, false,
            "no straddling Li-Yorke pair in " + left.str() + " x " + right.str()};
}

inline ConditionResult check_th2c(const PLMap& m, const Rational& x0, const CriteriaParams& params) {
    std::vector<ConditionResult> results;
    for (const auto& r : params.radii) {
        const Rational left_room = x0, right_room = Rational(1) - x0;
        const bool interior = left_room.sign() > 0 && right_room.sign() > 0;
        if (right_room.sign() > 0) {
            const Rational re = min(r, right_room * Rational(7, 8));
            results.push_back(th2c_on_interval(m, Interval(x0 + re / 64, x0 + re), params));
        }
        if (left_room.sign() > 0) {
            const Rational re = min(r, left_room * Rational(7, 8));
            results.push_back(th2c_on_interval(m, Interval(x0 - re, x0 - re / 64), params));
        }
        if (interior) {
            const Rational rl = min(r, left_room * Rational(7, 8));
            const Rational rr = min(r, right_room * Rational(7, 8));
            results.push_back(th2c_straddling(m, Interval(x0 - rl, x0 - rl / 64),
                                              Interval(x0 + rr / 64, x0 + rr), params));
        }
    }
    // The quantifier ranges over all neighborhoods; sampled radii keep this
    // condition forever "(sampled)".
    ConditionResult combined = combine_all(results, "punctured neighborhoods of " + x0.str());
    combined.certified = false;
    return combined;
}

}  // namespace detail

inline ChaosVerdict classify_chaos(const PLMap& m, const CriteriaParams& params) {
    params.validate_eps();
    ChaosVerdict out;
    out.eps = params.eps;
    out.tol_low = params.tol_low;
    out.horizon = params.horizon;

    // Diameter conditions over the interval grid: (f-2) at eps, (g-2), th2(b).
    const std::size_t g = params.interval_grid;
    std::vector<DiamSummary> diam(g);
    std::vector<Interval> grid_cells;
    std::vector<IntervalOrbit> grid_orbits;
    grid_cells.reserve(g);
    grid_orbits.reserve(g);
    for (std::size_t k = 0; k < g; ++k) {
        grid_cells.emplace_back(Rational(static_cast<long>(k), static_cast<long>(g)),
                                Rational(static_cast<long>(k + 1), static_cast<long>(g)));
        grid_orbits.push_back(iterate_orbit(m, grid_cells.back(), params.horizon));
        diam[k] = diam_summary(grid_orbits.back());
    }

    std::size_t f2_argmin = 0, g2_argmin = 0;
    for (std::size_t k = 1; k < g; ++k) {
        if (diam[k].limsup < diam[f2_argmin].limsup) f2_argmin = k;
        if (diam[k].liminf < diam[g2_argmin].liminf) g2_argmin = k;
    }
    const Rational f2_floor = diam[f2_argmin].limsup;
    const Rational g2_floor = diam[g2_argmin].liminf;

    for (unsigned k = 0; k <= 10; ++k) {
        if (f2_floor > dyadic(k)) { out.eps_estimate = dyadic(k); break; }
    }

    ConditionResult f2;
    if (f2_floor > params.eps) {
        f2 = {Verdict::pass, false, "limsup diam > eps on every grid interval; floor " +
                                        f2_floor.str() + " at " + grid_cells[f2_argmin].str()};
    } else {
        f2 = {Verdict::fail, diam[f2_argmin].exact,
              "interval " + grid_cells[f2_argmin].str() + " has limsup diam " + f2_floor.str() +
                  " <= eps"};
        out.witness_box = {grid_cells[f2_argmin], grid_cells[f2_argmin]};
    }
    out.evidence["f2@eps"] = f2;

    ConditionResult g2;
    if (g2_floor.sign() > 0) {
        g2 = {Verdict::pass, false, "liminf diam floor " + g2_floor.str() + " > 0 (b estimate)"};
    } else {
        g2 = {Verdict::fail, diam[g2_argmin].exact,
              "interval " + grid_cells[g2_argmin].str() + " has liminf diam 0"};
    }
    out.evidence["g2"] = g2;
    out.evidence["th2b"] = g2;

    // (f-1) over the pair grid.
    const std::size_t pg = params.pair_grid;
    std::vector<Interval> pair_cells;
    for (std::size_t k = 0; k < pg; ++k)
        pair_cells.emplace_back(Rational(static_cast<long>(k), static_cast<long>(pg)),
                                Rational(static_cast<long>(k + 1), static_cast<long>(pg)));
    ConditionResult f1{Verdict::pass, false, "dist(f^n(J1), f^n(J2)) reaches tol for all grid pairs"};
    std::optional<std::pair<Interval, Interval>> f1_witness;
    for (std::size_t a = 0; a < pg && !f1.fail(); ++a) {
        for (std::size_t b = a; b < pg; ++b) {
            const F1Result r = check_f1(m, pair_cells[a], pair_cells[b], params.horizon, params.tol_low);
            if (r.result.fail()) {
                f1 = {Verdict::fail, r.result.certified,
                      "pair " + pair_cells[a].str() + " , " + pair_cells[b].str() + ": " +
                          r.result.detail};
                f1_witness = {pair_cells[a], pair_cells[b]};
                break;
            }
            if (r.result.verdict == Verdict::inconclusive) f1.verdict = Verdict::inconclusive;
        }
    }
    out.evidence["f1"] = f1;

    // (h): invariant transitive intervals and orbit visits.
    out.transitive_report = find_invariant_transitive_intervals(m, params);
    const auto transitive = out.transitive_report.transitive_intervals();
    ConditionResult h1 = out.transitive_report.h1_satisfied()
                             ? ConditionResult{Verdict::pass, false,
                                               std::to_string(transitive.size()) +
                                                   " invariant transitive interval(s)"}
                             : ConditionResult{Verdict::fail, false,
                                               "found " + std::to_string(transitive.size()) +
                                                   " transitive intervals among candidates"};
    out.evidence["h1"] = h1;

    ConditionResult h2;
    if (transitive.empty()) {
        h2 = {Verdict::fail, false, "no transitive interval for orbits to meet"};
    } else {
        std::vector<ConditionResult> per_j;
        for (std::size_t k = 0; k < pg; ++k) {
            const IntervalOrbit o = iterate_orbit(m, pair_cells[k], params.horizon);
            bool met = false;
            for (const auto& t : transitive) {
                for (const auto& img : o.seq) {
                    const Rational lo = max(img.lo(), t.lo());
                    const Rational hi = min(img.hi(), t.hi());
                    if (lo < hi || (lo == hi && t.lo() < lo && lo < t.hi())) { met = true; break; }
                }
                if (met) break;
            }
            if (met) per_j.push_back({Verdict::pass, true, ""});
            else if (o.exact())
                per_j.push_back({Verdict::fail, true,
                                 "orbit of " + pair_cells[k].str() + " cycles away from int(T)"});
            else
                per_j.push_back({Verdict::inconclusive, false, pair_cells[k].str()});
        }
        h2 = detail::combine_all(per_j, "orbit of every grid interval meets int(T)");
    }
    out.evidence["h2"] = h2;

    // th2(a) == (g-1): one fixed point must attract every grid interval's
    // orbit, and (c) is tied to that same point, so candidates passing (a)
    // are tried until one also passes (c).
    const auto x0s = detail::fixed_point_candidates(m);
    ConditionResult th2a{Verdict::fail, true, "no fixed point candidate works"};
    ConditionResult th2c{Verdict::fail, false, "skipped: th2(a) has no witness fixed point"};
    bool have_a = false;
    for (const auto& x0 : x0s) {
        std::vector<ConditionResult> per_j;
        per_j.reserve(g);
        for (std::size_t k = 0; k < g; ++k)
            per_j.push_back(g1_from_orbit(grid_orbits[k], x0, params.tol_low));
        const ConditionResult combined =
            detail::combine_all(per_j, "dist(f^n(J), " + x0.str() + ") -> 0 on the grid");
        if (combined.pass()) {
            if (!have_a) {  // remember the first attracting point either way
                th2a = combined;
                th2c = detail::check_th2c(m, x0, params);
                out.th2_fixed_point = x0;
                have_a = true;
            } else if (!th2c.pass()) {
                const ConditionResult retry = detail::check_th2c(m, x0, params);
                if (retry.pass()) {
                    th2a = combined;
                    th2c = retry;
                    out.th2_fixed_point = x0;
                }
            }
            if (th2c.pass()) break;
            continue;
        }
        if (!have_a) {
            th2a.certified = th2a.certified && combined.certified;
            th2a.detail =
                "every fixed point candidate fails some grid interval; last: " + combined.detail;
        }
    }
    out.evidence["g1"] = th2a;
    out.evidence["th2a"] = th2a;
    out.evidence["th2c"] = th2c;

    // Aggregation. dense-eps <=> (f-1) and (f-2 with a = eps) at the same eps;
    // generic-eps <=> dense-eps; dense <=> th2(a)+(b)+(c).
    out.dense_eps = detail::combine_all({f1, f2}, "(f-1) and (f-2) at eps = " + params.eps.str());
    out.generic_eps = out.dense_eps;
    out.generic_eps.detail = "wired to dense-eps at the same eps: " + out.dense_eps.detail;
    out.dense = detail::combine_all({th2a, g2, th2c}, "th2 (a), (b), (c)");

    // generic: an eps-free failure of (f-1) certifies failure outright; a
    // failure of (f-2) at the tested eps fails it at that eps only (smaller
    // eps are not probed), so such a verdict stays sampled.
    if (f1.fail()) {
        out.generic = {Verdict::fail, f1.certified, "C1(f) not dense: " + f1.detail};
    } else if (out.generic_eps.fail()) {
        out.generic = {Verdict::fail, false,
                       "generic-eps fails at tested eps = " + params.eps.str() + "; " +
                           out.generic_eps.detail};
    } else if (out.generic_eps.pass()) {
        out.generic = {Verdict::pass, false, "generic-eps passes at eps = " + params.eps.str()};
    } else {
        const ConditionResult via_g = detail::combine_all({th2a, g2}, "(g-1) and (g-2)");
        const ConditionResult via_h = detail::combine_all({h1, h2}, "(h-1) and (h-2)");
        if (via_g.fail() && via_g.certified) out.generic = via_g;
        else if (via_h.fail() && via_h.certified) out.generic = via_h;
        else out.generic = {Verdict::inconclusive, false, "no route decided generic chaos"};
    }

    // Consistency wiring: a dense failure drags down all four.
    if (out.dense.fail()) {
        const std::string why = "dense fails: " + out.dense.detail;
        if (!out.generic.fail()) out.generic = {Verdict::fail, out.dense.certified, why};
        if (!out.generic_eps.fail()) out.generic_eps = {Verdict::fail, out.dense.certified, why};
        if (!out.dense_eps.fail()) out.dense_eps = {Verdict::fail, out.dense.certified, why};
    }
    if (out.dense_eps.pass() && !out.dense.pass())
        out.dense = {Verdict::pass, false, "implied by dense-eps"};
    return out;
}

}  // namespace hyperchaos
