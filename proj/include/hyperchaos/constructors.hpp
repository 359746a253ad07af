#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperchaos/compact_set.hpp"
#include "hyperchaos/criteria.hpp"
#include "hyperchaos/hyperspace.hpp"
#include "hyperchaos/interval.hpp"
#include "hyperchaos/pair_class.hpp"
#include "hyperchaos/pl_map.hpp"
#include "hyperchaos/rational.hpp"

namespace hyperchaos {

struct ConstructionTrace {
    std::vector<std::string> stages;
    std::string failed_stage;  // empty on success

    void step(std::string s) { stages.push_back(std::move(s)); }
    bool ok() const { return failed_stage.empty(); }
};

/// Result of a hyperspace pair construction: two finite sets, members of the
/// requested Vietoris boxes, verified Li-Yorke (or eps-Li-Yorke) by direct
/// orbit computation.
struct HyperPairResult {
    bool ok = false;
    CompactSet u, v;
    ConstructionTrace trace;
    std::optional<PairVerdict> verification;
};

namespace detail {

struct TaggedOpen {
    Interval closed;  // shrunken closed core of the open interval
    bool from_u = false;
    std::size_t index = 0;
    std::vector<Interval> orbit;  // forward images of `closed`
    // Set by the transitive-interval branches:
    Interval refined;                 // A' = shrunken f^l(A) ∩ int(T)
    std::vector<Interval> ref_orbit;  // forward images of A'
    int side = 0;                     // 1 or 2: which transitive interval A' lies in
};

inline std::optional<Interval> shrunken_core(const OpenInterval& o) {
    const auto c = o.clip_unit();
    if (c.empty) return std::nullopt;
    const Rational w = c.hi - c.lo;
    if (w.sign() <= 0) return std::nullopt;
    return Interval(c.lo + w / 16, c.hi - w / 16);
}

inline std::optional<std::vector<TaggedOpen>> shrink_boxes(const VietorisBox& bu,
                                                           const VietorisBox& bv) {
    std::vector<TaggedOpen> all;
    for (std::size_t i = 0; i < bu.opens.size(); ++i) {
        auto c = shrunken_core(bu.opens[i]);
        if (!c) return std::nullopt;
        all.push_back({*c, true, i, {}, Interval(), {}, 0});
    }
    for (std::size_t j = 0; j < bv.opens.size(); ++j) {
        auto c = shrunken_core(bv.opens[j]);
        if (!c) return std::nullopt;
        all.push_back({*c, false, j, {}, Interval(), {}, 0});
    }
    return all;
}

/// Shrink an interval towards its interior by a sixteenth of its width.
inline std::optional<Interval> inner_shrink(const Interval& c) {
    const Rational w = c.diameter();
    if (w.sign() <= 0) return std::nullopt;
    return Interval(c.lo() + w / 16, c.hi() - w / 16);
}

inline HyperPairResult failed(ConstructionTrace trace, std::string stage, std::string why) {
    trace.step(stage + ": " + why);
    trace.failed_stage = std::move(stage);
    HyperPairResult r;
    r.trace = std::move(trace);
    return r;
}

/// Assembles the two finite sets from per-open pullback targets, then checks
/// exact box membership and the Li-Yorke property of the induced orbits.
inline HyperPairResult finish(const PLMap& m, const VietorisBox& bu, const VietorisBox& bv,
                              const std::vector<std::pair<const TaggedOpen*, Rational>>& points,
                              ConstructionTrace trace, std::size_t horizon,
                              const Rational& tol_low, const std::optional<Rational>& eps) {
    std::vector<Rational> us, vs;
    for (const auto& [open, pt] : points)
        (open->from_u ? us : vs).push_back(pt);
    HyperPairResult r;
    r.u = CompactSet::points(std::move(us));
    r.v = CompactSet::points(std::move(vs));
    trace.step("pullback: U = " + r.u.str() + ", V = " + r.v.str());

    if (!vietoris_member(r.u, bu) || !vietoris_member(r.v, bv))
        return failed(std::move(trace), "verification", "constructed sets left their boxes");
    PairParams pp;
    pp.horizon = horizon;
    pp.tol_low = tol_low;
    pp.eps = eps ? *eps : Rational(1);
    pp.tail_start = 0;
    const PairVerdict verdict = classify_set_pair(m, r.u, r.v, pp);
    const bool good = eps ? verdict.is_eps_li_yorke() : verdict.is_li_yorke();
    if (!good) {
        trace.step("verification: orbit stats tail_min " + verdict.stats.tail_min.str() +
                   ", tail_max " + verdict.stats.tail_max.str());
        return failed(std::move(trace), "verification",
                      std::string("pair classifies as ") + to_string(verdict.cls));
    }
    trace.step(std::string("verification: ") + to_string(verdict.cls) + ", tail_max " +
               verdict.stats.tail_max.str());
    r.ok = true;
    r.trace = std::move(trace);
    r.verification = verdict;
    return r;
}

/// The Case 1/2/3 split shared by both transmission constructions: partition
/// the opens, intersect their k-step images, build a merge pair inside (or
/// across) the intersections, and pull everything back.
///
/// `orbit_of` and `depth_of` abstract over which forward orbit a pullback
/// descends (plain opens, or refined opens plus their l-step prefix).
template <typename PullBack>
inline HyperPairResult run_cases(const PLMap& m, const PLMap& mm, const VietorisBox& bu,
                                 const VietorisBox& bv, std::vector<TaggedOpen>& opens,
                                 const std::vector<const std::vector<Interval>*>& k_orbits,
                                 const std::vector<bool>& in_s1, std::size_t k,
                                 const Rational& min_sep, std::size_t horizon,
                                 const Rational& tol_low, const std::optional<Rational>& eps,
                                 ConstructionTrace trace, PullBack pull) {
    std::optional<Interval> s1, s2;
    bool u_in_1 = false, u_in_2 = false, v_in_1 = false, v_in_2 = false;
    for (std::size_t i = 0; i < opens.size(); ++i) {
        const Interval& img = (*k_orbits[i])[k];
        auto& target = in_s1[i] ? s1 : s2;
        if (!target) target = img;
        else {
            auto meet = target->intersect(img);
            if (!meet) return failed(std::move(trace), "partition", "k-step images do not intersect");
            target = *meet;
        }
        (in_s1[i] ? (opens[i].from_u ? u_in_1 : v_in_1) : (opens[i].from_u ? u_in_2 : v_in_2)) = true;
    }
    const bool s1_used = u_in_1 || v_in_1, s2_used = u_in_2 || v_in_2;
    if (s1_used && s1->is_point())
        return failed(std::move(trace), "partition", "S1 degenerate");
    if (s2_used && s2->is_point())
        return failed(std::move(trace), "partition", "S2 degenerate");

    // Targets per open: which orbit value each open pulls back.
    std::vector<std::pair<const TaggedOpen*, Rational>> points;
    const auto assign = [&](const Rational& target_s1, const Rational& target_s2) {
        for (std::size_t i = 0; i < opens.size(); ++i)
            points.emplace_back(&opens[i], pull(i, in_s1[i] ? target_s1 : target_s2));
    };

    if (!s1_used || !s2_used) {
        trace.step("case 3: one family empty");
        const Interval& s = s1_used ? *s1 : *s2;
        const auto mp = find_merge_pair_in(mm, s, min_sep, horizon);
        if (!mp) return failed(std::move(trace), "pair-search", "no merge pair in " + s.str());
        trace.step("pair (" + mp->s.str() + ", " + mp->p.str() + "), separation " +
                   mp->separation.str());
        for (std::size_t i = 0; i < opens.size(); ++i)
            points.emplace_back(&opens[i], pull(i, opens[i].from_u ? mp->s : mp->p));
    } else if (u_in_1 && u_in_2 && v_in_1 && v_in_2) {
        trace.step("case 1: both families mixed");
        const auto mp = find_merge_pair_in(mm, *s1, min_sep, horizon);
        if (!mp) return failed(std::move(trace), "pair-search", "no merge pair in " + s1->str());
        const Rational r = s2->midpoint();
        trace.step("pair (" + mp->s.str() + ", " + mp->p.str() + ") in S1, r = " + r.str());
        for (std::size_t i = 0; i < opens.size(); ++i) {
            const Rational& target = in_s1[i] ? (opens[i].from_u ? mp->s : mp->p) : r;
            points.emplace_back(&opens[i], pull(i, target));
        }
    } else {
        trace.step("case 2: one side pure");
        // Pure family F holds all U-opens (or all V-opens); s lives in S_F, r across.
        const bool u_pure_1 = u_in_1 && !u_in_2;
        const bool u_pure_2 = u_in_2 && !u_in_1;
        bool f_is_s1;
        if (u_pure_1 || u_pure_2) f_is_s1 = u_pure_1;
        else f_is_s1 = v_in_1 && !v_in_2;
        const Interval& sf = f_is_s1 ? *s1 : *s2;
        const Interval& so = f_is_s1 ? *s2 : *s1;
        const auto mp = find_merge_pair_across(mm, sf, so, min_sep, horizon);
        if (!mp)
            return failed(std::move(trace), "pair-search",
                          "no merge pair across " + sf.str() + " and " + so.str());
        trace.step("pair (" + mp->s.str() + ", " + mp->p.str() + ") across S1/S2");
        assign(f_is_s1 ? mp->s : mp->p, f_is_s1 ? mp->p : mp->s);
    }
    return finish(m, bu, bv, points, std::move(trace), horizon, tol_low, eps);
}

/// Two invariant transitive intervals sharing the fixed point y, under the
/// (possibly squared) map mm. Opens are refined into the interiors first;
/// pullback descends k steps along the refined orbit, then l steps back into
/// the original open.
inline HyperPairResult two_interval_construction(const PLMap& m, const PLMap& mm,
                                                 const VietorisBox& bu, const VietorisBox& bv,
                                                 std::vector<TaggedOpen> opens, const Interval& t1,
                                                 const Interval& t2, const Rational& y,
                                                 const Rational& min_sep, std::size_t horizon,
                                                 const Rational& tol_low,
                                                 const std::optional<Rational>& eps,
                                                 ConstructionTrace trace) {
    trace.step("transitive intervals " + t1.str() + " and " + t2.str() + " meeting at " + y.str());

    // Common l: every open's l-step image meets the interior of one of the
    // transitive intervals in a nondegenerate interval.
    std::optional<std::size_t> l;
    for (std::size_t cand = 0; cand <= horizon && !l; ++cand) {
        bool all = true;
        for (auto& o : opens) {
            if (o.orbit.size() <= cand) o.orbit = mm.iterate_interval(o.closed, horizon);
            std::optional<Interval> refined;
            int side = 0;
            for (const auto& t : {t1, t2}) {
                ++side;
                if (auto meet = o.orbit[cand].intersect(t)) {
                    if (auto shrunk = inner_shrink(*meet)) {
                        if (t.lo() < shrunk->lo() && shrunk->hi() < t.hi()) {
                            refined = shrunk;
                            break;
                        }
                    }
                }
            }
            if (!refined) { all = false; break; }
            o.refined = *refined;
            o.side = side;
        }
        if (all) l = cand;
    }
    if (!l) return failed(std::move(trace), "l-search", "opens never refine into int(T1)/int(T2)");
    trace.step("l = " + std::to_string(*l));

    Rational b;
    bool first = true;
    std::vector<const std::vector<Interval>*> k_orbits;
    for (auto& o : opens) {
        o.ref_orbit = mm.iterate_interval(o.refined, horizon);
        const DiamSummary d = diam_summary(iterate_orbit(mm, o.refined, horizon));
        if (first || d.liminf < b) { b = d.liminf; first = false; }
    }
    if (b.sign() <= 0) return failed(std::move(trace), "b-search", "liminf diam not positive");
    trace.step("b = " + b.str());

    std::optional<std::size_t> k;
    for (std::size_t cand = 0; cand + *l <= horizon && !k; ++cand) {
        bool all = true;
        for (const auto& o : opens) {
            if (!(dist(y, o.ref_orbit[cand]) < b / 4 && o.ref_orbit[cand].diameter() > b / 2)) {
                all = false;
                break;
            }
        }
        if (all) k = cand;
    }
    if (!k) return failed(std::move(trace), "k-search", "no k brings every refined open near " + y.str());
    trace.step("k = " + std::to_string(*k));

    std::vector<bool> in_s1;
    for (auto& o : opens) {
        k_orbits.push_back(&o.ref_orbit);
        in_s1.push_back(o.side == 1);
    }
    const auto pull = [&, k](std::size_t i, const Rational& target) {
        const Rational mid = pull_back(mm, target, opens[i].ref_orbit, *k);
        return pull_back(mm, mid, opens[i].orbit, *l);
    };
    return run_cases(m, mm, bu, bv, opens, k_orbits, in_s1, *k, min_sep, horizon, tol_low, eps,
                     std::move(trace), pull);
}

}  // namespace detail

/// Builds a Li-Yorke pair (U, V) of finite sets inside the two Vietoris boxes
/// by steering every open set near an attracting fixed point, intersecting
/// the k-step images, planting an exactly-merging point pair there and
/// pulling it back through exact preimages. Failure reports the stage.
inline HyperPairResult construct_hyper_ly_pair(const PLMap& m, const VietorisBox& bu,
                                               const VietorisBox& bv, const CriteriaParams& params) {
    ConstructionTrace trace;
    auto opens_opt = detail::shrink_boxes(bu, bv);
    if (!opens_opt) return detail::failed(std::move(trace), "shrink", "an open set is empty in [0,1]");
    auto opens = *opens_opt;
    trace.step("shrunken opens ready (" + std::to_string(opens.size()) + ")");

    Rational delta;
    bool first = true;
    for (auto& o : opens) {
        o.orbit = m.iterate_interval(o.closed, params.horizon);
        const DiamSummary d = diam_summary(iterate_orbit(m, o.closed, params.horizon));
        if (first || d.liminf < delta) { delta = d.liminf; first = false; }
    }
    if (delta.sign() <= 0)
        return detail::failed(std::move(trace), "delta", "liminf diam of an open is 0");
    trace.step("delta = " + delta.str());

    std::optional<std::size_t> k;
    std::optional<Rational> x0;
    const auto candidates = detail::fixed_point_candidates(m);
    for (std::size_t cand = 0; cand <= params.horizon && !k; ++cand) {
        for (const auto& fp : candidates) {
            bool all = true;
            for (const auto& o : opens) {
                if (!(dist(fp, o.orbit[cand]) < delta / 4 && o.orbit[cand].diameter() > delta / 2)) {
                    all = false;
                    break;
                }
            }
            if (all) { k = cand; x0 = fp; break; }
        }
    }
    if (!k)
        return detail::failed(std::move(trace), "k-search",
                              "no (k, x0) satisfies the distance and diameter inequalities");
    trace.step("k = " + std::to_string(*k) + ", x0 = " + x0->str());

    const Rational tau = *x0 - delta / 4;
    std::vector<bool> in_s1;
    std::vector<const std::vector<Interval>*> k_orbits;
    for (const auto& o : opens) {
        in_s1.push_back(o.orbit[*k].contains(tau));
        k_orbits.push_back(&o.orbit);
    }
    trace.step("partition at x0 - delta/4 = " + tau.str());

    const auto pull = [&](std::size_t i, const Rational& target) {
        return detail::pull_back(m, target, opens[i].orbit, *k);
    };
    return detail::run_cases(m, m, bu, bv, opens, k_orbits, in_s1, *k, params.tol_low * 2,
                             params.horizon, params.tol_low, std::nullopt, std::move(trace), pull);
}

/// eps-Li-Yorke variant, routed through the invariant transitive intervals:
/// two intervals sharing a point, a single interval with exactly swapped
/// halves (handled under the square map), or a single interval on which all
/// powers are transitive (handled through the covering step).
inline HyperPairResult construct_hyper_eps_ly_pair(const PLMap& m, const VietorisBox& bu,
                                                   const VietorisBox& bv, const Rational& eps,
                                                   const CriteriaParams& params) {
    ConstructionTrace trace;
    auto opens_opt = detail::shrink_boxes(bu, bv);
    if (!opens_opt) return detail::failed(std::move(trace), "shrink", "an open set is empty in [0,1]");
    auto opens = *opens_opt;

    const TransitiveIntervalReport report = find_invariant_transitive_intervals(m, params);
    const auto transitive = report.transitive_intervals();
    if (transitive.empty())
        return detail::failed(std::move(trace), "transitive-intervals",
                              "no invariant transitive interval found");

    if (transitive.size() == 2) {
        const Interval& a = transitive[0];
        const Interval& b = transitive[1];
        const Rational y = a.hi() == b.lo() ? a.hi() : a.lo();
        trace.step("branch: two transitive intervals");
        return detail::two_interval_construction(m, m, bu, bv, std::move(opens), a, b, y, eps,
                                                 params.horizon, params.tol_low, eps,
                                                 std::move(trace));
    }
    if (transitive.size() != 1)
        return detail::failed(std::move(trace), "transitive-intervals",
                              "interval collection does not match the dichotomy");

    const Interval& t = transitive[0];
    const TransitiveEntry* entry = nullptr;
    for (const auto& e : report.entries)
        if (e.transitive && e.t == t) entry = &e;

    if (entry && entry->dichotomy == Dichotomy::two_swapped_halves) {
        trace.step("branch: square map (swapped halves at " + entry->swap_point->str() + ")");
        const PLMap square = compose(m, m);
        const Rational& y = *entry->swap_point;
        return detail::two_interval_construction(m, square, bu, bv, std::move(opens),
                                                 Interval(t.lo(), y), Interval(y, t.hi()), y, eps,
                                                 params.horizon, params.tol_low, eps,
                                                 std::move(trace));
    }

    trace.step("branch: all powers transitive on " + t.str());
    // Common l refining every open into int(T).
    std::optional<std::size_t> l;
    for (std::size_t cand = 0; cand <= params.horizon && !l; ++cand) {
        bool all = true;
        for (auto& o : opens) {
            if (o.orbit.empty()) o.orbit = m.iterate_interval(o.closed, params.horizon);
            std::optional<Interval> refined;
            if (auto meet = o.orbit[cand].intersect(t)) {
                if (auto shrunk = detail::inner_shrink(*meet)) {
                    if (t.lo() < shrunk->lo() && shrunk->hi() < t.hi()) refined = shrunk;
                }
            }
            if (!refined) { all = false; break; }
            o.refined = *refined;
        }
        if (all) l = cand;
    }
    if (!l) return detail::failed(std::move(trace), "l-search", "opens never refine into int(T)");
    trace.step("l = " + std::to_string(*l));

    std::optional<Interval> u_hull, v_hull;
    for (auto& o : opens) {
        o.ref_orbit = m.iterate_interval(o.refined, params.horizon);
        auto& h = o.from_u ? u_hull : v_hull;
        h = h ? h->hull(o.refined) : o.refined;
    }
    const Interval u_core = *u_hull, v_core = *v_hull;
    trace.step("U' = " + u_core.str() + ", V' = " + v_core.str());

    std::optional<std::size_t> k;
    for (std::size_t cand = 0; cand + *l <= params.horizon && !k; ++cand) {
        bool all = true;
        for (const auto& o : opens) {
            const Interval& target = o.from_u ? u_core : v_core;
            if (!o.ref_orbit[cand].contains(target)) { all = false; break; }
        }
        if (all) k = cand;
    }
    if (!k)
        return detail::failed(std::move(trace), "covering-k-search",
                              "no k with f^k(U'_i) covering U' and f^k(V'_j) covering V'");
    trace.step("covering k = " + std::to_string(*k));

    const auto mp = find_merge_pair_across(m, u_core, v_core, eps, params.horizon);
    if (!mp)
        return detail::failed(std::move(trace), "pair-search",
                              "no merge pair across U' and V' with separation > " + eps.str());
    trace.step("pair (" + mp->s.str() + ", " + mp->p.str() + "), separation " +
               mp->separation.str());

    std::vector<std::pair<const detail::TaggedOpen*, Rational>> points;
    for (const auto& o : opens) {
        const Rational& target = o.from_u ? mp->s : mp->p;
        const Rational mid = detail::pull_back(m, target, o.ref_orbit, *k);
        points.emplace_back(&o, detail::pull_back(m, mid, o.orbit, *l));
    }
    return detail::finish(m, bu, bv, points, std::move(trace), params.horizon, params.tol_low, eps);
}

}  // namespace hyperchaos
