#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperchaos/compact_set.hpp"
#include "hyperchaos/hyperspace.hpp"
#include "hyperchaos/interval.hpp"
#include "hyperchaos/orbit_stats.hpp"
#include "hyperchaos/pl_map.hpp"
#include "hyperchaos/rational.hpp"

namespace hyperchaos {

enum class PairClass { eps_li_yorke, li_yorke, asymptotic, delta_asymptotic, distal, undetermined };

inline const char* to_string(PairClass c) {
    switch (c) {
        case PairClass::eps_li_yorke: return "eps-li-yorke";
        case PairClass::li_yorke: return "li-yorke";
        case PairClass::asymptotic: return "asymptotic";
        case PairClass::delta_asymptotic: return "delta-asymptotic";
        case PairClass::distal: return "distal";
        case PairClass::undetermined: return "undetermined";
    }
    return "?";
}

/// Parameters of a finite-horizon pair classification. tail_start defaults to
/// horizon/2, discarding transients; scans override it to 0 because exact
/// rational samples witness liminf 0 only through an exact orbit merge, and a
/// trimmed window would discard the pre-merge separation evidence.
struct PairParams {
    std::size_t horizon = 512;
    Rational tol_low = dyadic(20);
    Rational eps;
    std::optional<std::size_t> tail_start;  // default: horizon / 2

    std::size_t effective_tail_start() const { return tail_start ? *tail_start : horizon / 2; }

    void validate() const {
        if (horizon < 1) throw std::domain_error("PairParams: horizon must be >= 1");
        if (!(Rational(0) < tol_low)) throw std::domain_error("PairParams: tol_low must be positive");
        if (!(tol_low < eps)) throw std::domain_error("PairParams: need tol_low < eps");
        if (effective_tail_start() >= horizon)
            throw std::domain_error("PairParams: tail_start must be < horizon");
    }
};

struct PairVerdict {
    PairClass cls = PairClass::undetermined;
    OrbitStats stats;
    PairParams params;

    bool is_li_yorke() const { return cls == PairClass::li_yorke || cls == PairClass::eps_li_yorke; }
    bool is_eps_li_yorke() const { return cls == PairClass::eps_li_yorke; }
};

/// delta-asymptotic proxy: the tail separation stays below delta.
inline bool is_delta_asymptotic(const OrbitStats& stats, const Rational& delta) {
    return stats.tail_max < delta;
}

namespace detail {

inline PairClass classify_stats(const OrbitStats& s, const PairParams& p) {
    if (s.tail_min <= p.tol_low && s.tail_max > p.eps) return PairClass::eps_li_yorke;
    if (s.tail_min <= p.tol_low && s.tail_max > p.tol_low) return PairClass::li_yorke;
    if (s.tail_max <= p.tol_low) return PairClass::asymptotic;
    if (s.tail_min > p.tol_low) return PairClass::distal;
    return PairClass::undetermined;
}

}  // namespace detail

inline PairVerdict classify_point_pair(const PLMap& m, const Rational& x, const Rational& y,
                                       const PairParams& params) {
    params.validate();
    if (x < Rational(0) || x > Rational(1) || y < Rational(0) || y > Rational(1))
        throw std::domain_error("classify_point_pair: points must lie in [0,1]");
    std::vector<Rational> values;
    values.reserve(params.horizon + 1);
    Rational a = x, b = y;
    values.push_back(abs(a - b));
    for (std::size_t i = 0; i < params.horizon; ++i) {
        a = m.eval(a);
        b = m.eval(b);
        values.push_back(abs(a - b));
    }
    PairVerdict v;
    v.stats = OrbitStats::from(std::move(values), params.effective_tail_start());
    v.params = params;
    v.cls = detail::classify_stats(v.stats, params);
    return v;
}

inline PairVerdict classify_set_pair(const PLMap& m, const CompactSet& a, const CompactSet& b,
                                     const PairParams& params) {
    params.validate();
    PairVerdict v;
    v.stats = hausdorff_orbit_stats(m, a, b, params.horizon, params.effective_tail_start());
    v.params = params;
    v.cls = detail::classify_stats(v.stats, params);
    return v;
}

/// One scanned cell: the sample pair that came out most chaotic, plus its
/// tail statistics. Pairs are kept as parseable text so reports serialize
/// uniformly for point scans and hyperspace scans.
struct CellResult {
    std::size_t i = 0;
    std::size_t j = 0;
    std::string first;
    std::string second;
    PairClass cls = PairClass::undetermined;
    Rational tail_min;
    Rational tail_max;
};

struct DensityReport {
    std::vector<CellResult> cells;
    std::size_t count_eps_li_yorke = 0;  // cells whose best sample is eps-LY
    std::size_t count_li_yorke = 0;      // cells whose best sample is (eps-)LY
    std::size_t count_asymptotic = 0;
    std::size_t count_distal = 0;
    std::size_t count_undetermined = 0;
    std::vector<std::pair<std::size_t, std::size_t>> counterexample_cells;
    bool infeasible = false;
    std::string note;

    Rational ly_fraction() const {
        return cells.empty() ? Rational(0) : Rational(mpq_class(count_li_yorke, cells.size()));
    }
    Rational eps_ly_fraction() const {
        return cells.empty() ? Rational(0) : Rational(mpq_class(count_eps_li_yorke, cells.size()));
    }
};

namespace detail {

/// Rank used to pick a cell's best sample: eps-LY beats LY beats everything else.
inline int chaos_rank(PairClass c) {
    switch (c) {
        case PairClass::eps_li_yorke: return 4;
        case PairClass::li_yorke: return 3;
        case PairClass::undetermined: return 2;
        case PairClass::distal: return 1;
        default: return 0;
    }
}

inline void finalize_cell(DensityReport& report, CellResult best, bool any_ly_like) {
    switch (best.cls) {
        case PairClass::eps_li_yorke:
            ++report.count_eps_li_yorke;
            ++report.count_li_yorke;
            break;
        case PairClass::li_yorke: ++report.count_li_yorke; break;
        case PairClass::asymptotic: ++report.count_asymptotic; break;
        case PairClass::distal: ++report.count_distal; break;
        default: ++report.count_undetermined; break;
    }
    if (!any_ly_like) report.counterexample_cells.emplace_back(best.i, best.j);
    report.cells.push_back(std::move(best));
}

}  // namespace detail

/// Deterministic grid scan for Li-Yorke pairs over a product of intervals.
/// Each of grid x grid cells is probed at its center pair and corner pairs;
/// the report keeps the most chaotic sample per cell. Cells where every
/// sample is asymptotic or distal are listed as counterexample candidates.
inline DensityReport scan_pairs(const PLMap& m, const Interval& region_x, const Interval& region_y,
                                std::size_t grid, PairParams params) {
    if (grid < 1) throw std::domain_error("scan_pairs: grid must be >= 1");
    if (region_x.is_point() || region_y.is_point())
        throw std::domain_error("scan_pairs: region intervals must be nondegenerate");
    if (!params.tail_start) params.tail_start = 0;
    params.validate();

    DensityReport report;
    const Rational wx = region_x.diameter() / Rational(static_cast<long>(grid));
    const Rational wy = region_y.diameter() / Rational(static_cast<long>(grid));
    for (std::size_t i = 0; i < grid; ++i) {
        const Rational xlo = region_x.lo() + wx * Rational(static_cast<long>(i));
        const Rational xhi = xlo + wx;
        for (std::size_t j = 0; j < grid; ++j) {
            const Rational ylo = region_y.lo() + wy * Rational(static_cast<long>(j));
            const Rational yhi = ylo + wy;
            const std::pair<Rational, Rational> samples[] = {
                {(xlo + xhi) / 2, (ylo + yhi) / 2},
                {xlo, ylo}, {xlo, yhi}, {xhi, ylo}, {xhi, yhi},
            };
            std::optional<CellResult> best;
            bool any_ly_like = false;
            for (const auto& [sx, sy] : samples) {
                const PairVerdict v = classify_point_pair(m, sx, sy, params);
                any_ly_like = any_ly_like || v.is_li_yorke();
                CellResult cell{i, j, sx.str(), sy.str(), v.cls, v.stats.tail_min, v.stats.tail_max};
                if (!best || detail::chaos_rank(cell.cls) > detail::chaos_rank(best->cls))
                    best = std::move(cell);
            }
            detail::finalize_cell(report, std::move(*best), any_ly_like);
        }
    }
    return report;
}

namespace detail {

/// Breadth-first dyadic points strictly inside an open interval (clipped to
/// [0,1]): midpoint, quarters, eighths, ... in a fixed order.
inline std::vector<Rational> dyadic_samples(const OpenInterval& o, std::size_t count) {
    const auto c = o.clip_unit();
    std::vector<Rational> out;
    if (c.empty) return out;
    const Rational w = c.hi - c.lo;
    for (unsigned level = 1; out.size() < count && level < 16; ++level) {
        for (long num = 1; num < (1L << level) && out.size() < count; num += 2) {
            Rational p = c.lo + w * Rational(num, 1L << level);
            if (o.contains(p)) out.push_back(std::move(p));
        }
    }
    return out;
}

inline std::vector<CompactSet> enumerate_box_members(const VietorisBox& box, std::size_t samples) {
    std::vector<std::vector<Rational>> per_open;
    for (const auto& o : box.opens) {
        auto pts = dyadic_samples(o, samples);
        if (pts.empty()) return {};
        per_open.push_back(std::move(pts));
    }
    // Diagonal-first enumeration: member r uses the r-th sample of every open
    // (clamped), so the first member is all midpoints, the next shifts every
    // coordinate one refinement step, and so on.
    std::vector<CompactSet> members;
    for (std::size_t r = 0; r < samples; ++r) {
        std::vector<Rational> pts;
        pts.reserve(per_open.size());
        for (const auto& choices : per_open) pts.push_back(choices[std::min(r, choices.size() - 1)]);
        CompactSet member = CompactSet::points(std::move(pts));
        if (members.empty() || !(member == members.back())) members.push_back(std::move(member));
    }
    return members;
}

}  // namespace detail

/// Scan for Li-Yorke set pairs between two Vietoris boxes: deterministically
/// enumerated finite members of each box (one dyadic point per open set) are
/// classified pairwise. A box with no representable member is reported as
/// infeasible rather than raising.
inline DensityReport scan_hyper_pairs(const PLMap& m, const VietorisBox& box_a,
                                      const VietorisBox& box_b, std::size_t samples,
                                      PairParams params) {
    if (samples < 1) throw std::domain_error("scan_hyper_pairs: samples must be >= 1");
    if (!params.tail_start) params.tail_start = 0;
    params.validate();

    DensityReport report;
    const auto members_a = detail::enumerate_box_members(box_a, samples);
    const auto members_b = detail::enumerate_box_members(box_b, samples);
    if (members_a.empty() || members_b.empty()) {
        report.infeasible = true;
        report.note = "box has no representable member within [0,1]";
        return report;
    }
    for (std::size_t i = 0; i < members_a.size(); ++i) {
        for (std::size_t j = 0; j < members_b.size(); ++j) {
            const PairVerdict v = classify_set_pair(m, members_a[i], members_b[j], params);
            CellResult cell{i, j, members_a[i].str(), members_b[j].str(),
                            v.cls, v.stats.tail_min, v.stats.tail_max};
            detail::finalize_cell(report, std::move(cell), v.is_li_yorke());
        }
    }
    return report;
}

}  // namespace hyperchaos
