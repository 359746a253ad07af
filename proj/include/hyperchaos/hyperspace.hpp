#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperchaos/compact_set.hpp"
#include "hyperchaos/interval.hpp"
#include "hyperchaos/orbit_stats.hpp"
#include "hyperchaos/pl_map.hpp"
#include "hyperchaos/rational.hpp"

namespace hyperchaos {

/// Open interval (lo, hi) with rational endpoints. As a subset of [0,1] it is
/// relatively open: when lo < 0 the point 0 belongs to it, and when hi > 1 the
/// point 1 does.
struct OpenInterval {
    Rational lo;
    Rational hi;

    OpenInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (!(lo < hi)) throw std::domain_error("OpenInterval: lo must be < hi");
    }

    bool contains(const Rational& x) const {
        if (lo < x && x < hi) return true;
        if (x == Rational(0) && lo.sign() < 0 && hi.sign() > 0) return true;
        if (x == Rational(1) && lo < Rational(1) && hi > Rational(1)) return true;
        return false;
    }

    /// Closed part of (lo,hi) within [0,1]: endpoint included exactly when the
    /// open interval reaches past it.
    struct Clipped {
        Rational lo, hi;
        bool lo_closed, hi_closed;
        bool empty;
    };
    Clipped clip_unit() const {
        Clipped c{max(lo, Rational(0)), min(hi, Rational(1)), lo.sign() < 0, hi > Rational(1), false};
        if (c.lo > c.hi || (c.lo == c.hi && !(c.lo_closed && c.hi_closed))) c.empty = true;
        return c;
    }

    bool empty_in_unit() const { return clip_unit().empty; }

    std::string str() const { return "(" + lo.str() + "," + hi.str() + ")"; }
};

/// Basic Vietoris open set <S_1,...,S_n>: the compact sets covered by the
/// union of the opens and meeting each one.
struct VietorisBox {
    std::vector<OpenInterval> opens;

    explicit VietorisBox(std::vector<OpenInterval> o) : opens(std::move(o)) {
        if (opens.empty()) throw std::domain_error("VietorisBox: needs at least one open set");
    }

    std::string str() const {
        std::string out = "<";
        for (std::size_t i = 0; i < opens.size(); ++i) {
            if (i) out += ",";
            out += opens[i].str();
        }
        return out + ">";
    }
};

/// Exact image of a compact set under the induced map.
inline CompactSet induced_image(const PLMap& m, const CompactSet& a) {
    if (a.empty()) throw std::domain_error("induced_image: empty set");
    std::vector<Interval> parts;
    parts.reserve(a.part_count());
    for (const auto& p : a.parts()) parts.push_back(m.image(p));
    return CompactSet::of(std::move(parts));
}

/// [a, f(a), ..., f^n(a)] on the hyperspace.
inline std::vector<CompactSet> induced_orbit(const PLMap& m, const CompactSet& a, std::size_t n) {
    std::vector<CompactSet> orbit;
    orbit.reserve(n + 1);
    orbit.push_back(a);
    for (std::size_t i = 0; i < n; ++i) orbit.push_back(induced_image(m, orbit.back()));
    return orbit;
}

namespace detail {

struct OpenComponent {
    Rational lo, hi;
    bool lo_closed, hi_closed;

    bool covers(const Interval& part) const {
        const bool left_ok = lo < part.lo() || (lo_closed && lo == part.lo());
        const bool right_ok = part.hi() < hi || (hi_closed && part.hi() == hi);
        return left_ok && right_ok;
    }
};

/// Connected components of a finite union of relatively open intervals.
/// Open intervals merge only when they genuinely overlap; touching at an
/// interior point leaves that point uncovered.
inline std::vector<OpenComponent> open_components(const std::vector<OpenInterval>& opens) {
    std::vector<OpenComponent> cs;
    for (const auto& o : opens) {
        const auto c = o.clip_unit();
        if (!c.empty) cs.push_back({c.lo, c.hi, c.lo_closed, c.hi_closed});
    }
    std::sort(cs.begin(), cs.end(), [](const OpenComponent& a, const OpenComponent& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return b.lo_closed < a.lo_closed;
    });
    std::vector<OpenComponent> merged;
    for (const auto& c : cs) {
        if (!merged.empty()) {
            OpenComponent& last = merged.back();
            const bool connected = c.lo < last.hi || (c.lo == last.hi && (last.hi_closed || c.lo_closed));
            if (connected) {
                if (c.hi > last.hi || (c.hi == last.hi && c.hi_closed)) {
                    last.hi = c.hi;
                    last.hi_closed = c.hi_closed;
                }
                continue;
            }
        }
        merged.push_back(c);
    }
    return merged;
}

}  // namespace detail

/// Membership of a compact set in a Vietoris basic open set, decided exactly.
inline bool vietoris_member(const CompactSet& a, const VietorisBox& box) {
    if (a.empty()) return false;
    const auto components = detail::open_components(box.opens);
    for (const auto& part : a.parts()) {
        bool covered = false;
        for (const auto& c : components)
            if (c.covers(part)) { covered = true; break; }
        if (!covered) return false;
    }
    for (const auto& o : box.opens) {
        const auto c = o.clip_unit();
        if (c.empty) return false;
        bool met = false;
        for (const auto& part : a.parts()) {
            const Rational lo = max(part.lo(), c.lo);
            const Rational hi = min(part.hi(), c.hi);
            if (lo < hi) { met = true; break; }
            if (lo == hi && part.contains(lo) && o.contains(lo)) { met = true; break; }
        }
        if (!met) return false;
    }
    return true;
}

/// Hausdorff distances along the pair of induced orbits, with tail summaries.
inline OrbitStats hausdorff_orbit_stats(const PLMap& m, const CompactSet& a, const CompactSet& b,
                                        std::size_t horizon, std::size_t tail_start) {
    if (horizon < 1) throw std::domain_error("hausdorff_orbit_stats: horizon must be >= 1");
    std::vector<Rational> values;
    values.reserve(horizon + 1);
    CompactSet x = a, y = b;
    values.push_back(hausdorff_distance(x, y));
    for (std::size_t i = 0; i < horizon; ++i) {
        x = induced_image(m, x);
        y = induced_image(m, y);
        values.push_back(hausdorff_distance(x, y));
    }
    return OrbitStats::from(std::move(values), tail_start);
}

inline OrbitStats hausdorff_orbit_stats(const PLMap& m, const CompactSet& a, const CompactSet& b,
                                        std::size_t horizon) {
    return hausdorff_orbit_stats(m, a, b, horizon, horizon / 2);
}

}  // namespace hyperchaos
