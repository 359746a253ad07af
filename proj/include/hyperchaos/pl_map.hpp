#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperchaos/compact_set.hpp"
#include "hyperchaos/interval.hpp"
#include "hyperchaos/rational.hpp"

namespace hyperchaos {

/// One breakpoint of a piecewise-linear map.
struct MapNode {
    Rational x;
    Rational y;
};

/// Violated map invariant, with the node index it was detected at.
struct MapInvariantError {
    std::string message;
    std::size_t index;
};

/// Continuous piecewise-linear self-map of [0,1], given by its breakpoints.
/// Invariants: x-coordinates strictly increasing from 0 to 1, values in [0,1].
/// The map is the linear interpolant between consecutive nodes; all
/// evaluation, image and preimage computations are exact.
class PLMap {
public:
    explicit PLMap(std::vector<MapNode> nodes) : nodes_(std::move(nodes)) {
        if (auto err = validate(nodes_))
            throw std::invalid_argument("PLMap: " + err->message + " (node " +
                                        std::to_string(err->index) + ")");
    }

    static std::optional<MapInvariantError> validate(const std::vector<MapNode>& nodes) {
        if (nodes.size() < 2) return MapInvariantError{"need at least two nodes", 0};
        if (!(nodes.front().x == Rational(0))) return MapInvariantError{"first x must be 0", 0};
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].y < Rational(0) || nodes[i].y > Rational(1))
                return MapInvariantError{"y outside [0,1]", i};
            if (i > 0 && !(nodes[i - 1].x < nodes[i].x))
                return MapInvariantError{"x not strictly increasing", i};
        }
        if (!(nodes.back().x == Rational(1)))
            return MapInvariantError{"last x must be 1", nodes.size() - 1};
        return std::nullopt;
    }

    const std::vector<MapNode>& nodes() const { return nodes_; }
    std::size_t segment_count() const { return nodes_.size() - 1; }

    /// Slope of segment k (between node k and k+1).
    Rational slope(std::size_t k) const {
        return (nodes_[k + 1].y - nodes_[k].y) / (nodes_[k + 1].x - nodes_[k].x);
    }

    Rational max_abs_slope() const {
        Rational m = 0;
        for (std::size_t k = 0; k < segment_count(); ++k) m = max(m, abs(slope(k)));
        return m;
    }

    Rational eval(const Rational& x) const {
        if (x < Rational(0) || x > Rational(1))
            throw std::domain_error("PLMap::eval: argument outside [0,1]");
        const std::size_t k = segment_of(x);
        const MapNode& a = nodes_[k];
        const MapNode& b = nodes_[k + 1];
        if (x == a.x) return a.y;
        if (x == b.x) return b.y;
        return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
    }

    /// Exact image of a closed interval: min/max of the endpoint values and
    /// of all node values strictly inside.
    Interval image(const Interval& j) const {
        Rational lo = eval(j.lo());
        Rational hi = lo;
        const auto widen = [&](const Rational& v) {
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        };
        widen(eval(j.hi()));
        for (const auto& n : nodes_) {
            if (n.x <= j.lo()) continue;
            if (n.x >= j.hi()) break;
            widen(n.y);
        }
        return Interval(lo, hi);
    }

    /// [j, f(j), ..., f^n(j)]; element 0 is j itself.
    std::vector<Interval> iterate_interval(const Interval& j, std::size_t n) const {
        std::vector<Interval> orbit;
        orbit.reserve(n + 1);
        orbit.push_back(j);
        for (std::size_t i = 0; i < n; ++i) orbit.push_back(image(orbit.back()));
        return orbit;
    }

    std::vector<Rational> iterate_point(const Rational& x, std::size_t n) const {
        std::vector<Rational> orbit;
        orbit.reserve(n + 1);
        orbit.push_back(x);
        for (std::size_t i = 0; i < n; ++i) orbit.push_back(eval(orbit.back()));
        return orbit;
    }

    /// Full preimage f^{-1}({y}) as a finite union of points and intervals
    /// (level segments contribute intervals). May be empty.
    CompactSet preimage_point(const Rational& y) const {
        std::vector<Interval> parts;
        for (std::size_t k = 0; k < segment_count(); ++k) {
            const MapNode& a = nodes_[k];
            const MapNode& b = nodes_[k + 1];
            if (a.y == b.y) {
                if (a.y == y) parts.emplace_back(a.x, b.x);
                continue;
            }
            if (y < min(a.y, b.y) || y > max(a.y, b.y)) continue;
            parts.push_back(Interval::point(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y)));
        }
        return CompactSet::of(std::move(parts));
    }

    enum class PickSide { leftmost, rightmost };

    /// One solution of f(p) = y with p in j, or nullopt. The default tie-break
    /// picks the leftmost solution so constructions are reproducible.
    std::optional<Rational> preimage_in(const Rational& y, const Interval& j,
                                        PickSide side = PickSide::leftmost) const {
        std::optional<Rational> best;
        const auto consider = [&](const Rational& p) {
            if (!j.contains(p)) return;
            if (!best) { best = p; return; }
            if (side == PickSide::leftmost ? p < *best : p > *best) best = p;
        };
        const CompactSet pre = preimage_point(y);
        for (const auto& part : pre.parts()) {
            if (part.is_point()) {
                consider(part.lo());
            } else if (auto clipped = part.intersect(j)) {
                consider(side == PickSide::leftmost ? clipped->lo() : clipped->hi());
            }
        }
        return best;
    }

    /// Exact solution set of f(x) = x: isolated crossings plus diagonal segments.
    CompactSet fixed_points() const {
        std::vector<Interval> parts;
        for (std::size_t k = 0; k < segment_count(); ++k) {
            const MapNode& a = nodes_[k];
            const MapNode& b = nodes_[k + 1];
            const Rational sx = b.x - a.x;
            const Rational sy = b.y - a.y;
            if (sy == sx) {
                // Slope one: either the whole segment lies on the diagonal or none of it.
                if (a.y == a.x) parts.emplace_back(a.x, b.x);
                continue;
            }
            // Solve a.y + s (x - a.x) = x with s = sy/sx.
            const Rational x = (a.y * sx - a.x * sy) / (sx - sy);
            if (a.x <= x && x <= b.x) parts.push_back(Interval::point(x));
        }
        return CompactSet::of(std::move(parts));
    }

private:
    std::vector<MapNode> nodes_;

    std::size_t segment_of(const Rational& x) const {
        std::size_t lo = 0, hi = nodes_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (nodes_[mid].x <= x) lo = mid; else hi = mid;
        }
        return lo;
    }
};

inline PLMap build_tent() {
    return PLMap({{0, 0}, {Rational(1, 2), 1}, {1, 0}});
}

inline PLMap build_identity() {
    return PLMap({{0, 0}, {1, 1}});
}

/// Finite stage f_depth of the accordion map: for i = 0..depth, nodes at
/// (a_i, a_i), (b_i, 1), (c_i, a_i) with a_i = 1 - 1/3^i, b_i = 1 - 1/(4*3^(i-1)),
/// c_i = 1 - 1/(2*3^i), then the identity on [a_{depth+1}, 1].
inline PLMap build_snoha_example(std::size_t depth) {
    std::vector<MapNode> nodes;
    mpz_class pow3 = 1;  // 3^i
    for (std::size_t i = 0; i <= depth; ++i) {
        const Rational a_i = Rational(1) - Rational(mpq_class(1, pow3));
        const Rational b_i = Rational(1) - Rational(mpq_class(3, 4 * pow3));
        const Rational c_i = Rational(1) - Rational(mpq_class(1, 2 * pow3));
        nodes.push_back({a_i, a_i});
        nodes.push_back({b_i, 1});
        nodes.push_back({c_i, a_i});
        pow3 *= 3;
    }
    const Rational a_tail = Rational(1) - Rational(mpq_class(1, pow3));
    nodes.push_back({a_tail, a_tail});
    nodes.push_back({1, 1});
    return PLMap(std::move(nodes));
}

/// Exact composition outer . inner: breakpoints are inner's nodes together
/// with all inner-preimages of outer's nodes.
inline PLMap compose(const PLMap& outer, const PLMap& inner) {
    std::vector<Rational> xs;
    for (const auto& n : inner.nodes()) xs.push_back(n.x);
    for (const auto& n : outer.nodes()) {
        const CompactSet pre = inner.preimage_point(n.x);
        for (const auto& part : pre.parts()) {
            xs.push_back(part.lo());
            if (!part.is_point()) xs.push_back(part.hi());
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<MapNode> nodes;
    nodes.reserve(xs.size());
    for (auto& x : xs) {
        Rational y = outer.eval(inner.eval(x));
        nodes.push_back({std::move(x), std::move(y)});
    }
    return PLMap(std::move(nodes));
}

}  // namespace hyperchaos
