#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hyperchaos/interval.hpp"
#include "hyperchaos/rational.hpp"

namespace hyperchaos {

/// Finite union of closed rational intervals in [0,1], kept canonical:
/// parts sorted, pairwise disjoint, touching parts merged. Points are
/// degenerate parts. The empty set is representable as a value so that
/// preimage computations can return it; hyperspace operations that require
/// a member of K([0,1]) check non-emptiness.
class CompactSet {
public:
    CompactSet() = default;

    static CompactSet of(std::vector<Interval> parts) {
        CompactSet s;
        s.parts_ = canonicalize(std::move(parts));
        return s;
    }
    static CompactSet point(Rational x) { return of({Interval::point(std::move(x))}); }
    static CompactSet points(std::vector<Rational> xs) {
        std::vector<Interval> ps;
        ps.reserve(xs.size());
        for (auto& x : xs) ps.push_back(Interval::point(std::move(x)));
        return of(std::move(ps));
    }

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t part_count() const { return parts_.size(); }

    const Rational& min_point() const { require_nonempty(); return parts_.front().lo(); }
    const Rational& max_point() const { require_nonempty(); return parts_.back().hi(); }

    bool contains(const Rational& x) const {
        for (const auto& p : parts_)
            if (p.contains(x)) return true;
        return false;
    }

    bool subset_of(const CompactSet& other) const {
        for (const auto& p : parts_) {
            bool covered = false;
            for (const auto& q : other.parts_)
                if (q.contains(p)) { covered = true; break; }
            if (!covered) return false;
        }
        return true;
    }

    CompactSet union_with(const CompactSet& other) const {
        std::vector<Interval> all = parts_;
        all.insert(all.end(), other.parts_.begin(), other.parts_.end());
        return of(std::move(all));
    }

    CompactSet intersect(const Interval& window) const {
        std::vector<Interval> out;
        for (const auto& p : parts_)
            if (auto q = p.intersect(window)) out.push_back(*q);
        return of(std::move(out));
    }

    /// dist(x, A) = min over parts; exact.
    Rational dist_to(const Rational& x) const {
        require_nonempty();
        Rational best = dist(x, parts_.front());
        for (std::size_t i = 1; i < parts_.size(); ++i)
            best = hyperchaos::min(best, dist(x, parts_[i]));
        return best;
    }

    /// Exact Hausdorff distance. The directed distance sup_{x in a} dist(x, b)
    /// is piecewise linear in x with local maxima only at endpoints of a's
    /// parts and at midpoints of b's gaps, so a finite candidate scan is exact.
    friend Rational hausdorff_distance(const CompactSet& a, const CompactSet& b) {
        return hyperchaos::max(directed(a, b), directed(b, a));
    }

    /// Closure of the eps-neighborhood, clipped to [0,1]. Requires eps > 0.
    CompactSet eps_neighborhood(const Rational& eps) const {
        if (eps.sign() <= 0) throw std::domain_error("eps_neighborhood: eps must be positive");
        require_nonempty();
        std::vector<Interval> out;
        out.reserve(parts_.size());
        for (const auto& p : parts_)
            out.emplace_back(hyperchaos::max(Rational(0), p.lo() - eps),
                             hyperchaos::min(Rational(1), p.hi() + eps));
        return of(std::move(out));
    }

    friend bool operator==(const CompactSet& a, const CompactSet& b) { return a.parts_ == b.parts_; }
    friend bool operator<(const CompactSet& a, const CompactSet& b) {
        return std::lexicographical_compare(a.parts_.begin(), a.parts_.end(),
                                            b.parts_.begin(), b.parts_.end());
    }

    /// Textual form: semicolon-separated parts, "p/q..r/s" or "p/q".
    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) out += ";";
            out += parts_[i].str();
        }
        return out.empty() ? "{}" : out;
    }

    static CompactSet parse(std::string_view text) {
        std::vector<Interval> parts;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t semi = text.find(';', pos);
            if (semi == std::string_view::npos) semi = text.size();
            std::string_view item = text.substr(pos, semi - pos);
            if (item.empty()) throw std::invalid_argument("CompactSet: empty component");
            std::size_t dots = item.find("..");
            if (dots == std::string_view::npos) {
                parts.push_back(Interval::point(Rational::parse(item)));
            } else {
                parts.emplace_back(Rational::parse(item.substr(0, dots)),
                                   Rational::parse(item.substr(dots + 2)));
            }
            pos = semi + 1;
        }
        if (parts.empty()) throw std::invalid_argument("CompactSet: no components");
        return of(std::move(parts));
    }

private:
    std::vector<Interval> parts_;

    void require_nonempty() const {
        if (parts_.empty()) throw std::domain_error("CompactSet: operation requires a non-empty set");
    }

    static std::vector<Interval> canonicalize(std::vector<Interval> parts) {
        if (parts.empty()) return parts;
        std::sort(parts.begin(), parts.end());
        std::vector<Interval> merged;
        merged.push_back(parts.front());
        for (std::size_t i = 1; i < parts.size(); ++i) {
            Interval& last = merged.back();
            if (parts[i].lo() <= last.hi()) {
                if (parts[i].hi() > last.hi()) last = Interval(last.lo(), parts[i].hi());
            } else {
                merged.push_back(parts[i]);
            }
        }
        return merged;
    }

    static Rational directed(const CompactSet& a, const CompactSet& b) {
        a.require_nonempty();
        b.require_nonempty();
        Rational best = 0;
        for (const auto& p : a.parts_) {
            best = hyperchaos::max(best, b.dist_to(p.lo()));
            best = hyperchaos::max(best, b.dist_to(p.hi()));
        }
        for (std::size_t i = 0; i + 1 < b.parts_.size(); ++i) {
            const Rational mid = (b.parts_[i].hi() + b.parts_[i + 1].lo()) / 2;
            if (a.contains(mid)) best = hyperchaos::max(best, b.dist_to(mid));
        }
        return best;
    }
};

}  // namespace hyperchaos
