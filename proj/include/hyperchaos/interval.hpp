#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "hyperchaos/rational.hpp"

namespace hyperchaos {

/// Closed subinterval of the unit interval, 0 <= lo <= hi <= 1.
/// Degenerate intervals (lo == hi) are representable and flagged; operations
/// that require nondegeneracy reject them explicitly.
class Interval {
public:
    Interval() : lo_(0), hi_(0) {}
    Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_ > hi_) throw std::domain_error("Interval: lo > hi");
        if (lo_ < Rational(0) || hi_ > Rational(1))
            throw std::domain_error("Interval: endpoints outside [0,1]");
    }
    static Interval point(Rational x) { return Interval(x, x); }
    static Interval unit() { return Interval(0, 1); }

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational diameter() const { return hi_ - lo_; }
    bool is_point() const { return lo_ == hi_; }
    Rational midpoint() const { return (lo_ + hi_) / 2; }

    bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool intersects(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

    std::optional<Interval> intersect(const Interval& o) const {
        const Rational& l = max(lo_, o.lo_);
        const Rational& h = min(hi_, o.hi_);
        if (l > h) return std::nullopt;
        return Interval(l, h);
    }

    Interval hull(const Interval& o) const { return Interval(min(lo_, o.lo_), max(hi_, o.hi_)); }

    /// dist(A, B) = inf |x - y| over the two intervals; zero on overlap.
    friend Rational dist(const Interval& a, const Interval& b) {
        if (a.intersects(b)) return 0;
        return a.hi_ < b.lo_ ? b.lo_ - a.hi_ : a.lo_ - b.hi_;
    }
    friend Rational dist(const Rational& x, const Interval& a) {
        if (a.contains(x)) return 0;
        return x < a.lo_ ? a.lo_ - x : x - a.hi_;
    }

    friend bool operator==(const Interval& a, const Interval& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }
    friend bool operator<(const Interval& a, const Interval& b) {
        return a.lo_ != b.lo_ ? a.lo_ < b.lo_ : a.hi_ < b.hi_;
    }

    /// "p/q..r/s" for proper intervals, "p/q" for points.
    std::string str() const { return is_point() ? lo_.str() : lo_.str() + ".." + hi_.str(); }

private:
    Rational lo_, hi_;
};

}  // namespace hyperchaos
