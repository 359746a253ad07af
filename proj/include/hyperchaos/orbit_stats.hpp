#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hyperchaos/rational.hpp"

namespace hyperchaos {

/// Finite-horizon summary of a nonnegative orbit quantity (pairwise distance
/// or interval diameter). tail_min / tail_max are taken over indices
/// >= tail_start and serve as liminf / limsup proxies; they never prove a
/// statement about infinite time by themselves.
struct OrbitStats {
    std::vector<Rational> values;  // length horizon + 1, index = iterate count
    std::size_t tail_start = 0;
    Rational tail_min;
    Rational tail_max;

    std::size_t horizon() const { return values.size() - 1; }

    static OrbitStats from(std::vector<Rational> values, std::size_t tail_start) {
        if (values.size() < 2) throw std::domain_error("OrbitStats: horizon must be >= 1");
        if (tail_start + 1 >= values.size())
            throw std::domain_error("OrbitStats: tail_start must be < horizon");
        OrbitStats s;
        s.values = std::move(values);
        s.tail_start = tail_start;
        s.tail_min = s.values[tail_start];
        s.tail_max = s.values[tail_start];
        for (std::size_t i = tail_start + 1; i < s.values.size(); ++i) {
            s.tail_min = min(s.tail_min, s.values[i]);
            s.tail_max = max(s.tail_max, s.values[i]);
        }
        return s;
    }
};

}  // namespace hyperchaos
