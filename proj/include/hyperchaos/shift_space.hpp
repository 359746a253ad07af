#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperchaos/rational.hpp"

namespace hyperchaos {

/// Binary sequence with at most finitely many zeros, stored by the (1-based)
/// positions of its zeros. The empty list is the all-ones sequence, the fixed
/// point of the shift. This covers the subsystem of sequences with at most
/// one zero plus the finite unions needed around it.
class BinarySeq {
public:
    BinarySeq() = default;
    static BinarySeq ones() { return BinarySeq(); }
    static BinarySeq with_zeros(std::vector<unsigned long> zeros) {
        std::sort(zeros.begin(), zeros.end());
        for (std::size_t i = 0; i < zeros.size(); ++i) {
            if (zeros[i] == 0) throw std::domain_error("BinarySeq: positions are 1-based");
            if (i > 0 && zeros[i] == zeros[i - 1])
                throw std::domain_error("BinarySeq: duplicate zero position");
        }
        BinarySeq s;
        s.zeros_ = std::move(zeros);
        return s;
    }
    static BinarySeq single_zero(unsigned long pos) { return with_zeros({pos}); }

    const std::vector<unsigned long>& zeros() const { return zeros_; }
    bool is_ones() const { return zeros_.empty(); }
    bool in_at_most_one_zero_subsystem() const { return zeros_.size() <= 1; }
    unsigned long last_zero() const { return zeros_.empty() ? 0 : zeros_.back(); }

    friend bool operator==(const BinarySeq& a, const BinarySeq& b) { return a.zeros_ == b.zeros_; }
    friend bool operator<(const BinarySeq& a, const BinarySeq& b) { return a.zeros_ < b.zeros_; }

    /// "1^a 0 1^b 0 1^inf" style rendering.
    std::string str() const {
        if (zeros_.empty()) return "1^inf";
        std::string out;
        unsigned long prev = 0;
        for (const auto z : zeros_) {
            const unsigned long run = z - prev - 1;
            if (run > 0) out += "1^" + std::to_string(run) + " ";
            out += "0 ";
            prev = z;
        }
        return out + "1^inf";
    }

private:
    std::vector<unsigned long> zeros_;
};

/// Drops the first symbol: zero positions decrement, a zero at position 1
/// shifts off.
inline BinarySeq shift(const BinarySeq& x) {
    std::vector<unsigned long> zs;
    zs.reserve(x.zeros().size());
    for (const auto z : x.zeros())
        if (z > 1) zs.push_back(z - 1);
    return BinarySeq::with_zeros(std::move(zs));
}

/// max{1/i : x_i != y_i}, i.e. 1 over the first differing index; 0 if equal.
inline Rational seq_distance(const BinarySeq& x, const BinarySeq& y) {
    const auto& a = x.zeros();
    const auto& b = y.zeros();
    std::size_t i = 0, j = 0;
    unsigned long first_diff = 0;
    while (i < a.size() || j < b.size()) {
        if (i < a.size() && j < b.size() && a[i] == b[j]) { ++i; ++j; continue; }
        const unsigned long ca = i < a.size() ? a[i] : 0;
        const unsigned long cb = j < b.size() ? b[j] : 0;
        if (ca != 0 && (cb == 0 || ca < cb)) first_diff = ca;
        else first_diff = cb;
        break;
    }
    if (first_diff == 0) return 0;
    return Rational(1, static_cast<long>(first_diff));
}

/// Finite set of sequences in canonical order.
class SeqSet {
public:
    static SeqSet of(std::vector<BinarySeq> elems) {
        if (elems.empty()) throw std::domain_error("SeqSet: must be non-empty");
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        SeqSet s;
        s.elems_ = std::move(elems);
        return s;
    }
    const std::vector<BinarySeq>& elements() const { return elems_; }

    friend SeqSet shift(const SeqSet& s) {
        std::vector<BinarySeq> out;
        out.reserve(s.elems_.size());
        for (const auto& e : s.elems_) out.push_back(shift(e));
        return of(std::move(out));
    }

    std::string str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i) out += ", ";
            out += elems_[i].str();
        }
        return out + "}";
    }

private:
    std::vector<BinarySeq> elems_;
};

/// n_0 = 0, n_{i+1} = n_i + i + 2: the gap sequence 0, 2, 5, 9, 14, 20, ...
inline std::vector<unsigned long> example_n_sequence(std::size_t k) {
    std::vector<unsigned long> n(k);
    for (std::size_t i = 0; i + 1 < k; ++i) n[i + 1] = n[i] + static_cast<unsigned long>(i) + 2;
    return n;
}

/// {1^{n_i} 0 1^inf : 0 <= i < k}: each element has its single zero at n_i + 1.
inline SeqSet build_example_N(std::size_t k) {
    if (k < 1) throw std::domain_error("build_example_N: k must be >= 1");
    const auto n = example_n_sequence(k);
    std::vector<BinarySeq> elems;
    elems.reserve(k);
    for (const auto ni : n) elems.push_back(BinarySeq::single_zero(ni + 1));
    return SeqSet::of(std::move(elems));
}

/// Exact Hausdorff distance between finite sets of sequences.
inline Rational hausdorff_seq(const SeqSet& a, const SeqSet& b) {
    const auto directed = [](const SeqSet& from, const SeqSet& to) {
        Rational worst = 0;
        for (const auto& x : from.elements()) {
            Rational best = seq_distance(x, to.elements().front());
            for (std::size_t i = 1; i < to.elements().size(); ++i)
                best = min(best, seq_distance(x, to.elements()[i]));
            worst = max(worst, best);
        }
        return worst;
    };
    return max(directed(a, b), directed(b, a));
}

/// Outcome of the shift-space demonstration: the base system is entirely
/// asymptotic while the induced pair (M, N) keeps returning to distance 1.
struct ShiftExampleReport {
    bool census_asymptotic = false;  // every census pair merges exactly
    bool series_matches = false;     // d_H series equals the closed form
    bool limsup_is_one = false;
    std::vector<Rational> dh_series;
    std::vector<Rational> expected_series;
    std::size_t census_size = 0;

    bool passed() const { return census_asymptotic && series_matches && limsup_is_one; }
};

/// Closed form of d_H(shift^t M, shift^t N_k): the nearest surviving zero sits
/// at position n_i + 1 - t for the smallest n_i >= t, so the distance is its
/// reciprocal; once no zero survives the sets coincide.
inline Rational expected_example_distance(const std::vector<unsigned long>& n, unsigned long t) {
    for (const auto ni : n)
        if (ni >= t) return Rational(1, static_cast<long>(ni + 1 - t));
    return 0;
}

/// Verifies the example at truncation k over `horizon` shifts. The horizon
/// must stay below n_{k-1}: beyond it the truncated N collapses onto M and
/// the asymptotic tail would be a truncation artifact, not a dynamical fact.
inline ShiftExampleReport verify_example(std::size_t k, std::size_t horizon) {
    if (k < 1) throw std::domain_error("verify_example: k must be >= 1");
    const auto n = example_n_sequence(k);
    if (k >= 2 && horizon >= n.back())
        throw std::domain_error("verify_example: horizon must be < n_{k-1} = " +
                                std::to_string(n.back()));
    if (k == 1 && horizon >= 1)
        throw std::domain_error("verify_example: horizon must be 0 when k = 1");

    ShiftExampleReport report;

    // Census of the at-most-one-zero subsystem up to the horizon, plus 1^inf:
    // every pair must reach distance exactly 0 no later than the larger zero
    // position, and stay there.
    std::vector<BinarySeq> census{BinarySeq::ones()};
    for (unsigned long p = 1; p <= horizon + 1; ++p) census.push_back(BinarySeq::single_zero(p));
    report.census_size = census.size();
    report.census_asymptotic = true;
    for (std::size_t i = 0; i < census.size() && report.census_asymptotic; ++i) {
        for (std::size_t j = i + 1; j < census.size(); ++j) {
            BinarySeq x = census[i], y = census[j];
            const unsigned long merge_by = std::max(x.last_zero(), y.last_zero());
            for (unsigned long t = 0; t <= merge_by; ++t) { x = shift(x); y = shift(y); }
            if (!(seq_distance(x, y) == Rational(0))) {
                report.census_asymptotic = false;
                break;
            }
        }
    }

    SeqSet m_set = SeqSet::of({BinarySeq::ones()});
    SeqSet n_set = build_example_N(k);
    report.series_matches = true;
    for (unsigned long t = 0; t <= horizon; ++t) {
        const Rational d = hausdorff_seq(m_set, n_set);
        report.dh_series.push_back(d);
        report.expected_series.push_back(expected_example_distance(n, t));
        if (!(d == report.expected_series.back())) report.series_matches = false;
        if (d == Rational(1)) report.limsup_is_one = true;
        n_set = shift(n_set);
    }
    return report;
}

}  // namespace hyperchaos
