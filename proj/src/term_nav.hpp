#pragma once

// Internal position arithmetic shared by term surgery and the embedding
// search.  Positions are ordinals below length(term); omega repetitions are
// addressed by (repetition count, offset within one period).

#include "bqo/ordinal.hpp"
#include "bqo/seqterm.hpp"

#include <cassert>
#include <cstdint>
#include <vector>

namespace bqo::nav {

// interval_length with the a == b case allowed.
inline Ordinal sub(const Ordinal& a, const Ordinal& b) {
    if (a == b) return Ordinal{};
    return interval_length(a, b);
}

// Start offsets of each part plus the total, as ordinal sums in order.
inline std::vector<Ordinal> starts(const std::vector<SeqTerm>& parts) {
    std::vector<Ordinal> out;
    out.reserve(parts.size() + 1);
    Ordinal acc;
    out.push_back(acc);
    for (const auto& p : parts) {
        acc = add(acc, length(p));
        out.push_back(acc);
    }
    return out;
}

// Largest i with starts[i] <= p (p < starts.back()).
inline std::size_t part_of(const std::vector<Ordinal>& starts, const Ordinal& p) {
    std::size_t lo = 0, hi = starts.size() - 1;
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (compare(starts[mid], p) != Cmp::GT)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// Largest q with period*q <= p, plus the offset; requires p < period*omega.
inline std::pair<std::uint64_t, Ordinal> divmod(const Ordinal& period, const Ordinal& p) {
    if (compare(p, period) == Cmp::LT) return {0, p};
    std::uint64_t lo = 1, hi = 2;
    while (compare(nat_multiple(period, hi), p) != Cmp::GT) {
        lo = hi;
        hi *= 2;
    }
    while (lo + 1 < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (compare(nat_multiple(period, mid), p) != Cmp::GT)
            lo = mid;
        else
            hi = mid;
    }
    Ordinal off = sub(nat_multiple(period, lo), p);
    assert(compare(off, period) == Cmp::LT);
    return {lo, off};
}

} // namespace bqo::nav
