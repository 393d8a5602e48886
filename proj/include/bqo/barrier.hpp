#pragma once

#include "bqo/seqterm.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bqo {

// A finite strictly increasing sequence of naturals, identified with the set
// it enumerates.
class FinSeq {
public:
    FinSeq() = default;
    explicit FinSeq(std::vector<std::uint32_t> xs);

    std::size_t lh() const { return xs_.size(); }
    bool empty() const { return xs_.empty(); }
    std::uint32_t operator()(std::size_t i) const { return xs_.at(i); }
    const std::vector<std::uint32_t>& entries() const { return xs_; }
    std::uint32_t max() const { return xs_.back(); }

    FinSeq prefix(std::size_t i) const; // s[i], the first i entries
    FinSeq tail() const;                // s with its first entry removed

    bool init_seg_of(const FinSeq& t) const;        // this is an initial segment of t
    bool proper_init_seg_of(const FinSeq& t) const; // strict
    bool subset_of(const FinSeq& t) const;          // range inclusion
    bool proper_subset_of(const FinSeq& t) const;   // strict
    FinSeq set_union(const FinSeq& t) const;

    bool operator==(const FinSeq&) const = default;
    auto operator<=>(const FinSeq&) const = default; // lexicographic

private:
    std::vector<std::uint32_t> xs_;
};

std::string to_string(const FinSeq& s);

// s comes right before t on some infinite set: there is an increasing u with
// s an initial segment of u and t an initial segment of u minus its head.
// Closed form for increasing sequences: the tails must be comparable as
// initial segments, and when s is a singleton u's second entry is t's head,
// which must exceed s's only entry.
bool triangle(const FinSeq& s, const FinSeq& t);

// A finite set of members intended as a block/barrier fragment over the base
// window {0..window}.
struct BarrierFragment {
    std::vector<FinSeq> members; // sorted, unique
    std::uint32_t window = 0;

    std::vector<std::uint32_t> base() const;
    bool contains(const FinSeq& s) const;
    void canonicalize(); // sort + dedupe
};

struct Violation {
    std::string condition; // "1", "2", "3", "3'"
    bool soft = false;     // window-surrogate shortfall rather than a hard violation
    std::string detail;
};

struct VerifyReport {
    std::uint32_t window = 0;
    std::vector<std::uint32_t> base;
    std::vector<Violation> items;
    bool pass() const; // no hard violations
};

// Window-level checks of the block conditions: (1) is replaced by the
// surrogate "base reaches the end of the window", (2) by exhausting all
// increasing paths through the base (a path that runs out of window without
// meeting a member is a soft failure), (3) checked exactly.
VerifyReport verify_block_fragment(const BarrierFragment& B);
// Same with the subset antichain condition (3') in place of (3).
VerifyReport verify_barrier_fragment(const BarrierFragment& B);

struct RefineResult {
    BarrierFragment fragment;
    VerifyReport report; // on the possibly thinner sub-base
};

// Keeps the members that contain no other member as a proper subset, then
// thins the base until every increasing path meets the fragment.
RefineResult refine_block_to_barrier(const BarrierFragment& B);

// {s union t : s, t members, triangle(s, t)}.
BarrierFragment b_squared(const BarrierFragment& B);

// The unique pair (p0, p1) of members with u = p0 union p1 and
// triangle(p0, p1); uniqueness is established by exhausting all pairs.
std::pair<FinSeq, FinSeq> project(const FinSeq& u, const BarrierFragment& B);

// A map from fragment members into the universe of a presented quasi-order.
struct QArrayTable {
    BarrierFragment domain;
    std::vector<ElemId> values; // parallel to domain.members
    ElemId value_of(const FinSeq& s) const;
};

enum class ArrayKind { Bad, Perfect, Mixed };

struct ArrayClassification {
    ArrayKind kind = ArrayKind::Bad;
    // Some triangle pair whose values ascend, whenever one exists.
    std::optional<std::pair<FinSeq, FinSeq>> good_witness;
};

ArrayClassification classify_array(const QArrayTable& f, const QPresentation& Q);

// Coloring values are 1 or 2.
using Coloring = std::function<int(const FinSeq&)>;

// Largest homogeneous sub-base of size >= target, lexicographically least
// among those of maximal size: H is a subset of the base whose induced
// sub-fragment {s in B : s subset H} is nonempty and monochromatic.
// Exhaustive over subsets, so the base is capped at 26 elements.
std::optional<std::vector<std::uint32_t>> homogeneous_sub_base(const BarrierFragment& B,
                                                               const Coloring& color,
                                                               std::size_t target);
// Serial reference implementation with identical output, kept for testing
// and benchmarking against the parallel kernel.
std::optional<std::vector<std::uint32_t>> homogeneous_sub_base_serial(
    const BarrierFragment& B, const Coloring& color, std::size_t target);

struct PerfectRefinement {
    std::vector<std::uint32_t> base;
    BarrierFragment fragment; // induced sub-fragment of the array's domain
    ArrayKind kind;           // Bad or Perfect
};

// Colors the squared fragment by whether the array ascends across each
// triangle pair and pulls a homogeneous sub-base back to the domain.
std::optional<PerfectRefinement> perfect_refine(const QArrayTable& f, const QPresentation& Q,
                                                std::size_t target = 2);

// `uniform:k:N` (all k-element subsets of {0..N}) and `rankomega:N`
// (the fragment of {s : lh(s) = s(0)+1} with entries in {0..N}).
BarrierFragment builtin_fragment(std::string_view spec);

// One member per line as space-separated naturals; '#' comments.
BarrierFragment load_fragment(std::istream& in, std::uint32_t window);

} // namespace bqo
