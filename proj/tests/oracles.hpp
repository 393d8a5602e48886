#pragma once

// Independent brute-force reference implementations used only by tests.
// These deliberately avoid the library's search machinery: embeddings are
// found by exhaustive backtracking over index maps, triangle by a direct
// witness search, leftmost paths by bounded enumeration.

#include "bqo/barrier.hpp"
#include "bqo/seqterm.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace bqo::oracles {

// Atoms of a finite term, left to right.
inline void flatten_finite(const SeqTerm& t, std::vector<ElemId>& out) {
    switch (t.kind()) {
        case SeqTerm::Kind::Empty: return;
        case SeqTerm::Kind::Atom: out.push_back(t.atom_value()); return;
        case SeqTerm::Kind::Concat:
            for (const auto& p : t.parts()) flatten_finite(p, out);
            return;
        case SeqTerm::Kind::OmegaRep:
            throw std::logic_error("oracle: term is not finite");
    }
}

inline std::vector<ElemId> flatten_finite(const SeqTerm& t) {
    std::vector<ElemId> out;
    flatten_finite(t, out);
    return out;
}

// Exhaustive backtracking: does word s embed into word t pointwise under leq?
inline bool embeds_bf(const std::vector<ElemId>& s, const std::vector<ElemId>& t,
                      const QPresentation& Q, std::size_t si = 0, std::size_t ti = 0) {
    if (si == s.size()) return true;
    for (std::size_t j = ti; j < t.size(); ++j)
        if (Q.leq(s[si], t[j]) && embeds_bf(s, t, Q, si + 1, j + 1)) return true;
    return false;
}

inline bool embeds_bf(const SeqTerm& s, const SeqTerm& t, const QPresentation& Q) {
    return embeds_bf(flatten_finite(s), flatten_finite(t), Q);
}

// All words over the given alphabet with length in [0, max_len].
inline std::vector<std::vector<ElemId>> all_words(std::size_t alphabet, std::size_t max_len) {
    std::vector<std::vector<ElemId>> out{{}};
    std::vector<std::vector<ElemId>> frontier{{}};
    for (std::size_t l = 1; l <= max_len; ++l) {
        std::vector<std::vector<ElemId>> next;
        for (const auto& w : frontier)
            for (ElemId c = 0; c < alphabet; ++c) {
                auto v = w;
                v.push_back(c);
                out.push_back(v);
                next.push_back(std::move(v));
            }
        frontier = std::move(next);
    }
    return out;
}

inline SeqTerm word_term(const std::vector<ElemId>& w) {
    std::vector<SeqTerm> parts;
    parts.reserve(w.size());
    for (ElemId c : w) parts.push_back(SeqTerm::atom(c));
    return SeqTerm::concat(std::move(parts));
}

// The first `count` atoms of a (possibly infinite) term.
inline std::vector<ElemId> enumerate_atoms(const SeqTerm& t, std::size_t count) {
    std::vector<ElemId> out;
    Ordinal len = length(t);
    for (std::size_t i = 0; i < count; ++i) {
        Ordinal pos = Ordinal::natural(i);
        if (compare(pos, len) != Cmp::LT) break;
        out.push_back(atom_at(t, pos));
    }
    return out;
}

// Definitional triangle: an increasing witness u with s init-seg u and
// t init-seg u minus its first element, searched over subsets of
// {0..max_elem} of length at most lh(s) + lh(t) + 1.
inline bool triangle_by_search(const FinSeq& s, const FinSeq& t, std::uint32_t max_elem) {
    std::size_t max_len = s.lh() + t.lh() + 1;
    std::vector<std::uint32_t> u;
    auto matches = [&]() {
        FinSeq cand(u);
        if (!s.init_seg_of(cand)) return false;
        FinSeq tail = cand.tail();
        return t.init_seg_of(tail);
    };
    // depth-first over strictly increasing sequences
    std::vector<std::uint32_t> stack;
    std::function<bool(std::uint32_t)> go = [&](std::uint32_t min_next) -> bool {
        if (!u.empty() && matches()) return true;
        if (u.size() >= max_len) return false;
        for (std::uint32_t v = min_next; v <= max_elem; ++v) {
            u.push_back(v);
            if (go(v + 1)) return true;
            u.pop_back();
        }
        return false;
    };
    return go(0);
}

// Random terms over a universe of `alphabet` elements.  Depth bounds the
// nesting; allow_rep false restricts to finite terms.
inline SeqTerm random_term(std::mt19937_64& rng, std::size_t alphabet, int depth,
                           bool allow_rep = true) {
    std::uniform_int_distribution<int> kind(0, allow_rep ? 2 : 1);
    std::uniform_int_distribution<ElemId> atom(0, static_cast<ElemId>(alphabet - 1));
    std::uniform_int_distribution<int> arity(1, 3);
    int k = depth == 0 ? 0 : kind(rng);
    if (k == 0) return SeqTerm::atom(atom(rng));
    int n = arity(rng);
    std::vector<SeqTerm> parts;
    for (int i = 0; i < n; ++i) parts.push_back(random_term(rng, alphabet, depth - 1, allow_rep));
    if (k == 1) {
        if (parts.size() == 1) parts.push_back(random_term(rng, alphabet, 0, allow_rep));
        return SeqTerm::concat(std::move(parts));
    }
    return SeqTerm::omega_rep(std::move(parts));
}

// Two-element universe {a, b} with a before b.
inline QPresentation q_ab() {
    return QPresentation::from_facts({"a", "b"}, {{"a", "b"}});
}

} // namespace bqo::oracles
