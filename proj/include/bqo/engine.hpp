#pragma once

#include "bqo/barrier.hpp"
#include "bqo/seqterm.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bqo {

// Budget for the minimality searches: fuel counts probe expansions,
// probe_depth bounds the extendability lookahead.
struct SearchBudget {
    std::uint64_t fuel = 0;
    std::uint32_t probe_depth = 0;

    void validate() const {
        if (fuel == 0 || probe_depth == 0)
            throw std::invalid_argument("search budget must be positive");
    }
};

enum class StepProvenance { Certified, FuelTruncated };

inline const char* to_string(StepProvenance p) {
    return p == StepProvenance::Certified ? "certified" : "fuel-truncated";
}

// A quasi-order together with the auxiliary strict relation the minimality
// engine descends along.  strictly_below(q) must list every q' <' q;
// encode is an injective canonical key used for deduplication and tie-breaks.
template <class E>
struct QuasiOrderOps {
    std::function<bool(const E&, const E&)> leq;
    std::function<std::vector<E>(const E&)> strictly_below;
    std::function<std::string(const E&)> encode;
};

template <class E>
struct MinimalStep {
    std::size_t index = 0; // position in the emitted sequence
    E value;
    StepProvenance provenance = StepProvenance::Certified;
};

template <class E>
struct MinimalBadResult {
    std::vector<MinimalStep<E>> steps;
    bool aborted = false; // stopped before the whole seed was processed
};

template <class E>
struct ArrayStep {
    FinSeq site;
    E value;
    StepProvenance provenance = StepProvenance::Certified;
};

template <class E>
struct MinimalBadArrayResult {
    std::vector<ArrayStep<E>> steps;
    bool aborted = false;
};

namespace detail {

// sites ordered by (max entry, then entries lexicographically)
inline bool site_before(const FinSeq& a, const FinSeq& b) {
    if (a.max() != b.max()) return a.max() < b.max();
    return a.entries() < b.entries();
}

template <class E>
class MinimalEngine {
public:
    MinimalEngine(const QuasiOrderOps<E>& ops, SearchBudget budget)
        : ops_(ops), budget_(budget) {
        budget.validate();
        if (!ops_.strictly_below)
            throw std::invalid_argument("minimality engine: auxiliary relation missing");
        if (!ops_.leq || !ops_.encode)
            throw std::invalid_argument("minimality engine: incomplete quasi-order");
    }

    // every element <='-below e, including e, deduplicated, sorted by encode
    const std::vector<E>& below_closure(const E& e) {
        auto key = ops_.encode(e);
        auto it = below_memo_.find(key);
        if (it != below_memo_.end()) return it->second;
        std::vector<E> out{e};
        std::set<std::string> seen{key};
        std::size_t head = 0;
        while (head < out.size()) {
            for (auto& d : ops_.strictly_below(out[head])) {
                auto dk = ops_.encode(d);
                if (seen.insert(dk).second) out.push_back(std::move(d));
            }
            ++head;
        }
        std::sort(out.begin(), out.end(), [&](const E& a, const E& b) {
            return ops_.encode(a) < ops_.encode(b);
        });
        return below_memo_.emplace(std::move(key), std::move(out)).first->second;
    }

    bool strictly_under(const E& a, const E& b) {
        auto key = ops_.encode(a);
        if (key == ops_.encode(b)) return false;
        for (const auto& d : below_closure(b))
            if (ops_.encode(d) == key) return true;
        return false;
    }

    // index of the minimal extendable candidate, ties broken by encode
    template <class C>
    std::size_t pick_minimal(const std::vector<C>& ext) {
        std::vector<std::size_t> minimal;
        for (std::size_t i = 0; i < ext.size(); ++i) {
            bool is_min = true;
            for (std::size_t j = 0; j < ext.size() && is_min; ++j)
                if (j != i && strictly_under(ext[j].value, ext[i].value)) is_min = false;
            if (is_min) minimal.push_back(i);
        }
        if (minimal.empty())
            throw std::invalid_argument(
                "minimality engine: auxiliary relation is cyclic among candidates");
        std::size_t pick = minimal.front();
        for (std::size_t i : minimal)
            if (ops_.encode(ext[i].value) < ops_.encode(ext[pick].value)) pick = i;
        return pick;
    }

    bool spend() {
        if (fuel_used_ >= budget_.fuel) return false;
        ++fuel_used_;
        return true;
    }

    const QuasiOrderOps<E>& ops_;
    SearchBudget budget_;
    std::uint64_t fuel_used_ = 0;
    std::map<std::string, std::vector<E>> below_memo_;
};

} // namespace detail

// Replays the minimal-bad-sequence construction against a finite seed prefix:
// position by position, the chosen value is minimal along the auxiliary
// relation among the candidates below the seed value that still extend to a
// bad sequence within the probe lookahead.  The report records per position
// whether that extendability was fully probed or cut off by fuel.
template <class E>
MinimalBadResult<E> minimal_bad_sequence(const QuasiOrderOps<E>& ops,
                                         const std::vector<E>& seed, SearchBudget budget) {
    budget.validate();
    detail::MinimalEngine<E> eng(ops, budget);
    for (std::size_t i = 0; i < seed.size(); ++i)
        for (std::size_t j = i + 1; j < seed.size(); ++j)
            if (ops.leq(seed[i], seed[j]))
                throw std::invalid_argument("minimal_bad_sequence: seed is not bad");

    std::vector<E> chosen;
    MinimalBadResult<E> out;

    auto bad_with = [&](const std::vector<E>& prefix, const E& q) {
        for (const auto& p : prefix)
            if (ops.leq(p, q)) return false;
        return true;
    };

    // can `prefix` continue badly for `depth` more positions, staying below
    // the seed pointwise?
    std::function<bool(std::vector<E>&, std::size_t, std::uint32_t, bool&)> extendable =
        [&](std::vector<E>& prefix, std::size_t next, std::uint32_t depth,
            bool& truncated) -> bool {
        if (depth == 0 || next >= seed.size()) return true;
        for (const auto& cand : eng.below_closure(seed[next])) {
            if (!bad_with(prefix, cand)) continue;
            if (!eng.spend()) {
                truncated = true;
                return true;
            }
            prefix.push_back(cand);
            bool ok = extendable(prefix, next + 1, depth - 1, truncated);
            prefix.pop_back();
            if (ok) return true;
        }
        return false;
    };

    for (std::size_t k = 0; k < seed.size(); ++k) {
        struct Candidate {
            E value;
            bool truncated;
        };
        std::vector<Candidate> ext;
        for (const auto& cand : eng.below_closure(seed[k])) {
            if (!bad_with(chosen, cand)) continue;
            bool truncated = false;
            std::vector<E> probe(chosen);
            probe.push_back(cand);
            if (extendable(probe, k + 1, budget.probe_depth, truncated))
                ext.push_back({cand, truncated});
        }
        if (ext.empty()) {
            out.aborted = true;
            break;
        }
        std::size_t pick = eng.pick_minimal(ext);
        chosen.push_back(ext[pick].value);
        out.steps.push_back({k, ext[pick].value,
                             ext[pick].truncated ? StepProvenance::FuelTruncated
                                                 : StepProvenance::Certified});
    }
    return out;
}

// Two-stage site/value selection over a fragment-indexed bad array: per step
// the unused site with the least maximum (ties lexicographic) that admits an
// extendable value, then the minimal such value along the auxiliary relation.
template <class E>
MinimalBadArrayResult<E> locally_minimal_bad_array(
    const QuasiOrderOps<E>& ops, const std::vector<std::pair<FinSeq, E>>& seed,
    SearchBudget budget) {
    budget.validate();
    detail::MinimalEngine<E> eng(ops, budget);

    std::vector<std::pair<FinSeq, E>> sites(seed);
    std::sort(sites.begin(), sites.end(), [](const auto& a, const auto& b) {
        return detail::site_before(a.first, b.first);
    });
    for (const auto& [s, sv] : sites)
        for (const auto& [t, tv] : sites)
            if (triangle(s, t) && ops.leq(sv, tv))
                throw std::invalid_argument("locally_minimal_bad_array: seed is not bad");

    std::vector<char> used(sites.size(), 0);
    std::vector<std::pair<FinSeq, E>> chosen;
    MinimalBadArrayResult<E> out;

    auto bad_with = [&](const std::vector<std::pair<FinSeq, E>>& prefix, const FinSeq& s,
                        const E& q) {
        for (const auto& [site, v] : prefix) {
            if (triangle(site, s) && ops.leq(v, q)) return false;
            if (triangle(s, site) && ops.leq(q, v)) return false;
        }
        return true;
    };

    auto in_prefix = [&](const std::vector<std::pair<FinSeq, E>>& prefix, const FinSeq& s) {
        for (const auto& [site, v] : prefix)
            if (site == s) return true;
        return false;
    };

    // assign values to `depth` more unused sites, in site order
    std::function<bool(std::vector<std::pair<FinSeq, E>>&, std::uint32_t, bool&)>
        extendable = [&](std::vector<std::pair<FinSeq, E>>& prefix, std::uint32_t depth,
                         bool& truncated) -> bool {
        if (depth == 0) return true;
        std::size_t next = sites.size();
        for (std::size_t i = 0; i < sites.size(); ++i)
            if (!used[i] && !in_prefix(prefix, sites[i].first)) {
                next = i;
                break;
            }
        if (next == sites.size()) return true; // nothing left to probe
        for (const auto& cand : eng.below_closure(sites[next].second)) {
            if (!bad_with(prefix, sites[next].first, cand)) continue;
            if (!eng.spend()) {
                truncated = true;
                return true;
            }
            prefix.emplace_back(sites[next].first, cand);
            bool ok = extendable(prefix, depth - 1, truncated);
            prefix.pop_back();
            if (ok) return true;
        }
        return false;
    };

    for (std::size_t step = 0; step < sites.size(); ++step) {
        struct Candidate {
            E value;
            bool truncated;
        };
        std::size_t site_idx = sites.size();
        std::vector<Candidate> ext;
        // first unused site (in least-max order) admitting an extendable value
        for (std::size_t i = 0; i < sites.size() && ext.empty(); ++i) {
            if (used[i]) continue;
            for (const auto& cand : eng.below_closure(sites[i].second)) {
                if (!bad_with(chosen, sites[i].first, cand)) continue;
                bool truncated = false;
                std::vector<std::pair<FinSeq, E>> probe(chosen);
                probe.emplace_back(sites[i].first, cand);
                if (extendable(probe, budget.probe_depth, truncated))
                    ext.push_back({cand, truncated});
            }
            if (!ext.empty()) site_idx = i;
        }
        if (ext.empty()) {
            out.aborted = true;
            break;
        }
        std::size_t pick = eng.pick_minimal(ext);
        used[site_idx] = 1;
        chosen.emplace_back(sites[site_idx].first, ext[pick].value);
        out.steps.push_back({sites[site_idx].first, ext[pick].value,
                             ext[pick].truncated ? StepProvenance::FuelTruncated
                                                 : StepProvenance::Certified});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Good-pair search over streams of finite sequences

struct GoodPair {
    std::size_t i = 0, j = 0; // stream indices, i < j
    EmbeddingWitness witness;
};

// Elements on demand; nullopt = end of stream.
using TermStream = std::function<std::optional<SeqTerm>(std::size_t)>;

// Repeatedly scans a window of the stream for an ascending pair; on an
// all-bad window splits off the last elements, refines the window to a
// sub-window where the split-off heads ascend everywhere, and recurses on
// the shortened words.  nullopt only ever means the budget or the stream ran
// out, never a refutation.
std::optional<GoodPair> higman_refute(const QPresentation& Q, const TermStream& stream,
                                      SearchBudget budget);
std::optional<GoodPair> higman_refute(const QPresentation& Q,
                                      const std::vector<SeqTerm>& stream,
                                      SearchBudget budget);

// Ready-made element adapters for the engine.

// Elements of a finite presented universe, by name; the auxiliary relation is
// the presentation's lt table.
QuasiOrderOps<std::string> presented_ops(const QPresentation& Q);

// Finite sequences over a presented universe under embeddability, descending
// along proper initial segments.
QuasiOrderOps<SeqTerm> higman_sequence_ops(const QPresentation& Q);

} // namespace bqo
