#include "bqo/engine.hpp"

namespace bqo {

namespace {

struct RefuteCtx {
    const QPresentation& Q;
    const TermStream& stream;
    std::uint64_t fuel;
    std::vector<SeqTerm> pulled;
    bool stream_done = false;

    bool pull(std::size_t upto) {
        while (pulled.size() < upto && !stream_done) {
            auto t = stream(pulled.size());
            if (!t) {
                stream_done = true;
                break;
            }
            if (!t->is_finite())
                throw std::invalid_argument("refute: stream elements must be finite");
            pulled.push_back(std::move(*t));
        }
        return pulled.size() >= upto;
    }

    bool spend(std::uint64_t n = 1) {
        if (fuel < n) return false;
        fuel -= n;
        return true;
    }

    enum class Outcome { Found, Dead, Exhausted };

    // One decomposition level: scan for an ascending pair; otherwise drop the
    // last elements and recurse on a sub-window where the drops ascend.
    Outcome attempt(const std::vector<std::size_t>& indices,
                    const std::vector<std::vector<ElemId>>& words,
                    std::pair<std::size_t, std::size_t>& res) {
        for (std::size_t j = 1; j < indices.size(); ++j)
            for (std::size_t i = 0; i < j; ++i) {
                if (!spend()) return Outcome::Exhausted;
                if (decide_embed(term_of_atoms(words[i]), term_of_atoms(words[j]), Q)) {
                    res = {indices[i], indices[j]};
                    return Outcome::Found;
                }
            }
        // every pair is bad; a fully scanned empty word would have matched
        for (const auto& w : words)
            if (w.empty()) return Outcome::Dead;
        std::vector<std::vector<ElemId>> heads(words);
        BarrierFragment dom;
        dom.window = static_cast<std::uint32_t>(indices.back());
        QArrayTable tails;
        for (std::size_t i = 0; i < indices.size(); ++i) {
            dom.members.push_back(FinSeq({static_cast<std::uint32_t>(indices[i])}));
            heads[i].pop_back();
            tails.values.push_back(words[i].back());
        }
        tails.domain = dom;
        if (!spend(indices.size() * indices.size())) return Outcome::Exhausted;
        auto refined = perfect_refine(tails, Q, 2);
        if (!refined || refined->kind != ArrayKind::Perfect) return Outcome::Dead;
        std::vector<std::size_t> sub_indices;
        std::vector<std::vector<ElemId>> sub_words;
        for (const auto& m : refined->fragment.members) {
            std::size_t idx = m(0);
            auto at = std::find(indices.begin(), indices.end(), idx);
            sub_indices.push_back(idx);
            sub_words.push_back(heads[static_cast<std::size_t>(at - indices.begin())]);
        }
        if (sub_indices.size() < 2) return Outcome::Dead;
        return attempt(sub_indices, sub_words, res);
    }
};

} // namespace

std::optional<GoodPair> higman_refute(const QPresentation& Q, const TermStream& stream,
                                      SearchBudget budget) {
    budget.validate();
    constexpr std::size_t kMaxWindow = 24; // homogeneous search is exhaustive
    RefuteCtx ctx{Q, stream, budget.fuel, {}, false};
    std::size_t window = 4;
    while (true) {
        ctx.pull(window);
        if (ctx.pulled.size() < 2) return std::nullopt;
        std::vector<std::size_t> indices;
        std::vector<std::vector<ElemId>> words;
        for (std::size_t i = 0; i < ctx.pulled.size(); ++i) {
            indices.push_back(i);
            words.push_back(finite_atoms(ctx.pulled[i]));
        }
        std::pair<std::size_t, std::size_t> res;
        auto outcome = ctx.attempt(indices, words, res);
        if (outcome == RefuteCtx::Outcome::Found) {
            auto witness = decide_embed(ctx.pulled[res.first], ctx.pulled[res.second], Q);
            if (!witness)
                throw std::logic_error("refute: lifted pair failed re-verification");
            return GoodPair{res.first, res.second, std::move(*witness)};
        }
        if (outcome == RefuteCtx::Outcome::Exhausted) return std::nullopt;
        if (ctx.stream_done && ctx.pulled.size() < window) return std::nullopt;
        if (window >= kMaxWindow) return std::nullopt;
        window = std::min(window * 2, kMaxWindow);
    }
}

std::optional<GoodPair> higman_refute(const QPresentation& Q,
                                      const std::vector<SeqTerm>& stream,
                                      SearchBudget budget) {
    return higman_refute(
        Q,
        [&stream](std::size_t i) -> std::optional<SeqTerm> {
            if (i >= stream.size()) return std::nullopt;
            return stream[i];
        },
        budget);
}

QuasiOrderOps<std::string> presented_ops(const QPresentation& Q) {
    if (!Q.has_lt())
        throw std::invalid_argument("presented_ops: the presentation has no lt relation");
    const QPresentation* q = &Q;
    auto resolve = [q](const std::string& name) {
        auto id = q->id_of(name);
        if (!id) throw std::invalid_argument("element '" + name + "' not in the universe");
        return *id;
    };
    QuasiOrderOps<std::string> ops;
    ops.leq = [q, resolve](const std::string& a, const std::string& b) {
        return q->leq(resolve(a), resolve(b));
    };
    ops.strictly_below = [q, resolve](const std::string& a) {
        std::vector<std::string> out;
        ElemId ia = resolve(a);
        for (ElemId e = 0; e < q->size(); ++e)
            if (q->lt(e, ia)) out.push_back(q->name_of(e));
        return out;
    };
    ops.encode = [](const std::string& a) { return a; };
    return ops;
}

QuasiOrderOps<SeqTerm> higman_sequence_ops(const QPresentation& Q) {
    const QPresentation* q = &Q;
    QuasiOrderOps<SeqTerm> ops;
    ops.leq = [q](const SeqTerm& s, const SeqTerm& t) {
        return decide_embed(s, t, *q).has_value();
    };
    ops.strictly_below = [](const SeqTerm& t) {
        auto atoms = finite_atoms(t);
        std::vector<SeqTerm> out;
        for (std::size_t k = 0; k < atoms.size(); ++k)
            out.push_back(term_of_atoms(std::span(atoms.data(), k)));
        return out;
    };
    ops.encode = [q](const SeqTerm& t) { return to_sexpr(t, *q); };
    return ops;
}

} // namespace bqo
