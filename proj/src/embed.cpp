#include "bqo/seqterm.hpp"

#include "term_nav.hpp"

#include <functional>
#include <map>

namespace bqo {

namespace {

std::size_t structure_size(const SeqTerm& t) {
    std::size_t n = 1;
    for (const auto& p : t.parts()) n += structure_size(p);
    return n;
}

void validate_atoms(const SeqTerm& t, const QPresentation& Q) {
    if (t.kind() == SeqTerm::Kind::Atom) {
        if (t.atom_value() >= Q.size())
            throw std::invalid_argument("embed: atom outside the presented universe");
        return;
    }
    for (const auto& p : t.parts()) validate_atoms(p, Q);
}

// Search state over a fixed target term.  Cursor positions are ordinals;
// their structural projection (repetition counters dropped) ranges over a
// finite set, which is what makes the omega-repetition loop detectable.
struct EmbedCtx {
    const QPresentation& Q;
    const SeqTerm* target;
    Ordinal target_len;
    std::size_t state_bound;
    std::map<const SeqTerm*, Ordinal> len_memo;
    std::map<const SeqTerm*, std::vector<Ordinal>> starts_memo;
    std::map<std::pair<const SeqTerm*, ElemId>, std::optional<Ordinal>> first_memo;

    EmbedCtx(const SeqTerm& t, const QPresentation& q)
        : Q(q), target(&t), target_len(length(t)), state_bound(4 * structure_size(t) + 8) {}

    const Ordinal& len(const SeqTerm* t) {
        auto it = len_memo.find(t);
        if (it == len_memo.end()) it = len_memo.emplace(t, length(*t)).first;
        return it->second;
    }
    const std::vector<Ordinal>& starts(const SeqTerm* t) {
        auto it = starts_memo.find(t);
        if (it == starts_memo.end())
            it = starts_memo.emplace(t, nav::starts(t->parts())).first;
        return it->second;
    }

    // Least relative position >= `from` in *t whose atom b satisfies leq(a,b).
    std::optional<Ordinal> seek_in(const SeqTerm* t, const Ordinal& from, ElemId a) {
        if (compare(from, len(t)) != Cmp::LT) return std::nullopt;
        switch (t->kind()) {
            case SeqTerm::Kind::Empty: return std::nullopt;
            case SeqTerm::Kind::Atom:
                if (Q.leq(a, t->atom_value())) return Ordinal{};
                return std::nullopt;
            case SeqTerm::Kind::Concat: {
                const auto& st = starts(t);
                std::size_t i0 = nav::part_of(st, from);
                if (auto r = seek_in(&t->parts()[i0], nav::sub(st[i0], from), a))
                    return add(st[i0], *r);
                for (std::size_t i = i0 + 1; i < t->parts().size(); ++i)
                    if (auto r = first_match(&t->parts()[i], a)) return add(st[i], *r);
                return std::nullopt;
            }
            case SeqTerm::Kind::OmegaRep: {
                const auto& st = starts(t);
                const Ordinal& period = st.back();
                auto [q, off] = nav::divmod(period, from);
                if (auto r = seek_in_period(t, off, a))
                    return add(nat_multiple(period, q), *r);
                // no match from `off` on; one fresh period decides all later ones
                if (auto r = first_period_match(t, a))
                    return add(nat_multiple(period, q + 1), *r);
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

    std::optional<Ordinal> seek_in_period(const SeqTerm* rep, const Ordinal& off, ElemId a) {
        const auto& st = starts(rep);
        if (compare(off, st.back()) != Cmp::LT) return std::nullopt;
        std::size_t i0 = nav::part_of(st, off);
        if (auto r = seek_in(&rep->parts()[i0], nav::sub(st[i0], off), a))
            return add(st[i0], *r);
        for (std::size_t i = i0 + 1; i < rep->parts().size(); ++i)
            if (auto r = first_match(&rep->parts()[i], a)) return add(st[i], *r);
        return std::nullopt;
    }

    std::optional<Ordinal> first_period_match(const SeqTerm* rep, ElemId a) {
        const auto& st = starts(rep);
        for (std::size_t i = 0; i < rep->parts().size(); ++i)
            if (auto r = first_match(&rep->parts()[i], a)) return add(st[i], *r);
        return std::nullopt;
    }

    std::optional<Ordinal> first_match(const SeqTerm* t, ElemId a) {
        auto key = std::make_pair(t, a);
        auto it = first_memo.find(key);
        if (it != first_memo.end()) return it->second;
        auto r = seek_in(t, Ordinal{}, a);
        first_memo.emplace(key, r);
        return r;
    }

    // Structural projection of an absolute cursor position: the path through
    // the term with repetition counters dropped.
    std::vector<std::int64_t> struct_key(const Ordinal& p) {
        std::vector<std::int64_t> out;
        key_rec(target, p, out);
        return out;
    }
    void key_rec(const SeqTerm* t, const Ordinal& p, std::vector<std::int64_t>& out) {
        if (p == len(t)) {
            out.push_back(-1);
            return;
        }
        switch (t->kind()) {
            case SeqTerm::Kind::Empty: out.push_back(-1); return;
            case SeqTerm::Kind::Atom: out.push_back(-2); return;
            case SeqTerm::Kind::Concat: {
                const auto& st = starts(t);
                std::size_t i = nav::part_of(st, p);
                out.push_back(static_cast<std::int64_t>(i));
                key_rec(&t->parts()[i], nav::sub(st[i], p), out);
                return;
            }
            case SeqTerm::Kind::OmegaRep: {
                const auto& st = starts(t);
                auto [q, off] = nav::divmod(st.back(), p);
                (void)q;
                std::size_t i = nav::part_of(st, off);
                out.push_back(-3);
                out.push_back(static_cast<std::int64_t>(i));
                key_rec(&t->parts()[i], nav::sub(st[i], off), out);
                return;
            }
        }
    }

    // Given two structurally equal cursors pj < pk, the limit the loop
    // converges to: the end of the outermost repetition whose counter grew.
    Ordinal loop_sup(const Ordinal& pj, const Ordinal& pk) {
        return loop_sup_rec(target, Ordinal{}, pj, pk);
    }
    Ordinal loop_sup_rec(const SeqTerm* t, const Ordinal& abs_start, const Ordinal& pj,
                         const Ordinal& pk) {
        switch (t->kind()) {
            case SeqTerm::Kind::Concat: {
                const auto& st = starts(t);
                std::size_t i = nav::part_of(st, pj);
                return loop_sup_rec(&t->parts()[i], add(abs_start, st[i]),
                                    nav::sub(st[i], pj), nav::sub(st[i], pk));
            }
            case SeqTerm::Kind::OmegaRep: {
                const auto& st = starts(t);
                const Ordinal& period = st.back();
                auto [qj, offj] = nav::divmod(period, pj);
                auto [qk, offk] = nav::divmod(period, pk);
                if (qj != qk) return add(abs_start, omega_multiple(period));
                std::size_t i = nav::part_of(st, offj);
                Ordinal base = add(abs_start, add(nat_multiple(period, qj), st[i]));
                return loop_sup_rec(&t->parts()[i], base, nav::sub(st[i], offj),
                                    nav::sub(st[i], offk));
            }
            default:
                throw std::logic_error("embed: loop cursors coincide");
        }
    }

    struct NodeEnd {
        EmbeddingWitness::Node node;
        Ordinal end;
    };

    std::optional<NodeEnd> embed_from(const SeqTerm* s, const Ordinal& p) {
        NodeEnd r;
        r.node.kind = s->kind();
        switch (s->kind()) {
            case SeqTerm::Kind::Empty: r.end = p; return r;
            case SeqTerm::Kind::Atom: {
                auto pos = seek_in(target, p, s->atom_value());
                if (!pos) return std::nullopt;
                r.node.pos = *pos;
                r.end = add(*pos, Ordinal::natural(1));
                return r;
            }
            case SeqTerm::Kind::Concat: {
                Ordinal cur = p;
                for (const auto& part : s->parts()) {
                    auto c = embed_from(&part, cur);
                    if (!c) return std::nullopt;
                    r.node.children.push_back(std::move(c->node));
                    cur = std::move(c->end);
                }
                r.end = std::move(cur);
                return r;
            }
            case SeqTerm::Kind::OmegaRep: {
                const std::size_t m = s->parts().size();
                std::map<std::vector<std::int64_t>, std::pair<std::size_t, Ordinal>> seen;
                Ordinal cur = p;
                std::size_t pass = 0;
                while (true) {
                    if (pass % m == 0) {
                        auto key = struct_key(cur);
                        auto it = seen.find(key);
                        if (it != seen.end()) {
                            r.node.loop_start = it->second.first;
                            Ordinal sup = loop_sup(it->second.second, cur);
                            r.node.sup = sup;
                            r.end = std::move(sup);
                            return r;
                        }
                        if (seen.size() > state_bound)
                            throw std::logic_error("embed: repetition state not closing");
                        seen.emplace(std::move(key), std::make_pair(pass, cur));
                    }
                    auto c = embed_from(&s->parts()[pass % m], cur);
                    if (!c) return std::nullopt;
                    r.node.passes.push_back(std::move(c->node));
                    cur = std::move(c->end);
                    ++pass;
                }
            }
        }
        return std::nullopt;
    }

    // Witness checker.  Returns the cursor after the node, or nullopt when
    // some check fails.  Every atom image must be the least admissible
    // position, so a valid witness coincides with the canonical one.
    std::optional<Ordinal> verify_node(const EmbeddingWitness::Node& n, const SeqTerm* s,
                                       const Ordinal& cursor) {
        if (n.kind != s->kind()) return std::nullopt;
        switch (s->kind()) {
            case SeqTerm::Kind::Empty: return cursor;
            case SeqTerm::Kind::Atom: {
                if (compare(n.pos, target_len) != Cmp::LT) return std::nullopt;
                if (!Q.leq(s->atom_value(), atom_at(*target, n.pos))) return std::nullopt;
                auto canonical = seek_in(target, cursor, s->atom_value());
                if (!canonical || !(*canonical == n.pos)) return std::nullopt;
                return add(n.pos, Ordinal::natural(1));
            }
            case SeqTerm::Kind::Concat: {
                if (n.children.size() != s->parts().size()) return std::nullopt;
                Ordinal cur = cursor;
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    auto c = verify_node(n.children[i], &s->parts()[i], cur);
                    if (!c) return std::nullopt;
                    cur = std::move(*c);
                }
                return cur;
            }
            case SeqTerm::Kind::OmegaRep: {
                const std::size_t m = s->parts().size();
                if (n.passes.empty() || n.passes.size() % m != 0) return std::nullopt;
                if (n.loop_start % m != 0 || n.loop_start >= n.passes.size())
                    return std::nullopt;
                Ordinal cur = cursor;
                Ordinal at_loop_start;
                for (std::size_t i = 0; i < n.passes.size(); ++i) {
                    if (i == n.loop_start) at_loop_start = cur;
                    auto c = verify_node(n.passes[i], &s->parts()[i % m], cur);
                    if (!c) return std::nullopt;
                    cur = std::move(*c);
                }
                if (struct_key(at_loop_start) != struct_key(cur)) return std::nullopt;
                if (!(loop_sup(at_loop_start, cur) == n.sup)) return std::nullopt;
                return n.sup;
            }
        }
        return std::nullopt;
    }
};

} // namespace

std::optional<EmbeddingWitness> decide_embed(const SeqTerm& s, const SeqTerm& t,
                                             const QPresentation& Q) {
    validate_atoms(s, Q);
    validate_atoms(t, Q);
    EmbedCtx ctx(t, Q);
    auto r = ctx.embed_from(&s, Ordinal{});
    if (!r) return std::nullopt;
    return EmbeddingWitness{std::move(r->node), std::move(r->end)};
}

bool check_embedding(const EmbeddingWitness& w, const SeqTerm& s, const SeqTerm& t,
                     const QPresentation& Q) {
    validate_atoms(s, Q);
    validate_atoms(t, Q);
    EmbedCtx ctx(t, Q);
    auto end = ctx.verify_node(w.root, &s, Ordinal{});
    return end && *end == w.end;
}

std::optional<Ordinal> embed_end(const SeqTerm& s, const SeqTerm& t, const Ordinal& from,
                                 const QPresentation& Q) {
    validate_atoms(s, Q);
    validate_atoms(t, Q);
    EmbedCtx ctx(t, Q);
    auto r = ctx.embed_from(&s, from);
    if (!r) return std::nullopt;
    return r->end;
}

bool is_quasi_monotonic(std::span<const SeqTerm> prefix, std::span<const SeqTerm> cycle,
                        const QPresentation& Q) {
    if (cycle.empty())
        throw std::invalid_argument("quasi-monotonicity: cycle must be nonempty");
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        bool ok = false;
        for (std::size_t j = i + 1; j < prefix.size() && !ok; ++j)
            ok = decide_embed(prefix[i], prefix[j], Q).has_value();
        for (std::size_t j = 0; j < cycle.size() && !ok; ++j)
            ok = decide_embed(prefix[i], cycle[j], Q).has_value();
        if (!ok) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Hereditary indecomposability certificates

namespace {

HCertificate::Node build_h_node(const SeqTerm& t, const Ordinal& alpha) {
    HCertificate::Node n;
    n.term = t;
    n.alpha = alpha;
    n.beta = add(alpha, length(t));
    if (t.kind() == SeqTerm::Kind::Atom) return n;
    // OmegaRep: one period of children, each an indecomposable-rooted part of
    // a cycle entry.
    std::vector<SeqTerm> parts;
    for (const auto& entry : t.parts())
        for (auto& piece : hi_decompose(entry)) parts.push_back(std::move(piece));
    n.period = parts.size();
    Ordinal off = alpha;
    for (const auto& p : parts) {
        n.children.push_back(build_h_node(p, off));
        off = add(off, length(p));
    }
    return n;
}

void expand_h_rec(const HCertificate::Node& n, std::vector<std::size_t>& pos,
                  const Ordinal& alpha, std::size_t depth, std::size_t breadth,
                  std::vector<ExpandedHNode>& out) {
    ExpandedHNode e;
    e.position = pos;
    e.alpha = alpha;
    e.beta = add(alpha, length(n.term));
    e.term = n.term;
    e.endnode = n.period == 0;
    out.push_back(std::move(e));
    if (depth == 0 || n.period == 0) return;
    Ordinal period_sum;
    std::vector<Ordinal> rel;
    rel.reserve(n.children.size());
    for (const auto& c : n.children) {
        rel.push_back(period_sum);
        period_sum = add(period_sum, length(c.term));
    }
    for (std::size_t idx = 0; idx < breadth; ++idx) {
        std::size_t k = idx % n.period;
        std::uint64_t q = idx / n.period;
        Ordinal child_alpha = add(alpha, add(nat_multiple(period_sum, q), rel[k]));
        pos.push_back(idx);
        expand_h_rec(n.children[k], pos, child_alpha, depth - 1, breadth, out);
        pos.pop_back();
    }
}

} // namespace

std::optional<HCertificate> h_certificate(const SeqTerm& t) {
    if (t.kind() == SeqTerm::Kind::Concat || t.kind() == SeqTerm::Kind::Empty)
        return std::nullopt;
    return HCertificate{build_h_node(t, Ordinal{})};
}

std::vector<ExpandedHNode> expand_h_certificate(const HCertificate& cert, std::size_t depth,
                                                std::size_t breadth) {
    std::vector<ExpandedHNode> out;
    std::vector<std::size_t> pos;
    expand_h_rec(cert.root, pos, cert.root.alpha, depth, breadth, out);
    return out;
}

// ---------------------------------------------------------------------------
// Blocking indices for non-embeddable omega-sums

std::size_t find_blocking_index(const OmegaSum& s, const OmegaSum& t,
                                const QPresentation& Q) {
    if (s.cycle.empty() || t.cycle.empty())
        throw std::invalid_argument("blocking index: presentations need nonempty cycles");
    if (!is_quasi_monotonic(t.prefix, t.cycle, Q))
        throw std::invalid_argument("blocking index: target sum is not quasi-monotonic");
    SeqTerm sigma = s.denote();
    SeqTerm tau = t.denote();
    if (decide_embed(sigma, tau, Q))
        throw std::invalid_argument("blocking index: the sums embed; nothing is blocked");
    Ordinal tau_len = length(tau);
    for (std::size_t n = 0; n < s.distinct_parts(); ++n) {
        auto end = embed_end(s.part(n), tau, Ordinal{}, Q);
        // Embeddable into some finite partial sum iff an embedding exists and
        // is not forced to use the target cofinally.
        bool blocked = !end || *end == tau_len;
        if (blocked) return n;
    }
    throw std::logic_error("blocking index: every part embeds finitely, contradicting "
                           "the non-embeddability precondition");
}

} // namespace bqo
