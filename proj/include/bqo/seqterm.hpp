#pragma once

#include "bqo/ordinal.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bqo {

using ElemId = std::uint32_t;

// A presented quasi-order: a finite named universe with a decision matrix for
// the order relation and an optional auxiliary strict relation used by the
// minimality engine.  Both relations are stored reflexively/transitively
// closed (the strict one transitively only).
class QPresentation {
public:
    QPresentation() = default;

    // `elems` name the universe; `leq`/`lt` are generating facts, closed at
    // construction.  Throws if lt is incompatible with leq or cyclic.
    static QPresentation from_facts(
        const std::vector<std::string>& elems,
        const std::vector<std::pair<std::string, std::string>>& leq,
        const std::vector<std::pair<std::string, std::string>>& lt = {});

    // File format: lines `elem a b ...`, `leq a b`, `lt a b`; '#' comments.
    static QPresentation load(std::istream& in);

    std::size_t size() const { return names_.size(); }
    std::optional<ElemId> id_of(std::string_view name) const;
    const std::string& name_of(ElemId id) const;

    bool leq(ElemId a, ElemId b) const;
    bool has_lt() const { return has_lt_; }
    bool lt(ElemId a, ElemId b) const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, ElemId> ids_;
    std::vector<std::vector<char>> leq_;
    std::vector<std::vector<char>> lt_;
    bool has_lt_ = false;
};

// A finitely presented countable transfinite sequence over a quasi-order:
// a single element, a finite concatenation, or the endless repetition of a
// finite cycle of terms.  Normal form: no Concat directly inside Concat,
// Concat has >= 2 parts, Empty appears only at the root.
class SeqTerm {
public:
    enum class Kind { Empty, Atom, Concat, OmegaRep };

    SeqTerm() : kind_(Kind::Empty) {}

    static SeqTerm empty() { return SeqTerm{}; }
    static SeqTerm atom(ElemId q);
    static SeqTerm concat(std::vector<SeqTerm> parts);
    static SeqTerm omega_rep(std::vector<SeqTerm> cycle);

    Kind kind() const { return kind_; }
    ElemId atom_value() const;
    const std::vector<SeqTerm>& parts() const { return parts_; }

    bool is_finite() const; // no OmegaRep anywhere below
    bool operator==(const SeqTerm& other) const;

private:
    Kind kind_;
    ElemId atom_ = 0;
    std::vector<SeqTerm> parts_; // Concat parts or OmegaRep cycle
};

// Ordinal length of the denoted sequence.
Ordinal length(const SeqTerm& t);

// The element at ordinal position `pos` (pos < length(t)).
ElemId atom_at(const SeqTerm& t, const Ordinal& pos);

// Restriction of t to positions [from, to).  Requires from < to <= length(t).
// Bounds that cannot be realized by term surgery are rejected with
// SurgeryError; plain range violations with std::invalid_argument.
SeqTerm restrict_term(const SeqTerm& t, const Ordinal& from, const Ordinal& to);

struct SurgeryError : std::runtime_error {
    explicit SurgeryError(const std::string& what) : std::runtime_error(what) {}
};

// Witness for an embedding of s into t: mirrors the shape of s.  Atom nodes
// record the target position of the canonical (leftmost) embedding; OmegaRep
// nodes record one witness per cycle pass up to the first repeated target
// cursor state, whose index is loop_start.
struct EmbeddingWitness {
    struct Node {
        SeqTerm::Kind kind = SeqTerm::Kind::Empty;
        Ordinal pos;                 // Atom
        std::vector<Node> children;  // Concat: one per part
        std::vector<Node> passes;    // OmegaRep: cycle entries in pass order
        std::size_t loop_start = 0;  // OmegaRep: pass index where the cursor state repeats
        Ordinal sup;                 // OmegaRep: least upper bound of pass ends
    };
    Node root;
    Ordinal end; // cursor after the embedding (sup of image positions + 1 at successors)
};

// Decides embeddability of s into t over Q by the canonical leftmost
// strategy; definitive for this term class.  Atoms must lie in Q's universe.
std::optional<EmbeddingWitness> decide_embed(const SeqTerm& s, const SeqTerm& t,
                                             const QPresentation& Q);

// Pure witness checker: positions in range and strictly increasing, related
// atoms satisfy leq, loop states genuinely repeat, and every atom position is
// the least admissible one (so a valid witness is unique).
bool check_embedding(const EmbeddingWitness& w, const SeqTerm& s, const SeqTerm& t,
                     const QPresentation& Q);

// Least cursor after embedding s into t starting at/after `from`; nullopt if
// no embedding exists.  An end equal to length(t) means every embedding uses
// target positions cofinally.
std::optional<Ordinal> embed_end(const SeqTerm& s, const SeqTerm& t,
                                 const Ordinal& from, const QPresentation& Q);

// Quasi-monotonicity of the omega-sum prefix[0],...,prefix[k-1],cycle^w:
// cycle entries recur forever, so only prefix entries need a later home.
bool is_quasi_monotonic(std::span<const SeqTerm> prefix, std::span<const SeqTerm> cycle,
                        const QPresentation& Q);

// Certificate that a term denotes a hereditarily indecomposable sequence:
// the witness tree with interval maps, one period of children per repetition
// node.  Children of later periods are translates of the recorded ones.
struct HCertificate {
    struct Node {
        SeqTerm term;
        Ordinal alpha, beta;
        std::size_t period = 0;     // 0 = endnode
        std::vector<Node> children; // first period
    };
    Node root;
};

struct ExpandedHNode {
    std::vector<std::size_t> position; // tree coordinates
    Ordinal alpha, beta;
    SeqTerm term;
    bool endnode = false;
};

std::optional<HCertificate> h_certificate(const SeqTerm& t);

// Materializes the certificate tree to `depth` levels with `breadth` children
// per non-endnode, with absolute interval maps.
std::vector<ExpandedHNode> expand_h_certificate(const HCertificate& cert,
                                                std::size_t depth, std::size_t breadth);

// Splits t into finitely many parts whose roots are not Concat; their
// concatenation is t atom-for-atom and their lengths add up to length(t).
std::vector<SeqTerm> hi_decompose(const SeqTerm& t);

// prefix[0] ... prefix[k-1] cycle[0] cycle[1] ... cycle[0] ... repeated.
struct OmegaSum {
    std::vector<SeqTerm> prefix;
    std::vector<SeqTerm> cycle; // nonempty
    SeqTerm denote() const;
    const SeqTerm& part(std::size_t n) const;
    std::size_t distinct_parts() const { return prefix.size() + cycle.size(); }
};

// Least n0 such that s.part(n0) embeds into no finite prefix of the target
// sum.  Requires the target quasi-monotonic and the full sums non-embeddable.
std::size_t find_blocking_index(const OmegaSum& s, const OmegaSum& t,
                                const QPresentation& Q);

// Atoms of a finite term, left to right; throws on omega repetitions.
std::vector<ElemId> finite_atoms(const SeqTerm& t);
// The finite term with exactly these atoms.
SeqTerm term_of_atoms(std::span<const ElemId> atoms);

// S-expression syntax: `(atom <name>)`, `(cat <t>...)`, `(rep <t>...)`.
// `(cat)` denotes the empty sequence.
std::string to_sexpr(const SeqTerm& t, const QPresentation& Q);
SeqTerm parse_sexpr(std::string_view text, const QPresentation& Q);

} // namespace bqo
