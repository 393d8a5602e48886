#include "bqo/seqterm.hpp"

#include "term_nav.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace bqo {

// ---------------------------------------------------------------------------
// QPresentation

QPresentation QPresentation::from_facts(
    const std::vector<std::string>& elems,
    const std::vector<std::pair<std::string, std::string>>& leq,
    const std::vector<std::pair<std::string, std::string>>& lt) {
    QPresentation q;
    for (const auto& e : elems) {
        if (q.ids_.count(e)) continue;
        q.ids_.emplace(e, static_cast<ElemId>(q.names_.size()));
        q.names_.push_back(e);
    }
    const std::size_t n = q.names_.size();
    q.leq_.assign(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) q.leq_[i][i] = 1;
    auto resolve = [&](const std::string& name) -> ElemId {
        auto it = q.ids_.find(name);
        if (it == q.ids_.end())
            throw std::invalid_argument("quasi-order: unknown element '" + name + "'");
        return it->second;
    };
    for (const auto& [a, b] : leq) q.leq_[resolve(a)][resolve(b)] = 1;
    // transitive closure
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (q.leq_[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (q.leq_[k][j]) q.leq_[i][j] = 1;
    if (!lt.empty()) {
        q.has_lt_ = true;
        q.lt_.assign(n, std::vector<char>(n, 0));
        for (const auto& [a, b] : lt) q.lt_[resolve(a)][resolve(b)] = 1;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (q.lt_[i][k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (q.lt_[k][j]) q.lt_[i][j] = 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (q.lt_[i][i])
                throw std::invalid_argument("quasi-order: lt relation has a cycle at '" +
                                            q.names_[i] + "'");
            for (std::size_t j = 0; j < n; ++j)
                if (q.lt_[i][j] && !q.leq_[i][j])
                    throw std::invalid_argument("quasi-order: lt fact " + q.names_[i] + " < " +
                                                q.names_[j] + " not compatible with leq");
        }
    }
    return q;
}

QPresentation QPresentation::load(std::istream& in) {
    std::vector<std::string> elems;
    std::vector<std::pair<std::string, std::string>> leq, lt;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string head;
        if (!(ss >> head)) continue;
        if (head == "elem") {
            std::string name;
            while (ss >> name) elems.push_back(name);
        } else if (head == "leq" || head == "lt") {
            std::string a, b, extra;
            if (!(ss >> a >> b) || (ss >> extra))
                throw std::invalid_argument("quasi-order file line " + std::to_string(lineno) +
                                            ": expected '" + head + " a b'");
            (head == "leq" ? leq : lt).emplace_back(a, b);
        } else {
            throw std::invalid_argument("quasi-order file line " + std::to_string(lineno) +
                                        ": unknown directive '" + head + "'");
        }
    }
    return from_facts(elems, leq, lt);
}

std::optional<ElemId> QPresentation::id_of(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const std::string& QPresentation::name_of(ElemId id) const {
    return names_.at(id);
}

bool QPresentation::leq(ElemId a, ElemId b) const {
    return leq_.at(a).at(b) != 0;
}

bool QPresentation::lt(ElemId a, ElemId b) const {
    if (!has_lt_) throw std::logic_error("quasi-order: no lt relation loaded");
    return lt_.at(a).at(b) != 0;
}

// ---------------------------------------------------------------------------
// SeqTerm construction

SeqTerm SeqTerm::atom(ElemId q) {
    SeqTerm t;
    t.kind_ = Kind::Atom;
    t.atom_ = q;
    return t;
}

SeqTerm SeqTerm::concat(std::vector<SeqTerm> parts) {
    std::vector<SeqTerm> flat;
    for (auto& p : parts) {
        switch (p.kind()) {
            case Kind::Empty: break;
            case Kind::Concat:
                for (auto& sub : p.parts_) flat.push_back(std::move(sub));
                break;
            default: flat.push_back(std::move(p));
        }
    }
    if (flat.empty()) return SeqTerm{};
    if (flat.size() == 1) return std::move(flat.front());
    SeqTerm t;
    t.kind_ = Kind::Concat;
    t.parts_ = std::move(flat);
    return t;
}

SeqTerm SeqTerm::omega_rep(std::vector<SeqTerm> cycle) {
    std::vector<SeqTerm> kept;
    for (auto& p : cycle)
        if (p.kind() != Kind::Empty) kept.push_back(std::move(p));
    if (kept.empty())
        throw std::invalid_argument("seqterm: omega repetition of an empty cycle");
    SeqTerm t;
    t.kind_ = Kind::OmegaRep;
    t.parts_ = std::move(kept);
    return t;
}

ElemId SeqTerm::atom_value() const {
    if (kind_ != Kind::Atom) throw std::logic_error("seqterm: atom_value on non-atom");
    return atom_;
}

bool SeqTerm::is_finite() const {
    if (kind_ == Kind::OmegaRep) return false;
    for (const auto& p : parts_)
        if (!p.is_finite()) return false;
    return true;
}

bool SeqTerm::operator==(const SeqTerm& other) const {
    if (kind_ != other.kind_) return false;
    if (kind_ == Kind::Atom) return atom_ == other.atom_;
    return parts_ == other.parts_;
}

// ---------------------------------------------------------------------------
// Length and position arithmetic

Ordinal length(const SeqTerm& t) {
    switch (t.kind()) {
        case SeqTerm::Kind::Empty: return Ordinal{};
        case SeqTerm::Kind::Atom: return Ordinal::natural(1);
        case SeqTerm::Kind::Concat: {
            Ordinal acc;
            for (const auto& p : t.parts()) acc = add(acc, length(p));
            return acc;
        }
        case SeqTerm::Kind::OmegaRep: {
            Ordinal cycle_sum;
            for (const auto& p : t.parts()) cycle_sum = add(cycle_sum, length(p));
            return omega_multiple(cycle_sum);
        }
    }
    throw std::logic_error("seqterm: bad kind");
}

namespace {

ElemId atom_at_rec(const SeqTerm& t, const Ordinal& pos) {
    switch (t.kind()) {
        case SeqTerm::Kind::Atom:
            return t.atom_value(); // pos == 0 by the range precondition
        case SeqTerm::Kind::Concat: {
            auto st = nav::starts(t.parts());
            std::size_t i = nav::part_of(st, pos);
            return atom_at_rec(t.parts()[i], nav::sub(st[i], pos));
        }
        case SeqTerm::Kind::OmegaRep: {
            auto st = nav::starts(t.parts());
            auto [q, off] = nav::divmod(st.back(), pos);
            (void)q;
            std::size_t i = nav::part_of(st, off);
            return atom_at_rec(t.parts()[i], nav::sub(st[i], off));
        }
        default: throw std::logic_error("seqterm: atom_at on empty term");
    }
}

} // namespace

ElemId atom_at(const SeqTerm& t, const Ordinal& pos) {
    if (compare(pos, length(t)) != Cmp::LT)
        throw std::invalid_argument("seqterm: position out of range");
    return atom_at_rec(t, pos);
}

// ---------------------------------------------------------------------------
// Restriction by term surgery

namespace {

constexpr std::uint64_t kMaxExpandedPeriods = 1u << 16;

// 0 <= from < to <= length(t)
SeqTerm slice(const SeqTerm& t, const Ordinal& from, const Ordinal& to) {
    if (from.is_zero() && to == length(t)) return t;
    switch (t.kind()) {
        case SeqTerm::Kind::Atom:
            return t; // the only sub-range of a single atom is the whole atom
        case SeqTerm::Kind::Concat: {
            auto st = nav::starts(t.parts());
            std::size_t ia = nav::part_of(st, from);
            // part holding the last position strictly below `to`
            std::size_t ib = nav::part_of(st, to);
            if (ib > 0 && st[ib] == to) --ib;
            Ordinal off_a = nav::sub(st[ia], from);
            Ordinal off_b = nav::sub(st[ib], to);
            if (ia == ib) return slice(t.parts()[ia], off_a, off_b);
            std::vector<SeqTerm> pieces;
            pieces.push_back(slice(t.parts()[ia], off_a, length(t.parts()[ia])));
            for (std::size_t i = ia + 1; i < ib; ++i) pieces.push_back(t.parts()[i]);
            pieces.push_back(slice(t.parts()[ib], Ordinal{}, off_b));
            return SeqTerm::concat(std::move(pieces));
        }
        case SeqTerm::Kind::OmegaRep: {
            auto st = nav::starts(t.parts());
            const Ordinal& period = st.back();
            auto [qa, off_a] = nav::divmod(period, from);
            if (to == length(t)) {
                // tail: remainder of the current period, then the repetition again
                if (off_a.is_zero()) return t;
                std::vector<SeqTerm> pieces;
                SeqTerm period_term = SeqTerm::concat(t.parts());
                pieces.push_back(slice(period_term, off_a, period));
                pieces.push_back(t);
                return SeqTerm::concat(std::move(pieces));
            }
            auto [qb, off_b] = nav::divmod(period, to);
            std::uint64_t periods = (off_b.is_zero() ? qb : qb + 1);
            if (periods > kMaxExpandedPeriods)
                throw SurgeryError("seqterm: restriction expands too many repetitions");
            std::vector<SeqTerm> expanded;
            expanded.reserve(t.parts().size() * periods);
            for (std::uint64_t k = 0; k < periods; ++k)
                for (const auto& p : t.parts()) expanded.push_back(p);
            return slice(SeqTerm::concat(std::move(expanded)), from, to);
        }
        default: throw std::logic_error("seqterm: slice on empty term");
    }
}

} // namespace

SeqTerm restrict_term(const SeqTerm& t, const Ordinal& from, const Ordinal& to) {
    if (compare(from, to) != Cmp::LT)
        throw std::invalid_argument("seqterm: restriction requires from < to");
    if (compare(to, length(t)) == Cmp::GT)
        throw std::invalid_argument("seqterm: restriction beyond the end of the term");
    return slice(t, from, to);
}

// ---------------------------------------------------------------------------
// Decomposition into indecomposable-rooted parts

std::vector<SeqTerm> hi_decompose(const SeqTerm& t) {
    switch (t.kind()) {
        case SeqTerm::Kind::Empty:
            throw std::invalid_argument("seqterm: cannot decompose the empty sequence");
        case SeqTerm::Kind::Atom:
        case SeqTerm::Kind::OmegaRep: return {t};
        case SeqTerm::Kind::Concat: return t.parts();
    }
    throw std::logic_error("seqterm: bad kind");
}

namespace {

void collect_atoms(const SeqTerm& t, std::vector<ElemId>& out) {
    switch (t.kind()) {
        case SeqTerm::Kind::Empty: return;
        case SeqTerm::Kind::Atom: out.push_back(t.atom_value()); return;
        case SeqTerm::Kind::Concat:
            for (const auto& p : t.parts()) collect_atoms(p, out);
            return;
        case SeqTerm::Kind::OmegaRep:
            throw std::invalid_argument("seqterm: term is not finite");
    }
}

} // namespace

std::vector<ElemId> finite_atoms(const SeqTerm& t) {
    std::vector<ElemId> out;
    collect_atoms(t, out);
    return out;
}

SeqTerm term_of_atoms(std::span<const ElemId> atoms) {
    std::vector<SeqTerm> parts;
    parts.reserve(atoms.size());
    for (ElemId a : atoms) parts.push_back(SeqTerm::atom(a));
    return SeqTerm::concat(std::move(parts));
}

// ---------------------------------------------------------------------------
// S-expressions

namespace {

struct SexprParser {
    std::string_view s;
    std::size_t pos = 0;
    const QPresentation& Q;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("term parse error at offset " + std::to_string(pos) +
                                    ": " + what);
    }
    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' ||
                                  s[pos] == '\r'))
            ++pos;
    }
    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && s[pos] != '(' && s[pos] != ')' && s[pos] != ' ' &&
               s[pos] != '\t' && s[pos] != '\n' && s[pos] != '\r')
            ++pos;
        if (start == pos) fail("expected a symbol");
        return std::string(s.substr(start, pos - start));
    }

    SeqTerm term() {
        skip_ws();
        if (pos >= s.size() || s[pos] != '(') fail("expected '('");
        ++pos;
        std::string head = word();
        std::vector<SeqTerm> kids;
        if (head == "atom") {
            std::string name = word();
            skip_ws();
            if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
            ++pos;
            auto id = Q.id_of(name);
            if (!id) fail("atom '" + name + "' is not in the universe");
            return SeqTerm::atom(*id);
        }
        if (head != "cat" && head != "rep") fail("unknown constructor '" + head + "'");
        while (true) {
            skip_ws();
            if (pos >= s.size()) fail("unterminated term");
            if (s[pos] == ')') {
                ++pos;
                break;
            }
            kids.push_back(term());
        }
        if (head == "cat") return SeqTerm::concat(std::move(kids));
        if (kids.empty()) fail("(rep) needs at least one entry");
        return SeqTerm::omega_rep(std::move(kids));
    }
};

void print_sexpr(const SeqTerm& t, const QPresentation& Q, std::string& out) {
    switch (t.kind()) {
        case SeqTerm::Kind::Empty: out += "(cat)"; return;
        case SeqTerm::Kind::Atom:
            out += "(atom ";
            out += Q.name_of(t.atom_value());
            out += ')';
            return;
        case SeqTerm::Kind::Concat:
        case SeqTerm::Kind::OmegaRep:
            out += (t.kind() == SeqTerm::Kind::Concat ? "(cat" : "(rep");
            for (const auto& p : t.parts()) {
                out += ' ';
                print_sexpr(p, Q, out);
            }
            out += ')';
            return;
    }
}

} // namespace

std::string to_sexpr(const SeqTerm& t, const QPresentation& Q) {
    std::string out;
    print_sexpr(t, Q, out);
    return out;
}

SeqTerm parse_sexpr(std::string_view text, const QPresentation& Q) {
    SexprParser p{text, 0, Q};
    SeqTerm t = p.term();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return t;
}

// ---------------------------------------------------------------------------
// Omega-sum presentations

SeqTerm OmegaSum::denote() const {
    std::vector<SeqTerm> parts(prefix);
    parts.push_back(SeqTerm::omega_rep(cycle));
    return SeqTerm::concat(std::move(parts));
}

const SeqTerm& OmegaSum::part(std::size_t n) const {
    if (n < prefix.size()) return prefix[n];
    return cycle[(n - prefix.size()) % cycle.size()];
}

} // namespace bqo
