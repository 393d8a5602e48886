#include "bqo/reversal.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bqo {

std::vector<std::uint32_t> lasso_prefix(const Lasso& l, std::size_t len) {
    std::vector<std::uint32_t> out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        if (i < l.stem.size())
            out.push_back(l.stem[i]);
        else
            out.push_back(l.cycle[(i - l.stem.size()) % l.cycle.size()]);
    }
    return out;
}

LassoTree::LassoTree(std::set<std::vector<std::uint32_t>> nodes, std::vector<Lasso> lassos)
    : nodes_(std::move(nodes)), lassos_(std::move(lassos)) {
    for (const auto& n : nodes_) {
        if (n.empty()) continue;
        auto parent = n;
        parent.pop_back();
        if (!nodes_.count(parent))
            throw std::invalid_argument("lasso tree: node set is not prefix-closed");
    }
    for (const auto& l : lassos_) {
        if (l.cycle.empty())
            throw std::invalid_argument("lasso tree: lasso cycle must be nonempty");
        if (!nodes_.count(l.stem))
            throw std::invalid_argument("lasso tree: lasso stem is not a node");
    }
}

bool LassoTree::member(std::span<const std::uint32_t> u) const {
    std::vector<std::uint32_t> v(u.begin(), u.end());
    if (nodes_.count(v)) return true;
    for (const auto& l : lassos_) {
        auto p = lasso_prefix(l, u.size());
        if (std::equal(u.begin(), u.end(), p.begin())) return true;
    }
    return false;
}

std::vector<std::uint32_t> LassoTree::child_labels(std::span<const std::uint32_t> u) const {
    std::set<std::uint32_t> labels;
    std::vector<std::uint32_t> v(u.begin(), u.end());
    if (nodes_.count(v)) {
        auto lo = nodes_.upper_bound(v);
        for (auto it = lo; it != nodes_.end(); ++it) {
            if (it->size() <= v.size() || !std::equal(v.begin(), v.end(), it->begin()))
                break;
            if (it->size() == v.size() + 1) labels.insert(it->back());
        }
    }
    for (const auto& l : lassos_) {
        auto p = lasso_prefix(l, u.size() + 1);
        if (std::equal(u.begin(), u.end(), p.begin())) labels.insert(p.back());
    }
    return std::vector<std::uint32_t>(labels.begin(), labels.end());
}

KbOrder kb_compare(std::span<const std::uint32_t> s, std::span<const std::uint32_t> t) {
    const std::size_t n = std::min(s.size(), t.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (s[i] < t[i]) return KbOrder::LE;
        if (s[i] > t[i]) return KbOrder::GT;
    }
    // one is an initial segment of the other; the longer one comes first
    return t.size() <= s.size() ? KbOrder::LE : KbOrder::GT;
}

bool is_well_founded(const LassoTree& T) {
    return T.lassos().empty();
}

namespace {

// exact lexicographic comparison of two eventually periodic branches
bool branch_less(const Lasso& a, const Lasso& b) {
    std::size_t bound = std::max(a.stem.size(), b.stem.size()) +
                        a.cycle.size() * b.cycle.size() + 1;
    auto pa = lasso_prefix(a, bound);
    auto pb = lasso_prefix(b, bound);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
}

bool branch_equal(const Lasso& a, const Lasso& b) {
    return !branch_less(a, b) && !branch_less(b, a);
}

} // namespace

std::optional<Lasso> leftmost_path(const LassoTree& T) {
    if (T.lassos().empty()) return std::nullopt;
    Lasso best = T.lassos().front();
    for (const auto& l : T.lassos()) {
        if (branch_less(l, best))
            best = l;
        else if (branch_equal(l, best) && l < best)
            best = l; // canonical representative of the same branch
    }
    return best;
}

LassoTree guard_transform(const LassoTree& T) {
    std::set<std::vector<std::uint32_t>> nodes;
    nodes.emplace();
    for (const auto& n : T.nodes()) {
        std::vector<std::uint32_t> v{0};
        v.insert(v.end(), n.begin(), n.end());
        nodes.insert(std::move(v));
    }
    std::vector<Lasso> lassos;
    for (const auto& l : T.lassos()) {
        Lasso g;
        g.stem.push_back(0);
        g.stem.insert(g.stem.end(), l.stem.begin(), l.stem.end());
        g.cycle = l.cycle;
        lassos.push_back(std::move(g));
    }
    lassos.push_back(Lasso{{}, {1}});
    return LassoTree(std::move(nodes), std::move(lassos));
}

std::size_t pair_code(std::size_t i, std::size_t n, std::size_t width) {
    if (n >= width) throw std::invalid_argument("pair_code: column outside the strip");
    std::size_t d = i + n;
    std::size_t code = 0;
    for (std::size_t dd = 0; dd < d; ++dd) code += std::min(dd + 1, width);
    return code + n;
}

std::pair<std::size_t, std::size_t> pair_decode(std::size_t code, std::size_t width) {
    std::size_t d = 0;
    while (true) {
        std::size_t on_diag = std::min(d + 1, width);
        if (code < on_diag) return {d - code, code};
        code -= on_diag;
        ++d;
    }
}

bool interleave_member(const std::vector<LassoTree>& trees,
                       std::span<const std::uint32_t> u) {
    const std::size_t m = trees.size();
    if (m == 0) throw std::invalid_argument("interleave: need at least one tree");
    for (std::size_t n = 0; n < m; ++n) {
        std::vector<std::uint32_t> column;
        for (std::size_t i = 0;; ++i) {
            std::size_t c = pair_code(i, n, m);
            if (c >= u.size()) break;
            column.push_back(u[c]);
        }
        if (!trees[n].member(column)) return false;
    }
    return true;
}

namespace {

std::uint64_t lcm_capped(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
    std::uint64_t g = std::gcd(a, b);
    std::uint64_t l = a / g;
    if (l > cap / b + 1) return cap + 1;
    l *= b;
    return l > cap ? cap + 1 : l;
}

} // namespace

InterleaveResult interleave(const std::vector<LassoTree>& trees, std::size_t cycle_bound,
                            std::size_t node_depth, std::size_t node_cap) {
    const std::size_t m = trees.size();
    if (m == 0) throw std::invalid_argument("interleave: need at least one tree");
    InterleaveResult out;
    out.width = m;

    // synthesize product branches: one lasso choice per column
    std::vector<Lasso> lassos;
    bool truncated = false;
    bool any_empty = false;
    for (const auto& t : trees) any_empty |= t.lassos().empty();
    if (!any_empty) {
        std::vector<std::size_t> choice(m, 0);
        std::size_t combos = 1;
        constexpr std::size_t kMaxCombos = 4096;
        for (const auto& t : trees) {
            combos *= t.lassos().size();
            if (combos > kMaxCombos) break;
        }
        if (combos > kMaxCombos) {
            truncated = true;
            combos = kMaxCombos;
        }
        std::size_t emitted = 0;
        while (emitted < combos) {
            std::vector<const Lasso*> pick(m);
            for (std::size_t n = 0; n < m; ++n) pick[n] = &trees[n].lassos()[choice[n]];
            // stabilization diagonal: all columns past their stems, full width
            std::size_t d0 = m - 1;
            for (std::size_t n = 0; n < m; ++n)
                d0 = std::max(d0, pick[n]->stem.size() + n);
            std::size_t stem_len = pair_code(d0 - (m - 1), m - 1, m) + 1;
            // one period: every column advances by a multiple of its cycle
            std::uint64_t l = 1;
            for (std::size_t n = 0; n < m; ++n)
                l = lcm_capped(l, pick[n]->cycle.size(), cycle_bound);
            std::uint64_t period = l * m;
            if (l > cycle_bound || period > cycle_bound) {
                out.lassos_truncated = true;
            } else {
                auto value_at = [&](std::size_t code) {
                    auto [row, col] = pair_decode(code, m);
                    return lasso_prefix(*pick[col], row + 1).back();
                };
                Lasso prod;
                for (std::size_t c = 0; c < stem_len; ++c) prod.stem.push_back(value_at(c));
                for (std::size_t c = stem_len; c < stem_len + period; ++c)
                    prod.cycle.push_back(value_at(c));
                lassos.push_back(std::move(prod));
            }
            ++emitted;
            // advance the choice odometer
            std::size_t n = 0;
            while (n < m) {
                if (++choice[n] < trees[n].lassos().size()) break;
                choice[n] = 0;
                ++n;
            }
            if (n == m) break;
        }
        if (truncated) out.lassos_truncated = true;
    }

    // enumerate the valid nodes breadth-first up to node_depth
    std::set<std::vector<std::uint32_t>> nodes;
    std::vector<std::vector<std::uint32_t>> frontier{{}};
    nodes.emplace();
    for (std::size_t depth = 0; depth < node_depth && !frontier.empty(); ++depth) {
        std::vector<std::vector<std::uint32_t>> next;
        for (const auto& u : frontier) {
            auto [row, col] = pair_decode(u.size(), m);
            std::vector<std::uint32_t> column;
            for (std::size_t i = 0; i < row; ++i) column.push_back(u[pair_code(i, col, m)]);
            for (std::uint32_t v : trees[col].child_labels(column)) {
                auto child = u;
                child.push_back(v);
                if (nodes.size() >= node_cap) {
                    out.nodes_truncated = true;
                    break;
                }
                nodes.insert(child);
                next.push_back(std::move(child));
            }
            if (out.nodes_truncated) break;
        }
        if (out.nodes_truncated) break;
        frontier = std::move(next);
    }
    // lasso stems must be nodes
    for (const auto& l : lassos)
        for (std::size_t k = 0; k <= l.stem.size(); ++k)
            nodes.insert(std::vector<std::uint32_t>(l.stem.begin(), l.stem.begin() + k));

    out.tree = LassoTree(std::move(nodes), std::move(lassos));
    return out;
}

std::vector<std::size_t> decode_wf(const std::vector<LassoTree>& trees) {
    const std::size_t m = trees.size();
    if (m == 0) throw std::invalid_argument("decode: need at least one tree");
    std::vector<LassoTree> guarded;
    guarded.reserve(m);
    for (const auto& t : trees) guarded.push_back(guard_transform(t));
    auto inter = interleave(guarded);
    auto f = leftmost_path(inter.tree);
    if (!f) throw std::logic_error("decode: guarded interleaving lost its branches");
    std::vector<std::size_t> z;
    for (std::size_t n = 0; n < m; ++n) {
        std::size_t c = pair_code(0, n, m);
        if (lasso_prefix(*f, c + 1).back() == 1) z.push_back(n);
    }
    return z;
}

// ---------------------------------------------------------------------------
// Files

LassoTree load_lasso_tree(std::istream& in) {
    std::set<std::vector<std::uint32_t>> nodes;
    std::vector<Lasso> lassos;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string head;
        if (!(ss >> head)) continue;
        if (head == "node") {
            std::vector<std::uint32_t> xs;
            std::uint32_t v;
            while (ss >> v) xs.push_back(v);
            if (!ss.eof())
                throw std::invalid_argument("tree file line " + std::to_string(lineno) +
                                            ": expected naturals");
            nodes.insert(std::move(xs));
        } else if (head == "lasso") {
            Lasso l;
            bool in_cycle = false;
            std::string tok;
            while (ss >> tok) {
                if (tok == "|") {
                    in_cycle = true;
                    continue;
                }
                std::size_t used = 0;
                unsigned long v = std::stoul(tok, &used);
                if (used != tok.size())
                    throw std::invalid_argument("tree file line " + std::to_string(lineno) +
                                                ": expected naturals");
                (in_cycle ? l.cycle : l.stem).push_back(static_cast<std::uint32_t>(v));
            }
            if (!in_cycle || l.cycle.empty())
                throw std::invalid_argument("tree file line " + std::to_string(lineno) +
                                            ": lasso needs '| <cycle>'");
            lassos.push_back(std::move(l));
        } else {
            throw std::invalid_argument("tree file line " + std::to_string(lineno) +
                                        ": unknown directive '" + head + "'");
        }
    }
    return LassoTree(std::move(nodes), std::move(lassos));
}

std::string to_string(const LassoTree& T) {
    std::string out;
    for (const auto& n : T.nodes()) {
        out += "node";
        for (auto v : n) {
            out += ' ';
            out += std::to_string(v);
        }
        out += '\n';
    }
    for (const auto& l : T.lassos()) {
        out += "lasso";
        for (auto v : l.stem) {
            out += ' ';
            out += std::to_string(v);
        }
        out += " |";
        for (auto v : l.cycle) {
            out += ' ';
            out += std::to_string(v);
        }
        out += '\n';
    }
    return out;
}

} // namespace bqo
