#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace bqo {

// A designated infinite branch: stem followed by the cycle repeated forever.
struct Lasso {
    std::vector<std::uint32_t> stem;
    std::vector<std::uint32_t> cycle; // nonempty

    bool operator==(const Lasso&) const = default;
    auto operator<=>(const Lasso&) const = default;
};

// First `len` entries of the branch the lasso denotes.
std::vector<std::uint32_t> lasso_prefix(const Lasso& l, std::size_t len);

// A finitely branching tree given by a finite prefix-closed node set plus
// finitely many lassos; the lassos are exactly its infinite branches.
class LassoTree {
public:
    LassoTree() = default;
    LassoTree(std::set<std::vector<std::uint32_t>> nodes, std::vector<Lasso> lassos);

    const std::set<std::vector<std::uint32_t>>& nodes() const { return nodes_; }
    const std::vector<Lasso>& lassos() const { return lassos_; }

    // u is a node or a prefix of some lasso's branch
    bool member(std::span<const std::uint32_t> u) const;
    // labels v with member(u + <v>), bounded enumeration
    std::vector<std::uint32_t> child_labels(std::span<const std::uint32_t> u) const;

private:
    std::set<std::vector<std::uint32_t>> nodes_;
    std::vector<Lasso> lassos_;
};

enum class KbOrder { LE, GT };

// s <=KB t iff t is an initial segment of s, or s branches left of t at the
// first difference.
KbOrder kb_compare(std::span<const std::uint32_t> s, std::span<const std::uint32_t> t);

// For this representation well-foundedness is the absence of lassos.
bool is_well_founded(const LassoTree& T);

// The lexicographically least infinite branch, as a lasso; nullopt when the
// tree is well-founded.  Branch comparison is exact: two eventually periodic
// branches that agree past both stems for a full cycle product coincide.
std::optional<Lasso> leftmost_path(const LassoTree& T);

// {<0>^s : s in T} plus the all-ones branch; never well-founded.
LassoTree guard_transform(const LassoTree& T);

// Position of row i of column n among the pair codes of a width-m strip,
// enumerated by increasing i+n and then by increasing n.
std::size_t pair_code(std::size_t i, std::size_t n, std::size_t width);
// Inverse: code -> (row, column).
std::pair<std::size_t, std::size_t> pair_decode(std::size_t code, std::size_t width);

struct InterleaveResult {
    LassoTree tree;
    std::size_t width = 0;      // number of interleaved columns
    bool lassos_truncated = false; // some product branch exceeded the cycle bound
    bool nodes_truncated = false;  // node enumeration hit its caps
};

// The tree whose nodes are exactly the sequences all of whose column
// extractions lie in the corresponding input tree.  Product branches are
// synthesized from one lasso choice per column; enumerated nodes are
// materialized to node_depth.
InterleaveResult interleave(const std::vector<LassoTree>& trees,
                            std::size_t cycle_bound = 4096, std::size_t node_depth = 12,
                            std::size_t node_cap = 20000);

// Membership test straight from the column-extraction rule.
bool interleave_member(const std::vector<LassoTree>& trees,
                       std::span<const std::uint32_t> u);

// Guard-transforms each tree, interleaves, takes the leftmost path f and
// returns {n : f(code(0,n)) = 1}, which is exactly the set of well-founded
// inputs.
std::vector<std::size_t> decode_wf(const std::vector<LassoTree>& trees);

// Tree files: `node 0 1 2` lines (one sequence per line; bare `node` is the
// root) and `lasso <stem> | <cycle>` lines.
LassoTree load_lasso_tree(std::istream& in);
std::string to_string(const LassoTree& T);

} // namespace bqo
