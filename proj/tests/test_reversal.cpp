#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bqo/reversal.hpp"

#include <random>
#include <sstream>

using namespace bqo;

namespace {

using Seq = std::vector<std::uint32_t>;

std::vector<Seq> all_seqs(std::uint32_t max_entry, std::size_t max_len) {
    std::vector<Seq> out{{}};
    std::vector<Seq> frontier{{}};
    for (std::size_t l = 1; l <= max_len; ++l) {
        std::vector<Seq> next;
        for (const auto& s : frontier)
            for (std::uint32_t v = 0; v <= max_entry; ++v) {
                auto t = s;
                t.push_back(v);
                out.push_back(t);
                next.push_back(std::move(t));
            }
        frontier = std::move(next);
    }
    return out;
}

LassoTree random_tree(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_lassos) {
    std::set<Seq> nodes;
    nodes.emplace();
    std::uniform_int_distribution<std::uint32_t> label(0, 2);
    std::uniform_int_distribution<std::size_t> count(1, max_nodes);
    std::size_t want = count(rng);
    std::vector<Seq> pool{{}};
    while (nodes.size() < want) {
        const Seq& parent = pool[std::uniform_int_distribution<std::size_t>(
            0, pool.size() - 1)(rng)];
        Seq child = parent;
        child.push_back(label(rng));
        if (nodes.insert(child).second) pool.push_back(std::move(child));
    }
    std::uniform_int_distribution<std::size_t> lcount(0, max_lassos);
    std::size_t nl = lcount(rng);
    std::vector<Lasso> lassos;
    std::vector<Seq> node_list(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i < nl; ++i) {
        Lasso l;
        l.stem = node_list[std::uniform_int_distribution<std::size_t>(
            0, node_list.size() - 1)(rng)];
        std::size_t clen = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        for (std::size_t k = 0; k < clen; ++k) l.cycle.push_back(label(rng));
        lassos.push_back(std::move(l));
    }
    return LassoTree(std::move(nodes), std::move(lassos));
}

// oracle: lexicographically least branch by long bounded prefixes
std::optional<Seq> leftmost_prefix_oracle(const LassoTree& T, std::size_t depth) {
    std::optional<Seq> best;
    for (const auto& l : T.lassos()) {
        Seq p = lasso_prefix(l, depth);
        if (!best || std::lexicographical_compare(p.begin(), p.end(), best->begin(),
                                                  best->end()))
            best = p;
    }
    return best;
}

} // namespace

TEST_CASE("kb comparison basics") {
    CHECK(kb_compare(Seq{0, 5}, Seq{0}) == KbOrder::LE);
    CHECK(kb_compare(Seq{1}, Seq{2}) == KbOrder::LE);
    CHECK(kb_compare(Seq{2}, Seq{1, 9}) == KbOrder::GT);
    CHECK(kb_compare(Seq{}, Seq{}) == KbOrder::LE);
    CHECK(kb_compare(Seq{1, 2}, Seq{1, 2}) == KbOrder::LE);
}

TEST_CASE("kb is a total order on finite sequences") {
    auto seqs = all_seqs(3, 3);
    for (const auto& s : seqs)
        for (const auto& t : seqs) {
            bool st = kb_compare(s, t) == KbOrder::LE;
            bool ts = kb_compare(t, s) == KbOrder::LE;
            CHECK((st || ts));
            if (st && ts) CHECK(s == t);
        }
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, seqs.size() - 1);
    for (int it = 0; it < 200000; ++it) {
        const auto& a = seqs[pick(rng)];
        const auto& b = seqs[pick(rng)];
        const auto& c = seqs[pick(rng)];
        if (kb_compare(a, b) == KbOrder::LE && kb_compare(b, c) == KbOrder::LE)
            CHECK(kb_compare(a, c) == KbOrder::LE);
    }
}

TEST_CASE("tree construction and membership") {
    CHECK_THROWS_AS(LassoTree(std::set<Seq>{Seq{0, 1}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(LassoTree(std::set<Seq>{Seq{}}, {Lasso{{0}, {1}}}), std::invalid_argument);
    CHECK_THROWS_AS(LassoTree(std::set<Seq>{Seq{}}, {Lasso{{}, {}}}), std::invalid_argument);

    LassoTree t(std::set<Seq>{Seq{}, Seq{0}, Seq{0, 1}}, {Lasso{{0}, {2}}});
    CHECK(t.member(Seq{}));
    CHECK(t.member(Seq{0, 1}));
    CHECK(t.member(Seq{0, 2, 2, 2}));
    CHECK_FALSE(t.member(Seq{1}));
    CHECK_FALSE(t.member(Seq{0, 2, 1}));
    auto kids = t.child_labels(Seq{0});
    CHECK(kids == std::vector<std::uint32_t>{1, 2});
}

TEST_CASE("well-foundedness is lasso absence") {
    LassoTree finite(std::set<Seq>{Seq{}, Seq{0}}, {});
    CHECK(is_well_founded(finite));
    CHECK_FALSE(leftmost_path(finite).has_value());
    LassoTree looped(std::set<Seq>{Seq{}, Seq{0}}, {Lasso{{0}, {1}}});
    CHECK_FALSE(is_well_founded(looped));
    LassoTree empty;
    CHECK(is_well_founded(empty));
}

TEST_CASE("leftmost path basics") {
    LassoTree one(std::set<Seq>{Seq{}, Seq{2}}, {Lasso{{2}, {0}}});
    auto l = leftmost_path(one);
    REQUIRE(l.has_value());
    CHECK(lasso_prefix(*l, 4) == Seq{2, 0, 0, 0});

    // two branches diverging at the root
    LassoTree two(std::set<Seq>{Seq{}, Seq{1}, Seq{2}}, {Lasso{{2}, {0}}, Lasso{{1}, {0}}});
    auto l2 = leftmost_path(two);
    REQUIRE(l2.has_value());
    CHECK(lasso_prefix(*l2, 1) == Seq{1});

    // same branch, different presentations: canonical representative wins
    LassoTree same(std::set<Seq>{Seq{}}, {Lasso{{}, {1, 1}}, Lasso{{}, {1}}});
    auto l3 = leftmost_path(same);
    REQUIRE(l3.has_value());
    CHECK(*l3 == Lasso{{}, {1}});
}

TEST_CASE("leftmost path matches the enumeration oracle on random trees") {
    std::mt19937_64 rng(99);
    int with_lassos = 0;
    for (int it = 0; it < 4000; ++it) {
        LassoTree t = random_tree(rng, 10, 3);
        auto got = leftmost_path(t);
        auto want = leftmost_prefix_oracle(t, 40);
        CHECK(got.has_value() == want.has_value());
        if (!got) continue;
        ++with_lassos;
        Seq gp = lasso_prefix(*got, 40);
        CHECK(gp == *want);
        // every emitted prefix is a member, prefixes form a KB-descending
        // chain, and each extends the previous
        for (std::size_t n = 0; n + 1 <= 12; ++n) {
            Seq a(gp.begin(), gp.begin() + n);
            Seq b(gp.begin(), gp.begin() + n + 1);
            CHECK(t.member(b));
            CHECK(kb_compare(b, a) == KbOrder::LE);
        }
    }
    CHECK(with_lassos > 1000);
}

TEST_CASE("guard transform") {
    LassoTree empty;
    auto g = guard_transform(empty);
    CHECK_FALSE(is_well_founded(g));
    auto l = leftmost_path(g);
    REQUIRE(l.has_value());
    CHECK(lasso_prefix(*l, 3) == Seq{1, 1, 1});

    // well-founded input: leftmost of the guard is all ones
    LassoTree wf(std::set<Seq>{Seq{}, Seq{0}, Seq{1}}, {});
    auto gwf = guard_transform(wf);
    auto lwf = leftmost_path(gwf);
    REQUIRE(lwf.has_value());
    CHECK(lasso_prefix(*lwf, 1) == Seq{1});
    CHECK(gwf.member(Seq{0, 1}));
    CHECK_FALSE(gwf.member(Seq{0, 2}));

    // non-well-founded input: leftmost of the guard starts with 0
    LassoTree bad(std::set<Seq>{Seq{}, Seq{2}}, {Lasso{{2}, {2}}});
    auto gbad = guard_transform(bad);
    auto lbad = leftmost_path(gbad);
    REQUIRE(lbad.has_value());
    CHECK(lasso_prefix(*lbad, 1) == Seq{0});
}

TEST_CASE("pair codes enumerate the strip diagonally") {
    // width 3: (0,0) (1,0) (0,1) (2,0) (1,1) (0,2) (3,0) (2,1) (1,2) ...
    CHECK(pair_code(0, 0, 3) == 0);
    CHECK(pair_code(1, 0, 3) == 1);
    CHECK(pair_code(0, 1, 3) == 2);
    CHECK(pair_code(2, 0, 3) == 3);
    CHECK(pair_code(1, 1, 3) == 4);
    CHECK(pair_code(0, 2, 3) == 5);
    for (std::size_t c = 0; c < 200; ++c) {
        auto [i, n] = pair_decode(c, 3);
        CHECK(pair_code(i, n, 3) == c);
    }
    CHECK_THROWS_AS(pair_code(0, 3, 3), std::invalid_argument);
}

TEST_CASE("interleaving a single tree re-indexes it") {
    LassoTree t(std::set<Seq>{Seq{}, Seq{0}, Seq{0, 1}, Seq{2}}, {Lasso{{0}, {1, 2}}});
    auto r = interleave({t}, 4096, 8);
    CHECK(r.width == 1);
    CHECK_FALSE(r.lassos_truncated);
    // membership agrees to the enumerated depth
    for (const auto& u : all_seqs(2, 5)) {
        CHECK(interleave_member({t}, u) == t.member(u));
        if (u.size() <= 5) CHECK(r.tree.member(u) == t.member(u));
    }
    auto l = leftmost_path(r.tree);
    auto lt = leftmost_path(t);
    REQUIRE(l.has_value());
    REQUIRE(lt.has_value());
    CHECK(lasso_prefix(*l, 30) == lasso_prefix(*lt, 30));
}

TEST_CASE("interleaving mixed families: columns of the leftmost path land in place") {
    std::mt19937_64 rng(123);
    for (int it = 0; it < 60; ++it) {
        std::size_t m = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
        std::vector<LassoTree> fam;
        for (std::size_t k = 0; k < m; ++k)
            fam.push_back(guard_transform(random_tree(rng, 6, 2)));
        auto r = interleave(fam);
        REQUIRE_FALSE(r.lassos_truncated);
        auto f = leftmost_path(r.tree);
        REQUIRE(f.has_value());
        Seq fp = lasso_prefix(*f, pair_code(19, m - 1, m) + 1);
        for (std::size_t n = 0; n < m; ++n) {
            Seq column;
            for (std::size_t i = 0; i < 20; ++i) column.push_back(fp[pair_code(i, n, m)]);
            // prefix-by-prefix membership in the n-th component
            for (std::size_t len = 0; len <= 20; ++len)
                CHECK(fam[n].member(std::span(column.data(), len)));
            // and it is the component's own leftmost branch
            auto ln = leftmost_path(fam[n]);
            REQUIRE(ln.has_value());
            CHECK(column == lasso_prefix(*ln, 20));
        }
        // the interleaved leftmost prefix is a member at every length
        for (std::size_t len = 0; len <= 25; ++len)
            CHECK(interleave_member(fam, std::span(fp.data(), len)));
    }
}

TEST_CASE("decoder matches pointwise well-foundedness") {
    std::mt19937_64 rng(2025);
    for (int it = 0; it < 100; ++it) {
        std::vector<LassoTree> fam;
        std::vector<std::size_t> expect;
        for (std::size_t n = 0; n < 4; ++n) {
            fam.push_back(random_tree(rng, 8, 2));
            if (is_well_founded(fam.back())) expect.push_back(n);
        }
        CHECK(decode_wf(fam) == expect);
    }
    // all well-founded and all looped
    std::vector<LassoTree> wf(3);
    CHECK(decode_wf(wf) == std::vector<std::size_t>{0, 1, 2});
    std::vector<LassoTree> looped;
    for (int i = 0; i < 3; ++i)
        looped.push_back(LassoTree(std::set<Seq>{Seq{}}, {Lasso{{}, {0}}}));
    CHECK(decode_wf(looped).empty());
}

TEST_CASE("tree files") {
    std::istringstream in("node\nnode 0\nnode 0 1 # comment\nlasso 0 | 2 1\nlasso | 3\n");
    auto t = load_lasso_tree(in);
    CHECK(t.nodes().size() == 3);
    CHECK(t.lassos().size() == 2);
    CHECK(t.member(Seq{0, 2, 1, 2}));
    CHECK(t.member(Seq{3, 3}));
    auto round = to_string(t);
    std::istringstream in2(round);
    auto t2 = load_lasso_tree(in2);
    CHECK(t2.nodes() == t.nodes());
    CHECK(t2.lassos() == t.lassos());

    std::istringstream bad("lasso 0 1\n");
    CHECK_THROWS_AS(load_lasso_tree(bad), std::invalid_argument);
    std::istringstream bad2("node 0 1\n");
    CHECK_THROWS_AS(load_lasso_tree(bad2), std::invalid_argument);
}
