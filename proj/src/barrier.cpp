#include "bqo/barrier.hpp"

#include <algorithm>
#include <atomic>
#include <istream>
#include <sstream>

namespace bqo {

// ---------------------------------------------------------------------------
// FinSeq

FinSeq::FinSeq(std::vector<std::uint32_t> xs) : xs_(std::move(xs)) {
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
        if (xs_[i] >= xs_[i + 1])
            throw std::invalid_argument("finseq: entries must be strictly increasing");
}

FinSeq FinSeq::prefix(std::size_t i) const {
    if (i > xs_.size()) throw std::invalid_argument("finseq: prefix too long");
    return FinSeq(std::vector<std::uint32_t>(xs_.begin(), xs_.begin() + i));
}

FinSeq FinSeq::tail() const {
    if (xs_.empty()) throw std::invalid_argument("finseq: tail of the empty sequence");
    return FinSeq(std::vector<std::uint32_t>(xs_.begin() + 1, xs_.end()));
}

bool FinSeq::init_seg_of(const FinSeq& t) const {
    if (lh() > t.lh()) return false;
    return std::equal(xs_.begin(), xs_.end(), t.xs_.begin());
}

bool FinSeq::proper_init_seg_of(const FinSeq& t) const {
    return lh() < t.lh() && init_seg_of(t);
}

bool FinSeq::subset_of(const FinSeq& t) const {
    return std::includes(t.xs_.begin(), t.xs_.end(), xs_.begin(), xs_.end());
}

bool FinSeq::proper_subset_of(const FinSeq& t) const {
    return lh() < t.lh() && subset_of(t);
}

FinSeq FinSeq::set_union(const FinSeq& t) const {
    std::vector<std::uint32_t> out;
    std::set_union(xs_.begin(), xs_.end(), t.xs_.begin(), t.xs_.end(),
                   std::back_inserter(out));
    return FinSeq(std::move(out));
}

std::string to_string(const FinSeq& s) {
    std::string out = "<";
    for (std::size_t i = 0; i < s.lh(); ++i) {
        if (i) out += ',';
        out += std::to_string(s(i));
    }
    return out + ">";
}

bool triangle(const FinSeq& s, const FinSeq& t) {
    if (s.empty()) throw std::invalid_argument("triangle: left argument must be nonempty");
    FinSeq st = s.tail();
    if (!(t.init_seg_of(st) || st.init_seg_of(t))) return false;
    if (s.lh() >= 2) return true;
    return t.empty() || s(0) < t(0);
}

// ---------------------------------------------------------------------------
// Fragments

std::vector<std::uint32_t> BarrierFragment::base() const {
    std::vector<std::uint32_t> out;
    for (const auto& m : members)
        out.insert(out.end(), m.entries().begin(), m.entries().end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool BarrierFragment::contains(const FinSeq& s) const {
    return std::binary_search(members.begin(), members.end(), s);
}

void BarrierFragment::canonicalize() {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool VerifyReport::pass() const {
    for (const auto& v : items)
        if (!v.soft) return false;
    return true;
}

namespace {

constexpr std::size_t kMaxPathNodes = 1u << 21;
constexpr std::size_t kMaxReportedViolations = 8;

// Depth-first walk of all strictly increasing paths through `base`,
// pruning at the first member prefix.  Returns the dead maximal paths found
// (paths that ran out of window extensions without meeting a member).
struct PathScan {
    const BarrierFragment& B;
    const std::vector<std::uint32_t>& base;
    std::vector<std::vector<std::uint32_t>> dead;
    std::size_t visited = 0;
    bool capped = false;
    bool stop_at_first;
    std::size_t max_dead = kMaxReportedViolations;

    bool has_member_prefix(const FinSeq& p) const {
        for (const auto& m : B.members)
            if (m.init_seg_of(p)) return true;
        return false;
    }

    // returns true to abort the whole scan
    bool walk(std::vector<std::uint32_t>& path) {
        if (++visited > kMaxPathNodes) {
            capped = true;
            return true;
        }
        if (has_member_prefix(FinSeq(path))) return false;
        bool extended = false;
        for (std::uint32_t b : base) {
            if (!path.empty() && b <= path.back()) continue;
            extended = true;
            path.push_back(b);
            if (walk(path)) return true;
            path.pop_back();
        }
        if (!extended) {
            dead.push_back(path);
            if (stop_at_first || dead.size() >= max_dead) return true;
        }
        return false;
    }

    void run() {
        std::vector<std::uint32_t> path;
        for (std::uint32_t b : base) {
            path.assign(1, b);
            if (walk(path)) return;
        }
    }
};

VerifyReport verify_fragment(const BarrierFragment& B, bool barrier_mode) {
    VerifyReport rep;
    rep.window = B.window;
    rep.base = B.base();
    // members within the window
    for (const auto& m : B.members)
        if (!m.empty() && m.max() > B.window)
            rep.items.push_back({"1", false,
                                 "member " + to_string(m) + " leaves the window"});
    for (const auto& m : B.members)
        if (m.empty())
            rep.items.push_back({"3", false, "the empty sequence cannot be a member"});
    // (1) surrogate: base reaches the window end
    if (rep.base.empty()) {
        rep.items.push_back({"1", false, "empty base"});
        return rep;
    }
    if (rep.base.back() != B.window)
        rep.items.push_back({"1", true,
                             "window-cofinality surrogate: base ends at " +
                                 std::to_string(rep.base.back()) + " but the window is " +
                                 std::to_string(B.window)});
    // (2): every increasing path through the base meets the fragment
    PathScan scan{B, rep.base, {}, 0, false, false};
    scan.run();
    for (const auto& p : scan.dead)
        rep.items.push_back({"2", true,
                             "window too small: path " + to_string(FinSeq(p)) +
                                 " exhausted the window without meeting the fragment"});
    if (scan.capped)
        rep.items.push_back({"2", true, "path exploration capped; window check incomplete"});
    // (3) / (3')
    for (const auto& s : B.members)
        for (const auto& t : B.members) {
            if (&s == &t) continue;
            if (!barrier_mode && s.proper_init_seg_of(t)) {
                rep.items.push_back({"3", false,
                                     to_string(s) + " is a proper initial segment of " +
                                         to_string(t)});
                if (rep.items.size() > kMaxReportedViolations) return rep;
            }
            if (barrier_mode && s.proper_subset_of(t)) {
                rep.items.push_back({"3'", false,
                                     to_string(s) + " is a proper subset of " + to_string(t)});
                if (rep.items.size() > kMaxReportedViolations) return rep;
            }
        }
    return rep;
}

} // namespace

VerifyReport verify_block_fragment(const BarrierFragment& B) {
    return verify_fragment(B, false);
}

VerifyReport verify_barrier_fragment(const BarrierFragment& B) {
    return verify_fragment(B, true);
}

RefineResult refine_block_to_barrier(const BarrierFragment& B) {
    if (!verify_block_fragment(B).pass())
        throw std::invalid_argument("refine: input fragment fails the block checks");
    BarrierFragment cur;
    cur.window = B.window;
    for (const auto& s : B.members) {
        bool keep = true;
        for (const auto& t : B.members)
            if (t.proper_subset_of(s)) {
                keep = false;
                break;
            }
        if (keep) cur.members.push_back(s);
    }
    cur.canonicalize();
    // Thin the base until no increasing path that the original block served
    // is left orphaned by the member removal.  Paths that merely run off the
    // window edge stay soft, exactly as in verification.
    auto served_by_original = [&](const std::vector<std::uint32_t>& path) {
        FinSeq p(path);
        for (const auto& m : B.members)
            if (m.init_seg_of(p)) return true;
        return false;
    };
    std::vector<std::uint32_t> base = cur.base();
    while (!base.empty()) {
        BarrierFragment induced;
        induced.window = base.back();
        for (const auto& s : cur.members) {
            bool inside = std::includes(base.begin(), base.end(), s.entries().begin(),
                                        s.entries().end());
            if (inside) induced.members.push_back(s);
        }
        induced.canonicalize();
        PathScan scan{induced, base, {}, 0, false, false, 1u << 12};
        scan.run();
        const std::vector<std::uint32_t>* orphan = nullptr;
        for (const auto& dead : scan.dead)
            if (served_by_original(dead)) {
                orphan = &dead;
                break;
            }
        if (!orphan) {
            VerifyReport rep = verify_barrier_fragment(induced);
            return RefineResult{std::move(induced), std::move(rep)};
        }
        std::uint32_t drop = orphan->size() >= 2 ? (*orphan)[1] : (*orphan)[0];
        base.erase(std::remove(base.begin(), base.end(), drop), base.end());
    }
    BarrierFragment empty_frag;
    empty_frag.window = B.window;
    VerifyReport rep = verify_barrier_fragment(empty_frag);
    return RefineResult{std::move(empty_frag), std::move(rep)};
}

BarrierFragment b_squared(const BarrierFragment& B) {
    BarrierFragment out;
    out.window = B.window;
    for (const auto& s : B.members)
        for (const auto& t : B.members)
            if (triangle(s, t)) out.members.push_back(s.set_union(t));
    out.canonicalize();
    return out;
}

std::pair<FinSeq, FinSeq> project(const FinSeq& u, const BarrierFragment& B) {
    std::vector<std::pair<FinSeq, FinSeq>> found;
    for (const auto& s : B.members)
        for (const auto& t : B.members)
            if (triangle(s, t) && s.set_union(t) == u) found.emplace_back(s, t);
    if (found.empty())
        throw std::invalid_argument("project: " + to_string(u) +
                                    " is not a union of a triangle pair");
    if (found.size() > 1)
        throw std::runtime_error("project: decomposition of " + to_string(u) +
                                 " is not unique");
    return found.front();
}

// ---------------------------------------------------------------------------
// Arrays

ElemId QArrayTable::value_of(const FinSeq& s) const {
    auto it = std::lower_bound(domain.members.begin(), domain.members.end(), s);
    if (it == domain.members.end() || !(*it == s))
        throw std::invalid_argument("array: " + to_string(s) + " is not in the domain");
    return values.at(static_cast<std::size_t>(it - domain.members.begin()));
}

ArrayClassification classify_array(const QArrayTable& f, const QPresentation& Q) {
    ArrayClassification out;
    bool any_pair = false, all_ascend = true, any_ascend = false;
    for (const auto& s : f.domain.members)
        for (const auto& t : f.domain.members) {
            if (!triangle(s, t)) continue;
            any_pair = true;
            if (Q.leq(f.value_of(s), f.value_of(t))) {
                any_ascend = true;
                if (!out.good_witness) out.good_witness = {s, t};
            } else {
                all_ascend = false;
            }
        }
    if (!any_pair || !any_ascend)
        out.kind = ArrayKind::Bad;
    else if (all_ascend)
        out.kind = ArrayKind::Perfect;
    else
        out.kind = ArrayKind::Mixed;
    return out;
}

// ---------------------------------------------------------------------------
// Homogeneous sub-base search

namespace {

struct HomogeneousInstance {
    std::vector<std::uint32_t> base;
    std::vector<std::uint64_t> member_mask; // over base indices
    std::vector<int> member_color;

    static HomogeneousInstance make(const BarrierFragment& B, const Coloring& color) {
        HomogeneousInstance inst;
        inst.base = B.base();
        if (inst.base.size() > 26)
            throw std::invalid_argument(
                "homogeneous search: base too large for exhaustive search");
        auto index_of = [&](std::uint32_t v) {
            return static_cast<std::size_t>(
                std::lower_bound(inst.base.begin(), inst.base.end(), v) - inst.base.begin());
        };
        for (const auto& m : B.members) {
            std::uint64_t mask = 0;
            for (auto v : m.entries()) mask |= 1ull << index_of(v);
            inst.member_mask.push_back(mask);
            int c = color(m);
            if (c != 1 && c != 2)
                throw std::invalid_argument("homogeneous search: coloring must be 1 or 2");
            inst.member_color.push_back(c);
        }
        return inst;
    }

    // monochromatic and nonempty induced sub-fragment?
    bool homogeneous(std::uint64_t h) const {
        int seen = 0;
        for (std::size_t i = 0; i < member_mask.size(); ++i) {
            if ((member_mask[i] & ~h) != 0) continue;
            if (seen == 0)
                seen = member_color[i];
            else if (seen != member_color[i])
                return false;
        }
        return seen != 0;
    }
};

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - i + 1) / i;
    return r;
}

// The rank-th k-subset of {0..n-1} in lexicographic order, as a bitmask.
std::uint64_t unrank_combination(std::uint64_t n, std::uint64_t k, std::uint64_t rank) {
    std::uint64_t mask = 0;
    std::uint64_t next = 0;
    while (k > 0) {
        std::uint64_t c = binom(n - next - 1, k - 1);
        if (rank < c) {
            mask |= 1ull << next;
            --k;
        } else {
            rank -= c;
        }
        ++next;
    }
    return mask;
}

std::vector<std::uint32_t> mask_to_base(std::uint64_t mask,
                                        const std::vector<std::uint32_t>& base) {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < base.size(); ++i)
        if (mask & (1ull << i)) out.push_back(base[i]);
    return out;
}

} // namespace

std::optional<std::vector<std::uint32_t>> homogeneous_sub_base_serial(
    const BarrierFragment& B, const Coloring& color, std::size_t target) {
    auto inst = HomogeneousInstance::make(B, color);
    const std::uint64_t n = inst.base.size();
    if (target > n || target == 0) return std::nullopt;
    for (std::uint64_t k = n; k >= target; --k) {
        const std::uint64_t total = binom(n, k);
        for (std::uint64_t rank = 0; rank < total; ++rank) {
            std::uint64_t h = unrank_combination(n, k, rank);
            if (inst.homogeneous(h)) return mask_to_base(h, inst.base);
        }
    }
    return std::nullopt;
}

std::optional<std::vector<std::uint32_t>> homogeneous_sub_base(const BarrierFragment& B,
                                                               const Coloring& color,
                                                               std::size_t target) {
    auto inst = HomogeneousInstance::make(B, color);
    const std::uint64_t n = inst.base.size();
    if (target > n || target == 0) return std::nullopt;
    for (std::uint64_t k = n; k >= target; --k) {
        const std::uint64_t total = binom(n, k);
        std::atomic<std::uint64_t> best{total};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1024)
#endif
        for (std::int64_t rank = 0; rank < static_cast<std::int64_t>(total); ++rank) {
            std::uint64_t r = static_cast<std::uint64_t>(rank);
            if (r >= best.load(std::memory_order_relaxed)) continue;
            std::uint64_t h = unrank_combination(n, k, r);
            if (inst.homogeneous(h)) {
                std::uint64_t prev = best.load(std::memory_order_relaxed);
                while (r < prev &&
                       !best.compare_exchange_weak(prev, r, std::memory_order_relaxed)) {
                }
            }
        }
        if (best.load() < total)
            return mask_to_base(unrank_combination(n, k, best.load()), inst.base);
    }
    return std::nullopt;
}

std::optional<PerfectRefinement> perfect_refine(const QArrayTable& f, const QPresentation& Q,
                                                std::size_t target) {
    BarrierFragment sq = b_squared(f.domain);
    Coloring color = [&](const FinSeq& u) {
        auto [p0, p1] = project(u, f.domain);
        return Q.leq(f.value_of(p0), f.value_of(p1)) ? 1 : 2;
    };
    auto H = homogeneous_sub_base(sq, color, target);
    if (!H) return std::nullopt;
    PerfectRefinement out;
    out.base = *H;
    out.fragment.window = H->back();
    for (const auto& s : f.domain.members)
        if (std::includes(H->begin(), H->end(), s.entries().begin(), s.entries().end()))
            out.fragment.members.push_back(s);
    out.fragment.canonicalize();
    // the color H is homogeneous for
    out.kind = ArrayKind::Perfect;
    for (const auto& u : sq.members)
        if (std::includes(H->begin(), H->end(), u.entries().begin(), u.entries().end())) {
            out.kind = color(u) == 1 ? ArrayKind::Perfect : ArrayKind::Bad;
            break;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Builtins and io

BarrierFragment builtin_fragment(std::string_view spec) {
    auto split = [](std::string_view s) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (true) {
            auto colon = s.find(':', start);
            if (colon == std::string_view::npos) {
                out.emplace_back(s.substr(start));
                break;
            }
            out.emplace_back(s.substr(start, colon - start));
            start = colon + 1;
        }
        return out;
    };
    auto fields = split(spec);
    auto num = [&](const std::string& s) -> std::uint32_t {
        std::size_t used = 0;
        unsigned long v = std::stoul(s, &used);
        if (used != s.size()) throw std::invalid_argument("builtin fragment: bad number");
        return static_cast<std::uint32_t>(v);
    };
    BarrierFragment out;
    if (fields.size() == 3 && fields[0] == "uniform") {
        std::uint32_t k = num(fields[1]);
        std::uint32_t w = num(fields[2]);
        if (k == 0 || k > w + 1)
            throw std::invalid_argument("builtin fragment: uniform rank out of range");
        out.window = w;
        std::vector<std::uint32_t> cur;
        auto rec = [&](auto&& self, std::uint32_t next) -> void {
            if (cur.size() == k) {
                out.members.push_back(FinSeq(cur));
                return;
            }
            for (std::uint32_t v = next; v <= w; ++v) {
                cur.push_back(v);
                self(self, v + 1);
                cur.pop_back();
            }
        };
        rec(rec, 0);
        return out;
    }
    if (fields.size() == 2 && fields[0] == "rankomega") {
        std::uint32_t w = num(fields[1]);
        out.window = w;
        std::vector<std::uint32_t> cur;
        auto rec = [&](auto&& self, std::uint32_t need, std::uint32_t next) -> void {
            if (need == 0) {
                out.members.push_back(FinSeq(cur));
                return;
            }
            for (std::uint32_t v = next; v <= w; ++v) {
                cur.push_back(v);
                self(self, need - 1, v + 1);
                cur.pop_back();
            }
        };
        for (std::uint32_t r = 0; r <= w; ++r) {
            cur.assign(1, r);
            rec(rec, r, r + 1);
        }
        return out;
    }
    throw std::invalid_argument("builtin fragment: expected uniform:k:window or "
                                "rankomega:window");
}

BarrierFragment load_fragment(std::istream& in, std::uint32_t window) {
    BarrierFragment out;
    out.window = window;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::vector<std::uint32_t> xs;
        std::uint32_t v;
        while (ss >> v) xs.push_back(v);
        if (!ss.eof())
            throw std::invalid_argument("fragment file line " + std::to_string(lineno) +
                                        ": expected naturals");
        if (xs.empty()) continue;
        out.members.push_back(FinSeq(std::move(xs)));
    }
    out.canonicalize();
    return out;
}

} // namespace bqo
