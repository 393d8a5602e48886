// Batch command surface over the library: parses term/fragment/tree files,
// runs the deciders and searches, and emits re-verifiable JSON certificates.
//
// Exit codes: 0 check passed / witness found, 1 definitive negative,
// 2 budget exhausted (inconclusive), 3 input error.

#include "bqo/barrier.hpp"
#include "bqo/certificate.hpp"
#include "bqo/engine.hpp"
#include "bqo/ordinal.hpp"
#include "bqo/reversal.hpp"
#include "bqo/seqterm.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace bqo;
using nlohmann::json;

namespace {

struct Output {
    std::string json_path; // optional copy of stdout
    void emit(const std::string& text) const {
        std::cout << text;
        if (!json_path.empty()) {
            std::ofstream out(json_path, std::ios::binary);
            out << text;
        }
    }
    void emit(const json& j) const { emit(j.dump(2) + "\n"); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    return std::strtoull(v, nullptr, 10);
}

std::vector<std::string> nonblank_lines(const std::string& content) {
    std::vector<std::string> out;
    std::istringstream ss(content);
    std::string line;
    while (std::getline(ss, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (!blank) out.push_back(line);
    }
    return out;
}

SeqTerm single_term(const std::string& content, const QPresentation& Q,
                    const std::string& what) {
    auto lines = nonblank_lines(content);
    if (lines.size() != 1)
        throw std::invalid_argument(what + ": expected exactly one term");
    return parse_sexpr(lines.front(), Q);
}

BarrierFragment fragment_from_spec(const std::string& spec, std::uint32_t window,
                                   std::string* content_out) {
    if (spec.rfind("uniform:", 0) == 0 || spec.rfind("rankomega:", 0) == 0) {
        auto frag = builtin_fragment(spec);
        if (content_out) *content_out = spec;
        return frag;
    }
    std::string content = read_file(spec);
    if (content_out) *content_out = content;
    std::istringstream ss(content);
    return load_fragment(ss, window);
}

json report_json(const VerifyReport& rep) {
    json j;
    j["window"] = rep.window;
    j["base"] = rep.base;
    json items = json::array();
    for (const auto& v : rep.items)
        items.push_back({{"condition", v.condition}, {"soft", v.soft}, {"detail", v.detail}});
    j["violations"] = std::move(items);
    j["pass"] = rep.pass();
    return j;
}

json fragment_json(const BarrierFragment& B) {
    json members = json::array();
    for (const auto& m : B.members) members.push_back(finseq_to_json(m));
    return members;
}

// values file lines: `<entries> : <element or term>`
std::vector<std::pair<FinSeq, std::string>> parse_values(const std::string& content) {
    std::vector<std::pair<FinSeq, std::string>> out;
    for (const auto& line : nonblank_lines(content)) {
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("values file: expected '<entries> : <value>'");
        std::istringstream left(line.substr(0, colon));
        std::vector<std::uint32_t> xs;
        std::uint32_t v;
        while (left >> v) xs.push_back(v);
        if (!left.eof()) throw std::invalid_argument("values file: bad member entries");
        std::string value = line.substr(colon + 1);
        auto first = value.find_first_not_of(" \t");
        auto last = value.find_last_not_of(" \t");
        if (first == std::string::npos)
            throw std::invalid_argument("values file: empty value");
        out.emplace_back(FinSeq(std::move(xs)), value.substr(first, last - first + 1));
    }
    return out;
}

QArrayTable array_from_files(const BarrierFragment& frag, const std::string& values_content,
                             const QPresentation& Q) {
    auto pairs = parse_values(values_content);
    QArrayTable f;
    f.domain = frag;
    f.domain.canonicalize();
    f.values.assign(f.domain.members.size(), 0);
    std::vector<bool> seen(f.domain.members.size(), false);
    for (const auto& [site, name] : pairs) {
        auto it = std::lower_bound(f.domain.members.begin(), f.domain.members.end(), site);
        if (it == f.domain.members.end() || !(*it == site))
            throw std::invalid_argument("values file: " + to_string(site) +
                                        " is not a fragment member");
        auto id = Q.id_of(name);
        if (!id) throw std::invalid_argument("values file: unknown element '" + name + "'");
        std::size_t idx = static_cast<std::size_t>(it - f.domain.members.begin());
        f.values[idx] = *id;
        seen[idx] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw std::invalid_argument("values file: no value for " +
                                        to_string(f.domain.members[i]));
    return f;
}

json array_payload(const QArrayTable& f, const QPresentation& Q) {
    json j;
    j["window"] = f.domain.window;
    j["members"] = fragment_json(f.domain);
    json vals = json::array();
    for (auto v : f.values) vals.push_back(Q.name_of(v));
    j["values"] = std::move(vals);
    return j;
}

Coloring named_coloring(const std::string& name) {
    if (name == "const") return [](const FinSeq&) { return 1; };
    if (name == "parity")
        return [](const FinSeq& s) {
            std::uint64_t sum = 0;
            for (auto v : s.entries()) sum += v;
            return sum % 2 == 0 ? 1 : 2;
        };
    throw std::invalid_argument("unknown coloring '" + name + "' (const, parity)");
}

// deterministic stream of finite words: decreasing-length ramps, letters
// drawn from higher in the order early in each ramp
TermStream ramp_stream(unsigned seed, std::size_t alphabet) {
    return [seed, alphabet](std::size_t i) -> std::optional<SeqTerm> {
        std::mt19937_64 rng(seed * 7919 + i);
        std::size_t ramp = i / 6, step = i % 6;
        std::size_t len = 6 - step;
        std::vector<ElemId> w;
        for (std::size_t k = 0; k < len; ++k) {
            auto lo = static_cast<ElemId>(ramp % alphabet);
            std::uniform_int_distribution<ElemId> letter(lo,
                                                         static_cast<ElemId>(alphabet - 1));
            w.push_back(letter(rng));
        }
        return term_of_atoms(w);
    };
}

int cmd_verify(const std::string& path, const Output& out) {
    std::string text = read_file(path);
    std::string diag;
    auto outcome = verify_certificate(text, &diag);
    json j;
    j["verify"] = outcome == VerifyOutcome::Pass ? "pass" : "fail";
    if (!diag.empty()) j["diagnostics"] = diag;
    out.emit(j);
    return static_cast<int>(outcome);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wqo/bqo combinatorics toolkit"};
    app.require_subcommand(1);
    app.fallthrough(true);

    SearchBudget budget{env_u64("BQO_DEFAULT_FUEL", 100000),
                        static_cast<std::uint32_t>(env_u64("BQO_DEFAULT_PROBE_DEPTH", 3))};
    Output out;
    std::uint32_t window = 8;

    app.add_option("--fuel", budget.fuel, "search fuel (node expansions)");
    app.add_option("--probe-depth", budget.probe_depth, "extendability lookahead");
    app.add_option("--json", out.json_path, "also write the JSON output to this file");
    app.add_option("--window", window, "base window {0..N} for fragment files");

    // --- ord
    auto* ord = app.add_subcommand("ord", "ordinal arithmetic on notations");
    std::string ord_op = "cmp", ord_lhs, ord_rhs;
    std::uint64_t ord_n = 0;
    ord->add_option("--op", ord_op, "cmp|add|fs|interval|indecomposable");
    ord->add_option("--lhs", ord_lhs)->required();
    ord->add_option("--rhs", ord_rhs);
    ord->add_option("--n", ord_n, "index for fs");

    // --- embed
    auto* embed = app.add_subcommand("embed", "embeddability of transfinite terms");
    std::string embed_lhs, embed_rhs, embed_qo, embed_mode = "embed";
    embed->add_option("--lhs", embed_lhs, "term file")->required();
    embed->add_option("--rhs", embed_rhs, "term file");
    embed->add_option("--qo", embed_qo, "quasi-order file")->required();
    embed->add_option("--mode", embed_mode, "embed|h-certificate|decompose");

    // --- barrier
    auto* barrier = app.add_subcommand("barrier", "verify block/barrier fragments");
    std::string bar_fragment, bar_kind = "barrier";
    bool bar_square = false, bar_refine = false;
    barrier->add_option("--fragment", bar_fragment, "file or uniform:k:N / rankomega:N")
        ->required();
    barrier->add_option("--kind", bar_kind, "block|barrier");
    barrier->add_flag("--square", bar_square, "square the fragment first");
    barrier->add_flag("--refine", bar_refine, "refine a block to a barrier");

    // --- array
    auto* array = app.add_subcommand("array", "classify and refine fragment arrays");
    std::string arr_fragment, arr_values, arr_qo, arr_coloring = "parity";
    bool arr_refine = false, arr_homog = false;
    std::size_t arr_target = 2;
    array->add_option("--fragment", arr_fragment)->required();
    array->add_option("--values", arr_values, "values file: '<entries> : <element>'");
    array->add_option("--qo", arr_qo);
    array->add_flag("--refine", arr_refine, "search a bad/perfect sub-fragment");
    array->add_flag("--homogeneous", arr_homog, "search a homogeneous sub-base");
    array->add_option("--coloring", arr_coloring, "const|parity (with --homogeneous)");
    array->add_option("--target", arr_target, "minimal sub-base size");

    // --- mbs
    auto* mbs = app.add_subcommand("mbs", "minimal bad sequence / array search");
    std::string mbs_stream, mbs_qo, mbs_mode = "higman", mbs_fragment;
    mbs->add_option("--stream", mbs_stream, "seed file")->required();
    mbs->add_option("--qo", mbs_qo)->required();
    mbs->add_option("--mode", mbs_mode, "higman|elements");
    mbs->add_option("--fragment", mbs_fragment, "array mode: fragment spec");

    // --- refute
    auto* refute = app.add_subcommand("refute", "good-pair search over word streams");
    std::string ref_stream, ref_qo, ref_gen;
    refute->add_option("--stream", ref_stream, "term file (one per line)");
    refute->add_option("--qo", ref_qo)->required();
    refute->add_option("--gen", ref_gen, "builtin stream ramps:<seed>");

    // --- kb
    auto* kb = app.add_subcommand("kb", "Kleene-Brouwer order and leftmost branches");
    std::string kb_tree, kb_lhs, kb_rhs;
    bool kb_leftmost = false;
    kb->add_option("--tree", kb_tree, "tree file");
    kb->add_flag("--leftmost", kb_leftmost, "find the leftmost branch");
    kb->add_option("--lhs", kb_lhs, "space-separated sequence");
    kb->add_option("--rhs", kb_rhs, "space-separated sequence");

    // --- decode
    auto* decode = app.add_subcommand("decode", "well-foundedness decoding of a family");
    std::vector<std::string> dec_trees;
    decode->add_option("--tree", dec_trees, "tree file (repeat per tree)")->required();

    // --- verify
    auto* verify = app.add_subcommand("verify", "re-check a certificate");
    std::string ver_cert;
    verify->add_option("--certificate", ver_cert)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        budget.validate();

        if (ord->parsed()) {
            json j;
            j["op"] = ord_op;
            Ordinal a = parse_ordinal(ord_lhs);
            if (ord_op == "cmp") {
                Ordinal b = parse_ordinal(ord_rhs);
                Cmp c = compare(a, b);
                j["result"] = c == Cmp::LT ? "LT" : c == Cmp::EQ ? "EQ" : "GT";
            } else if (ord_op == "add") {
                j["result"] = to_string(add(a, parse_ordinal(ord_rhs)));
            } else if (ord_op == "fs") {
                j["result"] = to_string(fundamental_sequence(a, ord_n));
            } else if (ord_op == "interval") {
                j["result"] = to_string(interval_length(a, parse_ordinal(ord_rhs)));
            } else if (ord_op == "indecomposable") {
                j["result"] = is_indecomposable(a);
            } else {
                throw std::invalid_argument("unknown ord op '" + ord_op + "'");
            }
            out.emit(j);
            return 0;
        }

        if (embed->parsed()) {
            std::string qo_content = read_file(embed_qo);
            std::istringstream qss(qo_content);
            auto Q = QPresentation::load(qss);
            std::string lhs_content = read_file(embed_lhs);
            SeqTerm lhs = single_term(lhs_content, Q, "--lhs");
            if (embed_mode == "h-certificate") {
                auto cert = h_certificate(lhs);
                if (!cert) {
                    out.emit(json{{"result", "not-h"}});
                    return 1;
                }
                CertificateBuilder b("h-certificate", budget);
                b.add_input({"qo", embed_qo, qo_content});
                b.add_input({"lhs", embed_lhs, lhs_content});
                b.set_payload(json{{"term", to_sexpr(lhs, Q)}, {"tree", hcert_to_json(*cert)}});
                out.emit(b.text());
                return 0;
            }
            if (embed_mode == "decompose") {
                auto parts = hi_decompose(lhs);
                CertificateBuilder b("decomposition", budget);
                b.add_input({"qo", embed_qo, qo_content});
                b.add_input({"lhs", embed_lhs, lhs_content});
                json ps = json::array();
                for (const auto& p : parts) ps.push_back(to_sexpr(p, Q));
                b.set_payload(json{{"term", to_sexpr(lhs, Q)}, {"parts", std::move(ps)}});
                out.emit(b.text());
                return 0;
            }
            if (embed_mode != "embed")
                throw std::invalid_argument("unknown embed mode '" + embed_mode + "'");
            if (embed_rhs.empty()) throw std::invalid_argument("--rhs is required");
            std::string rhs_content = read_file(embed_rhs);
            SeqTerm rhs = single_term(rhs_content, Q, "--rhs");
            auto w = decide_embed(lhs, rhs, Q);
            CertificateBuilder b(w ? "embed-yes" : "embed-no", budget);
            b.add_input({"qo", embed_qo, qo_content});
            b.add_input({"lhs", embed_lhs, lhs_content});
            b.add_input({"rhs", embed_rhs, rhs_content});
            json payload{{"lhs", to_sexpr(lhs, Q)}, {"rhs", to_sexpr(rhs, Q)}};
            if (w) payload["witness"] = witness_to_json(*w);
            b.set_payload(std::move(payload));
            out.emit(b.text());
            return w ? 0 : 1;
        }

        if (barrier->parsed()) {
            std::string content;
            auto frag = fragment_from_spec(bar_fragment, window, &content);
            if (bar_square) frag = b_squared(frag);
            json j;
            if (bar_refine) {
                auto refined = refine_block_to_barrier(frag);
                j["refined"] = fragment_json(refined.fragment);
                j["report"] = report_json(refined.report);
                out.emit(j);
                return refined.report.pass() ? 0 : 1;
            }
            VerifyReport rep = bar_kind == "block" ? verify_block_fragment(frag)
                                                   : verify_barrier_fragment(frag);
            j["report"] = report_json(rep);
            out.emit(j);
            return rep.pass() ? 0 : 1;
        }

        if (array->parsed()) {
            std::string frag_content;
            auto frag = fragment_from_spec(arr_fragment, window, &frag_content);
            if (arr_homog) {
                auto H = homogeneous_sub_base(frag, named_coloring(arr_coloring), arr_target);
                if (!H) {
                    out.emit(json{{"result", "not-found"}});
                    return 1;
                }
                CertificateBuilder b("homogeneous-base", budget);
                b.add_input({"fragment", arr_fragment, frag_content});
                b.set_payload(json{{"window", frag.window},
                                   {"members", fragment_json(frag)},
                                   {"coloring", arr_coloring},
                                   {"target", arr_target},
                                   {"base", *H}});
                out.emit(b.text());
                return 0;
            }
            if (arr_values.empty() || arr_qo.empty())
                throw std::invalid_argument("--values and --qo are required");
            std::string qo_content = read_file(arr_qo);
            std::istringstream qss(qo_content);
            auto Q = QPresentation::load(qss);
            std::string values_content = read_file(arr_values);
            auto table = array_from_files(frag, values_content, Q);
            if (arr_refine) {
                auto pr = perfect_refine(table, Q, arr_target);
                if (!pr) {
                    out.emit(json{{"result", "not-found"}});
                    return 2;
                }
                QArrayTable sub;
                sub.domain = pr->fragment;
                for (const auto& m : pr->fragment.members)
                    sub.values.push_back(table.value_of(m));
                CertificateBuilder b(
                    pr->kind == ArrayKind::Perfect ? "perfect-fragment" : "bad-fragment",
                    budget);
                b.add_input({"fragment", arr_fragment, frag_content});
                b.add_input({"values", arr_values, values_content});
                b.add_input({"qo", arr_qo, qo_content});
                json payload = array_payload(sub, Q);
                payload["base"] = pr->base;
                b.set_payload(std::move(payload));
                out.emit(b.text());
                return 0;
            }
            auto cls = classify_array(table, Q);
            if (cls.kind == ArrayKind::Mixed) {
                CertificateBuilder b("good-pair", budget);
                b.add_input({"fragment", arr_fragment, frag_content});
                b.add_input({"values", arr_values, values_content});
                b.add_input({"qo", arr_qo, qo_content});
                auto [s, t] = *cls.good_witness;
                b.set_payload(json{{"site_pair", {finseq_to_json(s), finseq_to_json(t)}},
                                   {"value_s", Q.name_of(table.value_of(s))},
                                   {"value_t", Q.name_of(table.value_of(t))}});
                out.emit(b.text());
                return 0;
            }
            CertificateBuilder b(
                cls.kind == ArrayKind::Perfect ? "perfect-fragment" : "bad-fragment", budget);
            b.add_input({"fragment", arr_fragment, frag_content});
            b.add_input({"values", arr_values, values_content});
            b.add_input({"qo", arr_qo, qo_content});
            b.set_payload(array_payload(table, Q));
            out.emit(b.text());
            return 0;
        }

        if (mbs->parsed()) {
            std::string qo_content = read_file(mbs_qo);
            std::istringstream qss(qo_content);
            auto Q = QPresentation::load(qss);
            std::string stream_content = read_file(mbs_stream);
            json j;
            json steps = json::array();
            bool aborted = false;
            if (!mbs_fragment.empty()) {
                auto frag = fragment_from_spec(mbs_fragment, window, nullptr);
                if (mbs_mode != "higman")
                    throw std::invalid_argument("array mode supports --mode higman only");
                auto ops = higman_sequence_ops(Q);
                std::vector<std::pair<FinSeq, SeqTerm>> seed;
                for (const auto& [site, text] : parse_values(stream_content))
                    seed.emplace_back(site, parse_sexpr(text, Q));
                for (const auto& [site, value] : seed) {
                    if (!frag.contains(site))
                        throw std::invalid_argument("seed site " + to_string(site) +
                                                    " is not a fragment member");
                }
                auto res = locally_minimal_bad_array(ops, seed, budget);
                for (const auto& s : res.steps)
                    steps.push_back({{"site", finseq_to_json(s.site)},
                                     {"value", to_sexpr(s.value, Q)},
                                     {"provenance", to_string(s.provenance)}});
                aborted = res.aborted;
            } else if (mbs_mode == "higman") {
                auto ops = higman_sequence_ops(Q);
                std::vector<SeqTerm> seed;
                for (const auto& line : nonblank_lines(stream_content))
                    seed.push_back(parse_sexpr(line, Q));
                auto res = minimal_bad_sequence(ops, seed, budget);
                for (const auto& s : res.steps)
                    steps.push_back({{"index", s.index},
                                     {"value", to_sexpr(s.value, Q)},
                                     {"provenance", to_string(s.provenance)}});
                aborted = res.aborted;
            } else if (mbs_mode == "elements") {
                auto ops = presented_ops(Q);
                std::vector<std::string> seed = nonblank_lines(stream_content);
                for (auto& s : seed) {
                    std::istringstream ss(s);
                    ss >> s; // single token per line
                }
                auto res = minimal_bad_sequence(ops, seed, budget);
                for (const auto& s : res.steps)
                    steps.push_back({{"index", s.index},
                                     {"value", s.value},
                                     {"provenance", to_string(s.provenance)}});
                aborted = res.aborted;
            } else {
                throw std::invalid_argument("unknown mbs mode '" + mbs_mode + "'");
            }
            j["steps"] = std::move(steps);
            j["aborted"] = aborted;
            j["budget"] = {{"fuel", budget.fuel}, {"probe_depth", budget.probe_depth}};
            out.emit(j);
            return aborted ? 2 : 0;
        }

        if (refute->parsed()) {
            std::string qo_content = read_file(ref_qo);
            std::istringstream qss(qo_content);
            auto Q = QPresentation::load(qss);
            std::optional<GoodPair> r;
            std::vector<SeqTerm> pulled;
            if (!ref_gen.empty()) {
                if (ref_gen.rfind("ramps:", 0) != 0)
                    throw std::invalid_argument("unknown generator '" + ref_gen + "'");
                unsigned seed = static_cast<unsigned>(
                    std::stoul(ref_gen.substr(std::string("ramps:").size())));
                auto gen = ramp_stream(seed, Q.size());
                TermStream recording = [&pulled, gen](std::size_t i) {
                    auto t = gen(i);
                    if (t && i >= pulled.size()) pulled.push_back(*t);
                    return t;
                };
                r = higman_refute(Q, recording, budget);
            } else {
                if (ref_stream.empty())
                    throw std::invalid_argument("--stream or --gen is required");
                std::string stream_content = read_file(ref_stream);
                for (const auto& line : nonblank_lines(stream_content))
                    pulled.push_back(parse_sexpr(line, Q));
                r = higman_refute(Q, pulled, budget);
            }
            if (!r) {
                out.emit(json{{"result", "fuel-exhausted"}});
                return 2;
            }
            // materialize the inspected stream prefix for the certificate
            std::string stream_lines;
            for (const auto& t : pulled) stream_lines += to_sexpr(t, Q) + "\n";
            CertificateBuilder b("good-pair", budget);
            b.add_input({"qo", ref_qo, qo_content});
            b.add_input({"stream", ref_stream.empty() ? ref_gen : ref_stream, stream_lines});
            b.set_payload(json{{"i", r->i},
                               {"j", r->j},
                               {"witness", witness_to_json(r->witness)}});
            out.emit(b.text());
            return 0;
        }

        if (kb->parsed()) {
            if (kb_leftmost || !kb_tree.empty()) {
                if (kb_tree.empty()) throw std::invalid_argument("--tree is required");
                std::string tree_content = read_file(kb_tree);
                std::istringstream ss(tree_content);
                auto T = load_lasso_tree(ss);
                auto l = leftmost_path(T);
                if (!l) {
                    out.emit(json{{"result", "well-founded"}});
                    return 1;
                }
                CertificateBuilder b("leftmost", budget);
                b.add_input({"tree", kb_tree, tree_content});
                b.set_payload(json{{"stem", l->stem}, {"cycle", l->cycle}});
                out.emit(b.text());
                return 0;
            }
            auto parse_seq = [](const std::string& text) {
                std::istringstream ss(text);
                std::vector<std::uint32_t> xs;
                std::uint32_t v;
                while (ss >> v) xs.push_back(v);
                if (!ss.eof()) throw std::invalid_argument("kb: bad sequence");
                return xs;
            };
            auto s = parse_seq(kb_lhs);
            auto t = parse_seq(kb_rhs);
            out.emit(json{{"result", kb_compare(s, t) == KbOrder::LE ? "LE" : "GT"}});
            return 0;
        }

        if (decode->parsed()) {
            std::vector<LassoTree> trees;
            json tree_texts = json::array();
            for (const auto& path : dec_trees) {
                std::string content = read_file(path);
                std::istringstream ss(content);
                trees.push_back(load_lasso_tree(ss));
                tree_texts.push_back(to_string(trees.back()));
            }
            auto z = decode_wf(trees);
            CertificateBuilder b("decode", budget);
            b.set_payload(json{{"trees", std::move(tree_texts)}, {"z", z}});
            out.emit(b.text());
            return 0;
        }

        if (verify->parsed()) return cmd_verify(ver_cert, out);

        throw std::invalid_argument("no subcommand");
    } catch (const std::exception& e) {
        out.emit(json{{"error", e.what()}});
        return 3;
    }
    return 0;
}
