#include "bqo/certificate.hpp"

#include <cctype>
#include <cstdio>
#include <functional>
#include <sstream>

namespace bqo {

using nlohmann::json;

std::string content_digest(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

// ---------------------------------------------------------------------------
// JSON codecs

nlohmann::json witness_to_json(const EmbeddingWitness& w) {
    std::function<json(const EmbeddingWitness::Node&)> enc =
        [&](const EmbeddingWitness::Node& n) -> json {
        json j;
        switch (n.kind) {
            case SeqTerm::Kind::Empty: j["kind"] = "empty"; break;
            case SeqTerm::Kind::Atom:
                j["kind"] = "atom";
                j["pos"] = to_string(n.pos);
                break;
            case SeqTerm::Kind::Concat: {
                j["kind"] = "cat";
                json kids = json::array();
                for (const auto& c : n.children) kids.push_back(enc(c));
                j["children"] = std::move(kids);
                break;
            }
            case SeqTerm::Kind::OmegaRep: {
                j["kind"] = "rep";
                json passes = json::array();
                for (const auto& p : n.passes) passes.push_back(enc(p));
                j["passes"] = std::move(passes);
                j["loop_start"] = n.loop_start;
                j["sup"] = to_string(n.sup);
                break;
            }
        }
        return j;
    };
    json j;
    j["root"] = enc(w.root);
    j["end"] = to_string(w.end);
    return j;
}

EmbeddingWitness witness_from_json(const json& j) {
    std::function<EmbeddingWitness::Node(const json&)> dec =
        [&](const json& n) -> EmbeddingWitness::Node {
        EmbeddingWitness::Node out;
        std::string k = n.at("kind").get<std::string>();
        if (k == "empty") {
            out.kind = SeqTerm::Kind::Empty;
        } else if (k == "atom") {
            out.kind = SeqTerm::Kind::Atom;
            out.pos = parse_ordinal(n.at("pos").get<std::string>());
        } else if (k == "cat") {
            out.kind = SeqTerm::Kind::Concat;
            for (const auto& c : n.at("children")) out.children.push_back(dec(c));
        } else if (k == "rep") {
            out.kind = SeqTerm::Kind::OmegaRep;
            for (const auto& p : n.at("passes")) out.passes.push_back(dec(p));
            out.loop_start = n.at("loop_start").get<std::size_t>();
            out.sup = parse_ordinal(n.at("sup").get<std::string>());
        } else {
            throw std::invalid_argument("witness: unknown node kind '" + k + "'");
        }
        return out;
    };
    EmbeddingWitness w;
    w.root = dec(j.at("root"));
    w.end = parse_ordinal(j.at("end").get<std::string>());
    return w;
}

nlohmann::json hcert_to_json(const HCertificate& c) {
    std::function<json(const HCertificate::Node&)> enc =
        [&](const HCertificate::Node& n) -> json {
        json j;
        j["alpha"] = to_string(n.alpha);
        j["beta"] = to_string(n.beta);
        j["period"] = n.period;
        json kids = json::array();
        for (const auto& k : n.children) kids.push_back(enc(k));
        j["children"] = std::move(kids);
        return j;
    };
    json j;
    j["root"] = enc(c.root);
    return j;
}

nlohmann::json finseq_to_json(const FinSeq& s) {
    json arr = json::array();
    for (auto v : s.entries()) arr.push_back(v);
    return arr;
}

FinSeq finseq_from_json(const json& j) {
    std::vector<std::uint32_t> xs;
    for (const auto& v : j) xs.push_back(v.get<std::uint32_t>());
    return FinSeq(std::move(xs));
}

// ---------------------------------------------------------------------------
// Builder

CertificateBuilder::CertificateBuilder(std::string kind, SearchBudget budget)
    : kind_(std::move(kind)), budget_(budget) {}

void CertificateBuilder::add_input(const CertificateInput& in) {
    inputs_.push_back(in);
}

void CertificateBuilder::set_payload(json payload) {
    payload_ = std::move(payload);
}

namespace {

json certificate_body(const std::string& kind, const SearchBudget& budget,
                      const std::vector<CertificateInput>& inputs, const json& payload) {
    json j;
    j["kind"] = kind;
    j["budget"] = {{"fuel", budget.fuel}, {"probe_depth", budget.probe_depth}};
    json ins = json::object();
    for (const auto& in : inputs) {
        ins[in.role] = {{"path", in.path},
                        {"digest", content_digest(in.content)},
                        {"content", in.content}};
    }
    j["inputs"] = std::move(ins);
    j["payload"] = payload;
    return j;
}

} // namespace

std::string CertificateBuilder::text() const {
    json body = certificate_body(kind_, budget_, inputs_, payload_);
    body["integrity"] = content_digest(body.dump(2));
    return body.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Verification

namespace {

struct CertError {
    VerifyOutcome outcome;
    std::string what;
};

[[noreturn]] void fail(const std::string& what) {
    throw CertError{VerifyOutcome::Fail, what};
}

std::string input_content(const json& cert, const std::string& role) {
    const auto& ins = cert.at("inputs");
    if (!ins.contains(role)) fail("missing input '" + role + "'");
    const auto& in = ins.at(role);
    std::string content = in.at("content").get<std::string>();
    if (content_digest(content) != in.at("digest").get<std::string>())
        fail("digest mismatch for input '" + role + "'");
    return content;
}

QPresentation input_qo(const json& cert) {
    std::istringstream ss(input_content(cert, "qo"));
    return QPresentation::load(ss);
}

std::vector<SeqTerm> input_terms(const json& cert, const std::string& role,
                                 const QPresentation& Q) {
    std::istringstream ss(input_content(cert, role));
    std::vector<SeqTerm> out;
    std::string line;
    while (std::getline(ss, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        out.push_back(parse_sexpr(line, Q));
    }
    return out;
}

void check_embed_yes(const json& cert) {
    auto Q = input_qo(cert);
    const auto& payload = cert.at("payload");
    SeqTerm lhs = parse_sexpr(payload.at("lhs").get<std::string>(), Q);
    SeqTerm rhs = parse_sexpr(payload.at("rhs").get<std::string>(), Q);
    EmbeddingWitness w = witness_from_json(payload.at("witness"));
    if (!check_embedding(w, lhs, rhs, Q)) fail("embedding witness rejected");
}

void check_embed_no(const json& cert) {
    auto Q = input_qo(cert);
    const auto& payload = cert.at("payload");
    SeqTerm lhs = parse_sexpr(payload.at("lhs").get<std::string>(), Q);
    SeqTerm rhs = parse_sexpr(payload.at("rhs").get<std::string>(), Q);
    if (decide_embed(lhs, rhs, Q)) fail("claimed non-embedding actually embeds");
}

void check_good_pair(const json& cert) {
    auto Q = input_qo(cert);
    const auto& payload = cert.at("payload");
    if (payload.contains("site_pair")) {
        // ascending pair of a fragment-indexed array
        FinSeq s = finseq_from_json(payload.at("site_pair").at(0));
        FinSeq t = finseq_from_json(payload.at("site_pair").at(1));
        if (!triangle(s, t)) fail("good pair sites are not triangle-related");
        auto vs = payload.at("value_s").get<std::string>();
        auto vt = payload.at("value_t").get<std::string>();
        auto is = Q.id_of(vs), it = Q.id_of(vt);
        if (!is || !it) fail("good pair values outside the universe");
        if (!Q.leq(*is, *it)) fail("good pair values do not ascend");
        return;
    }
    std::size_t i = payload.at("i").get<std::size_t>();
    std::size_t j = payload.at("j").get<std::size_t>();
    if (!(i < j)) fail("good pair indices out of order");
    auto stream = input_terms(cert, "stream", Q);
    if (j >= stream.size()) fail("good pair index beyond the stream");
    EmbeddingWitness w = witness_from_json(payload.at("witness"));
    if (!check_embedding(w, stream[i], stream[j], Q)) fail("embedding witness rejected");
}

QArrayTable payload_array(const json& cert, const QPresentation& Q) {
    const auto& payload = cert.at("payload");
    QArrayTable f;
    f.domain.window = payload.at("window").get<std::uint32_t>();
    for (const auto& m : payload.at("members")) f.domain.members.push_back(finseq_from_json(m));
    for (const auto& v : payload.at("values")) {
        auto id = Q.id_of(v.get<std::string>());
        if (!id) fail("array value outside the universe");
        f.values.push_back(*id);
    }
    if (f.values.size() != f.domain.members.size()) fail("array sizes disagree");
    // classify expects sorted members
    for (std::size_t k = 0; k + 1 < f.domain.members.size(); ++k)
        if (!(f.domain.members[k] < f.domain.members[k + 1]))
            fail("array members not in canonical order");
    return f;
}

void check_bad_fragment(const json& cert) {
    auto Q = input_qo(cert);
    auto f = payload_array(cert, Q);
    for (const auto& s : f.domain.members)
        for (const auto& t : f.domain.members)
            if (triangle(s, t) && Q.leq(f.value_of(s), f.value_of(t)))
                fail("claimed bad array has an ascending pair");
}

void check_perfect_fragment(const json& cert) {
    auto Q = input_qo(cert);
    auto f = payload_array(cert, Q);
    bool any = false;
    for (const auto& s : f.domain.members)
        for (const auto& t : f.domain.members)
            if (triangle(s, t)) {
                any = true;
                if (!Q.leq(f.value_of(s), f.value_of(t)))
                    fail("claimed perfect array has a non-ascending pair");
            }
    if (!any) fail("claimed perfect array has no pairs at all");
}

int builtin_coloring(const std::string& name, const FinSeq& s) {
    if (name == "const") return 1;
    if (name == "parity") {
        std::uint64_t sum = 0;
        for (auto v : s.entries()) sum += v;
        return sum % 2 == 0 ? 1 : 2;
    }
    fail("unknown coloring '" + name + "'");
}

void check_homogeneous_base(const json& cert) {
    const auto& payload = cert.at("payload");
    std::string coloring = payload.at("coloring").get<std::string>();
    std::size_t target = payload.at("target").get<std::size_t>();
    std::vector<std::uint32_t> base;
    for (const auto& v : payload.at("base")) base.push_back(v.get<std::uint32_t>());
    if (base.size() < target) fail("homogeneous base smaller than the target");
    BarrierFragment B;
    B.window = payload.at("window").get<std::uint32_t>();
    for (const auto& m : payload.at("members")) B.members.push_back(finseq_from_json(m));
    int color = 0;
    for (const auto& m : B.members) {
        if (!std::includes(base.begin(), base.end(), m.entries().begin(),
                           m.entries().end()))
            continue;
        int c = builtin_coloring(coloring, m);
        if (color == 0) color = c;
        if (color != c) fail("induced sub-fragment is not monochromatic");
    }
    if (color == 0) fail("induced sub-fragment is empty");
}

void check_h_certificate(const json& cert) {
    auto Q = input_qo(cert);
    const auto& payload = cert.at("payload");
    SeqTerm t = parse_sexpr(payload.at("term").get<std::string>(), Q);
    auto rebuilt = h_certificate(t);
    if (!rebuilt) fail("term is not indecomposable-rooted");
    if (hcert_to_json(*rebuilt) != payload.at("tree"))
        fail("certificate tree does not match the term");
}

void check_decomposition(const json& cert) {
    auto Q = input_qo(cert);
    const auto& payload = cert.at("payload");
    SeqTerm t = parse_sexpr(payload.at("term").get<std::string>(), Q);
    std::vector<SeqTerm> parts;
    for (const auto& p : payload.at("parts"))
        parts.push_back(parse_sexpr(p.get<std::string>(), Q));
    if (parts.empty()) fail("empty decomposition");
    Ordinal sum;
    for (const auto& p : parts) {
        if (!h_certificate(p)) fail("decomposition part is not indecomposable-rooted");
        sum = add(sum, length(p));
    }
    if (!(sum == length(t))) fail("part lengths do not add up");
    if (!(SeqTerm::concat(parts) == t)) fail("parts do not concatenate to the term");
}

void check_leftmost(const json& cert) {
    const auto& payload = cert.at("payload");
    std::istringstream ss(input_content(cert, "tree"));
    LassoTree T = load_lasso_tree(ss);
    Lasso claimed;
    for (const auto& v : payload.at("stem")) claimed.stem.push_back(v.get<std::uint32_t>());
    for (const auto& v : payload.at("cycle")) claimed.cycle.push_back(v.get<std::uint32_t>());
    auto best = leftmost_path(T);
    if (!best) fail("tree is well-founded; no leftmost branch");
    if (!(*best == claimed)) fail("claimed branch is not the leftmost one");
}

void check_decode(const json& cert) {
    const auto& payload = cert.at("payload");
    std::vector<LassoTree> trees;
    for (const auto& txt : payload.at("trees")) {
        std::istringstream ss(txt.get<std::string>());
        trees.push_back(load_lasso_tree(ss));
    }
    std::vector<std::size_t> z;
    for (const auto& v : payload.at("z")) z.push_back(v.get<std::size_t>());
    if (decode_wf(trees) != z) fail("decoded set does not match the trees");
    std::vector<std::size_t> direct;
    for (std::size_t n = 0; n < trees.size(); ++n)
        if (is_well_founded(trees[n])) direct.push_back(n);
    if (direct != z) fail("decoded set disagrees with well-foundedness");
}

} // namespace

VerifyOutcome verify_certificate(const std::string& text, std::string* diagnostics) {
    try {
        json cert = json::parse(text);
        json body = cert;
        if (!body.contains("integrity")) {
            if (diagnostics) *diagnostics = "missing integrity digest";
            return VerifyOutcome::Malformed;
        }
        std::string claimed = body.at("integrity").get<std::string>();
        body.erase("integrity");
        if (content_digest(body.dump(2)) != claimed) {
            if (diagnostics) *diagnostics = "integrity digest mismatch";
            return VerifyOutcome::Fail;
        }
        std::string kind = cert.at("kind").get<std::string>();
        if (kind == "embed-yes")
            check_embed_yes(cert);
        else if (kind == "embed-no")
            check_embed_no(cert);
        else if (kind == "good-pair")
            check_good_pair(cert);
        else if (kind == "bad-fragment")
            check_bad_fragment(cert);
        else if (kind == "perfect-fragment")
            check_perfect_fragment(cert);
        else if (kind == "homogeneous-base")
            check_homogeneous_base(cert);
        else if (kind == "h-certificate")
            check_h_certificate(cert);
        else if (kind == "decomposition")
            check_decomposition(cert);
        else if (kind == "leftmost")
            check_leftmost(cert);
        else if (kind == "decode")
            check_decode(cert);
        else {
            if (diagnostics) *diagnostics = "unknown certificate kind '" + kind + "'";
            return VerifyOutcome::Malformed;
        }
        return VerifyOutcome::Pass;
    } catch (const CertError& e) {
        if (diagnostics) *diagnostics = e.what;
        return e.outcome;
    } catch (const json::exception& e) {
        if (diagnostics) *diagnostics = e.what();
        return VerifyOutcome::Malformed;
    } catch (const std::exception& e) {
        if (diagnostics) *diagnostics = e.what();
        return VerifyOutcome::Fail;
    }
}

} // namespace bqo
