#pragma once

#include "bqo/barrier.hpp"
#include "bqo/engine.hpp"
#include "bqo/reversal.hpp"
#include "bqo/seqterm.hpp"

#include <json.hpp>

#include <string>

namespace bqo {

// Certificates are canonical JSON objects: sorted keys, integer numbers only,
// inputs embedded verbatim with digests, and a self-digest over the rest of
// the object.  A pure checker re-validates the carried witness against the
// embedded inputs without re-running any search.

// FNV-1a 64-bit content digest (integrity marker, not cryptographic).
std::string content_digest(std::string_view bytes);

struct CertificateInput {
    std::string role; // e.g. "lhs", "qo", "stream"
    std::string path;
    std::string content;
};

class CertificateBuilder {
public:
    CertificateBuilder(std::string kind, SearchBudget budget);
    void add_input(const CertificateInput& in);
    void set_payload(nlohmann::json payload);
    // canonical text, integrity digest included
    std::string text() const;

private:
    std::string kind_;
    SearchBudget budget_;
    std::vector<CertificateInput> inputs_;
    nlohmann::json payload_;
};

enum class VerifyOutcome { Pass = 0, Fail = 1, Malformed = 3 };

// Re-checks a certificate from its text alone.  diagnostics, when non-null,
// receives a short reason on Fail/Malformed.
VerifyOutcome verify_certificate(const std::string& text, std::string* diagnostics);

// JSON codecs shared by the certificate layer and the CLI.
nlohmann::json witness_to_json(const EmbeddingWitness& w);
EmbeddingWitness witness_from_json(const nlohmann::json& j);
nlohmann::json hcert_to_json(const HCertificate& c);
nlohmann::json finseq_to_json(const FinSeq& s);
FinSeq finseq_from_json(const nlohmann::json& j);

} // namespace bqo
