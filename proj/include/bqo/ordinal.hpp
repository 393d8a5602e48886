#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bqo {

// Ordinal notations below epsilon_0 in Cantor normal form:
// a value is a finite list of terms w^(exponent)*coefficient with strictly
// decreasing exponents and coefficients >= 1.  The empty list is 0.
// Values are immutable; all operations are pure.
class Ordinal {
public:
    struct Term;

    Ordinal();                                 // zero
    Ordinal(const Ordinal&);
    Ordinal(Ordinal&&) noexcept;
    Ordinal& operator=(const Ordinal&);
    Ordinal& operator=(Ordinal&&) noexcept;
    ~Ordinal();

    static Ordinal natural(std::uint64_t n);
    static Ordinal omega();

    // Inspection.
    bool is_zero() const { return terms_.empty(); }
    bool is_natural() const;                   // 0 or single term with exponent 0
    std::uint64_t natural_value() const;       // requires is_natural()
    bool is_successor() const;                 // nonzero and last exponent is 0
    bool is_limit() const;                     // nonzero and last exponent is > 0
    const std::vector<Term>& terms() const { return terms_; }

    // Builds a value from a term list, validating the normal-form invariants.
    static Ordinal from_terms(std::vector<Term> terms);

private:
    std::vector<Term> terms_;
    explicit Ordinal(std::vector<Term> terms, int /*unchecked tag*/);
};

struct Ordinal::Term {
    Ordinal exponent;
    std::uint64_t coeff = 1;
};

enum class Cmp { LT, EQ, GT };

Cmp compare(const Ordinal& a, const Ordinal& b);
bool operator==(const Ordinal& a, const Ordinal& b);
std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

// Left-absorbing normal-form addition: a + b.
Ordinal add(const Ordinal& a, const Ordinal& b);

// w^a as a single-term notation.
Ordinal omega_power(const Ordinal& a);

// True iff the notation has exactly one term with coefficient 1,
// i.e. the value is of the form w^a.
bool is_indecomposable(const Ordinal& a);

// n-th element of the standard fundamental sequence of a limit ordinal:
// (w^(g+1))[n] = w^g * (n+1), (w^l)[n] = w^(l[n]) for limit l, and
// (b + p)[n] = b + p[n] for the final CNF term p.  Rejects 0 and successors.
Ordinal fundamental_sequence(const Ordinal& a, std::uint64_t n);

// The unique g with a + g = b.  Requires a < b.
Ordinal interval_length(const Ordinal& a, const Ordinal& b);

// a * n (finite multiple, i.e. a added to itself n times).
Ordinal nat_multiple(const Ordinal& a, std::uint64_t n);

// a * w = sup_n (a * n); equals w^(g+1) where g is a's leading exponent.
Ordinal omega_multiple(const Ordinal& a);

// Textual grammar: `0`, `w`, `w^(<ord>)*<nat>`, `+`-separated terms,
// e.g. `w^(w)+w*2+1`.  print/parse round-trip bit-exactly; parse rejects
// strings that are not in normal form.
std::string to_string(const Ordinal& a);
Ordinal parse_ordinal(std::string_view text);

} // namespace bqo
