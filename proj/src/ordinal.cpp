#include "bqo/ordinal.hpp"

#include <stdexcept>

namespace bqo {

Ordinal::Ordinal() = default;
Ordinal::Ordinal(const Ordinal&) = default;
Ordinal::Ordinal(Ordinal&&) noexcept = default;
Ordinal& Ordinal::operator=(const Ordinal&) = default;
Ordinal& Ordinal::operator=(Ordinal&&) noexcept = default;
Ordinal::~Ordinal() = default;

Ordinal::Ordinal(std::vector<Term> terms, int) : terms_(std::move(terms)) {}

Ordinal Ordinal::natural(std::uint64_t n) {
    if (n == 0) return Ordinal{};
    return Ordinal{{Term{Ordinal{}, n}}, 0};
}

Ordinal Ordinal::omega() {
    return Ordinal{{Term{natural(1), 1}}, 0};
}

bool Ordinal::is_natural() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::uint64_t Ordinal::natural_value() const {
    if (terms_.empty()) return 0;
    if (!is_natural()) throw std::logic_error("ordinal: natural_value on infinite ordinal");
    return terms_[0].coeff;
}

bool Ordinal::is_successor() const {
    return !terms_.empty() && terms_.back().exponent.is_zero();
}

bool Ordinal::is_limit() const {
    return !terms_.empty() && !terms_.back().exponent.is_zero();
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coeff == 0)
            throw std::invalid_argument("ordinal: zero coefficient");
        if (i + 1 < terms.size() &&
            compare(terms[i + 1].exponent, terms[i].exponent) != Cmp::LT)
            throw std::invalid_argument("ordinal: exponents not strictly decreasing");
    }
    return Ordinal{std::move(terms), 0};
}

Cmp compare(const Ordinal& a, const Ordinal& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    const std::size_t n = std::min(ta.size(), tb.size());
    for (std::size_t i = 0; i < n; ++i) {
        Cmp c = compare(ta[i].exponent, tb[i].exponent);
        if (c != Cmp::EQ) return c;
        if (ta[i].coeff != tb[i].coeff)
            return ta[i].coeff < tb[i].coeff ? Cmp::LT : Cmp::GT;
    }
    if (ta.size() == tb.size()) return Cmp::EQ;
    return ta.size() < tb.size() ? Cmp::LT : Cmp::GT;
}

bool operator==(const Ordinal& a, const Ordinal& b) {
    return compare(a, b) == Cmp::EQ;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    switch (compare(a, b)) {
        case Cmp::LT: return std::strong_ordering::less;
        case Cmp::GT: return std::strong_ordering::greater;
        default: return std::strong_ordering::equal;
    }
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    const Ordinal& lead = tb.front().exponent;
    // Keep the terms of a whose exponent dominates b's leading exponent;
    // a lower tail of a is absorbed.
    std::vector<Ordinal::Term> out;
    out.reserve(ta.size() + tb.size());
    std::size_t i = 0;
    while (i < ta.size() && compare(ta[i].exponent, lead) == Cmp::GT)
        out.push_back(ta[i++]);
    if (i < ta.size() && compare(ta[i].exponent, lead) == Cmp::EQ) {
        out.push_back(Ordinal::Term{lead, ta[i].coeff + tb.front().coeff});
    } else {
        out.push_back(tb.front());
    }
    out.insert(out.end(), tb.begin() + 1, tb.end());
    return Ordinal::from_terms(std::move(out));
}

Ordinal omega_power(const Ordinal& a) {
    return Ordinal::from_terms({Ordinal::Term{a, 1}});
}

bool is_indecomposable(const Ordinal& a) {
    return a.terms().size() == 1 && a.terms()[0].coeff == 1;
}

Ordinal fundamental_sequence(const Ordinal& a, std::uint64_t n) {
    if (!a.is_limit())
        throw std::invalid_argument("ordinal: fundamental sequence of a non-limit ordinal");
    std::vector<Ordinal::Term> head(a.terms());
    Ordinal::Term last = head.back();
    head.pop_back();
    if (last.coeff > 1) {
        last.coeff -= 1;
        head.push_back(last);
    }
    Ordinal base = Ordinal::from_terms(std::move(head));
    const Ordinal& e = last.exponent; // e > 0 since a is a limit
    Ordinal step;
    if (e.is_successor()) {
        // w^(g+1) approximated by w^g * (n+1)
        std::vector<Ordinal::Term> et(e.terms());
        if (et.back().coeff > 1)
            et.back().coeff -= 1;
        else
            et.pop_back();
        Ordinal g = Ordinal::from_terms(std::move(et));
        step = nat_multiple(omega_power(g), n + 1);
    } else {
        step = omega_power(fundamental_sequence(e, n));
    }
    return add(base, step);
}

Ordinal interval_length(const Ordinal& a, const Ordinal& b) {
    if (compare(a, b) != Cmp::LT)
        throw std::invalid_argument("ordinal: interval_length requires a < b");
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::size_t i = 0;
    while (i < ta.size() && i < tb.size() &&
           ta[i].exponent == tb[i].exponent && ta[i].coeff == tb[i].coeff)
        ++i;
    // a < b guarantees a's terms ran out, or they differ at i with b larger.
    std::vector<Ordinal::Term> out;
    if (i < ta.size() && i < tb.size() && ta[i].exponent == tb[i].exponent) {
        out.push_back(Ordinal::Term{tb[i].exponent, tb[i].coeff - ta[i].coeff});
        ++i;
        out.insert(out.end(), tb.begin() + i, tb.end());
    } else {
        out.insert(out.end(), tb.begin() + i, tb.end());
    }
    return Ordinal::from_terms(std::move(out));
}

Ordinal nat_multiple(const Ordinal& a, std::uint64_t n) {
    if (n == 0 || a.is_zero()) return Ordinal{};
    if (n == 1) return a;
    // (w^g*c + tail) * n = w^g*(c*n) + tail
    std::vector<Ordinal::Term> out(a.terms());
    out.front().coeff *= n;
    return Ordinal::from_terms(std::move(out));
}

Ordinal omega_multiple(const Ordinal& a) {
    if (a.is_zero()) return Ordinal{};
    return omega_power(add(a.terms().front().exponent, Ordinal::natural(1)));
}

// ---------------------------------------------------------------------------
// Text form

namespace {

void print_rec(const Ordinal& a, std::string& out) {
    if (a.is_zero()) {
        out += '0';
        return;
    }
    bool first = true;
    for (const auto& t : a.terms()) {
        if (!first) out += '+';
        first = false;
        if (t.exponent.is_zero()) {
            out += std::to_string(t.coeff);
        } else if (t.exponent == Ordinal::natural(1)) {
            out += 'w';
            if (t.coeff != 1) {
                out += '*';
                out += std::to_string(t.coeff);
            }
        } else {
            out += "w^(";
            print_rec(t.exponent, out);
            out += ')';
            if (t.coeff != 1) {
                out += '*';
                out += std::to_string(t.coeff);
            }
        }
    }
}

struct OrdParser {
    std::string_view s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("ordinal parse error at offset " +
                                    std::to_string(pos) + ": " + what);
    }
    bool eof() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }
    void expect(char c) {
        if (eof() || s[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }

    std::uint64_t number() {
        if (eof() || s[pos] < '0' || s[pos] > '9') fail("expected a number");
        std::uint64_t v = 0;
        while (!eof() && s[pos] >= '0' && s[pos] <= '9') {
            v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
            ++pos;
        }
        return v;
    }

    Ordinal::Term term() {
        if (eof()) fail("expected a term");
        if (peek() == 'w') {
            ++pos;
            Ordinal exp = Ordinal::natural(1);
            if (!eof() && peek() == '^') {
                ++pos;
                expect('(');
                exp = ordinal();
                expect(')');
            }
            std::uint64_t c = 1;
            if (!eof() && peek() == '*') {
                ++pos;
                c = number();
                if (c == 0) fail("zero coefficient");
            }
            return Ordinal::Term{exp, c};
        }
        std::uint64_t n = number();
        if (n == 0) fail("'0' cannot appear inside a sum");
        return Ordinal::Term{Ordinal{}, n};
    }

    Ordinal ordinal() {
        if (!eof() && peek() == '0') {
            ++pos;
            return Ordinal{};
        }
        std::vector<Ordinal::Term> ts;
        ts.push_back(term());
        while (!eof() && peek() == '+') {
            ++pos;
            ts.push_back(term());
        }
        for (std::size_t i = 0; i + 1 < ts.size(); ++i)
            if (compare(ts[i + 1].exponent, ts[i].exponent) != Cmp::LT)
                fail("terms not in strictly decreasing exponent order");
        return Ordinal::from_terms(std::move(ts));
    }
};

} // namespace

std::string to_string(const Ordinal& a) {
    std::string out;
    print_rec(a, out);
    return out;
}

Ordinal parse_ordinal(std::string_view text) {
    OrdParser p{text};
    Ordinal r = p.ordinal();
    if (!p.eof()) p.fail("trailing input");
    return r;
}

} // namespace bqo
