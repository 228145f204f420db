#ifndef CYCSOS_NCPOLY_HPP
#define CYCSOS_NCPOLY_HPP

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cycsos/rational.hpp"
#include "cycsos/word.hpp"

namespace cycsos {

/// Which generator alphabet a polynomial lives over.  Words themselves are
/// alphabet-agnostic; the tag only drives rendering and mixing checks.
enum class RingTag { AB, XY };

inline const char* ring_name(RingTag r) { return r == RingTag::AB ? "AB" : "XY"; }

inline RingTag parse_ring(const std::string& s) {
    if (s == "AB") return RingTag::AB;
    if (s == "XY") return RingTag::XY;
    throw std::invalid_argument("unknown ring tag: " + s);
}

inline std::string render_word(const Word& w, RingTag ring) {
    if (ring == RingTag::AB) return w.str();
    std::string s = w.str();
    for (char& c : s) c = (c == 'A') ? 'X' : 'Y';
    return s;
}

/// Exact noncommutative polynomial over the two-letter free monoid with
/// rational coefficients.  Zero coefficients are never stored.
class NCPoly {
public:
    using TermMap = std::map<Word, Rational, LenLexLess>;

    explicit NCPoly(RingTag ring = RingTag::AB) : ring_(ring) {}

    static NCPoly monomial(Word w, Rational c = 1, RingTag ring = RingTag::AB) {
        NCPoly p(ring);
        p.add_term(std::move(w), std::move(c));
        return p;
    }

    RingTag ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(Word w, Rational c) {
        if (c == 0) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(std::move(w), std::move(c));
            return;
        }
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    NCPoly& operator+=(const NCPoly& q) {
        check_ring(q);
        for (const auto& [w, c] : q.terms_) add_unchecked(w, c);
        return *this;
    }

    NCPoly& operator-=(const NCPoly& q) {
        check_ring(q);
        for (const auto& [w, c] : q.terms_) add_unchecked(w, -c);
        return *this;
    }

    NCPoly& operator*=(const Rational& c) {
        if (c == 0) { terms_.clear(); return *this; }
        for (auto& [w, v] : terms_) v *= c;
        return *this;
    }

    friend NCPoly operator+(NCPoly p, const NCPoly& q) { p += q; return p; }
    friend NCPoly operator-(NCPoly p, const NCPoly& q) { p -= q; return p; }
    friend NCPoly operator*(NCPoly p, const Rational& c) { p *= c; return p; }
    friend NCPoly operator*(const Rational& c, NCPoly p) { p *= c; return p; }

    friend NCPoly operator*(const NCPoly& p, const NCPoly& q) {
        p.check_ring(q);
        NCPoly r(p.ring_);
        for (const auto& [wp, cp] : p.terms_)
            for (const auto& [wq, cq] : q.terms_)
                r.add_unchecked(wp * wq, cp * cq);
        return r;
    }

    bool operator==(const NCPoly& q) const {
        return ring_ == q.ring_ && terms_ == q.terms_;
    }

private:
    void check_ring(const NCPoly& q) const {
        if (ring_ != q.ring_)
            throw std::invalid_argument("mixed ring tags");
    }

    void add_unchecked(const Word& w, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    RingTag ring_;
    TermMap terms_;
};

/// The involution: reverses every word (generators are Hermitian and the
/// coefficients are real).
inline NCPoly star(const NCPoly& p) {
    NCPoly r(p.ring());
    for (const auto& [w, c] : p.terms()) r.add_term(w.reversed(), c);
    return r;
}

inline NCPoly commutator(const NCPoly& p, const NCPoly& q) {
    return p * q - q * p;
}

/// S_{m,k}: the sum of all C(m,k) words of length m with k letters B.
inline NCPoly smk(std::size_t m, std::size_t k, RingTag ring = RingTag::AB) {
    if (k > m) throw std::invalid_argument("smk requires k <= m");
    NCPoly p(ring);
    for_each_word(m - k, k, [&](Word w) { p.add_term(std::move(w), 1); });
    return p;
}

/// A -> X^2, B -> Y^2; degree doubles, coefficients unchanged.
inline NCPoly substitute_squares(const NCPoly& p) {
    if (p.ring() != RingTag::AB)
        throw std::invalid_argument("substitute_squares expects the AB ring");
    NCPoly r(RingTag::XY);
    for (const auto& [w, c] : p.terms()) {
        std::string s;
        s.reserve(2 * w.size());
        for (char ch : w.letters()) { s += ch; s += ch; }
        r.add_term(Word(std::move(s)), c);
    }
    return r;
}

inline Word substitute_squares(const Word& w) {
    std::string s;
    s.reserve(2 * w.size());
    for (char ch : w.letters()) { s += ch; s += ch; }
    return Word(std::move(s));
}

/// Per-cyclic-class coefficient sums, keyed by the class representative.
/// Two polynomials are cyclically equivalent iff their fingerprints agree.
using ClassSumFingerprint = std::map<Word, Rational, LenLexLess>;

inline ClassSumFingerprint fingerprint(const NCPoly& p) {
    ClassSumFingerprint fp;
    for (const auto& [w, c] : p.terms()) {
        auto [it, inserted] = fp.emplace(w.canonical(), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) fp.erase(it);
        }
    }
    return fp;
}

/// Fingerprint of S_{m,k} computed without materializing the polynomial:
/// class representative -> class order.
inline ClassSumFingerprint smk_fingerprint(std::size_t m, std::size_t k) {
    if (k > m) throw std::invalid_argument("smk requires k <= m");
    ClassSumFingerprint fp;
    for_each_word(m - k, k, [&](const Word& w) {
        auto [it, inserted] = fp.emplace(w.canonical(), 1);
        if (!inserted) it->second += 1;
    });
    return fp;
}

inline bool cyc_equivalent(const NCPoly& p, const NCPoly& q) {
    if (p.ring() != q.ring()) throw std::invalid_argument("mixed ring tags");
    return fingerprint(p) == fingerprint(q);
}

inline std::string to_string(const NCPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        Rational a = c;
        if (first) {
            if (a < 0) { os << "- "; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        std::string ws = w.empty() ? "1" : render_word(w, p.ring());
        if (a != 1 || w.empty()) {
            os << to_string(a);
            if (!w.empty()) os << "*";
        }
        if (!w.empty()) os << ws;
    }
    return os.str();
}

/// Parses "coef * WORD" terms joined by +/-; coefficient optional.
inline NCPoly parse_poly(const std::string& text, RingTag ring = RingTag::AB) {
    NCPoly p(ring);
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i < text.size() && text.substr(i) == "0") return p;
    bool negative = false;
    while (i < text.size()) {
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] == '+') { negative = false; ++i; skip_ws(); }
        else if (text[i] == '-') { negative = true; ++i; skip_ws(); }
        // coefficient (optional)
        Rational c = 1;
        std::size_t start = i;
        while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
        if (i > start) c = parse_rational(text.substr(start, i - start));
        skip_ws();
        if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
        // word (optional: "1" handled by empty)
        start = i;
        while (i < text.size() && (text[i] == 'A' || text[i] == 'B' || text[i] == 'X' ||
                                   text[i] == 'Y' || text[i] == '^' ||
                                   std::isdigit(static_cast<unsigned char>(text[i])))) {
            if (std::isdigit(static_cast<unsigned char>(text[i])) &&
                (start == i || (text[i - 1] != '^' && !std::isdigit(static_cast<unsigned char>(text[i - 1])))))
                break;
            ++i;
        }
        Word w = Word::parse(text.substr(start, i - start));
        p.add_term(std::move(w), negative ? -c : c);
        skip_ws();
        negative = false;
    }
    return p;
}

}  // namespace cycsos

#endif
