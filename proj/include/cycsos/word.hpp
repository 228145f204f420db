#ifndef CYCSOS_WORD_HPP
#define CYCSOS_WORD_HPP

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cycsos {

/// A word over the two-letter alphabet {A, B}.  The same representation
/// serves words in {X, Y}: the alphabet is a label on the containing ring,
/// not on the word itself.  Immutable after construction.
class Word {
public:
    Word() = default;

    explicit Word(std::string letters) : letters_(std::move(letters)) {
        for (char c : letters_)
            if (c != 'A' && c != 'B')
                throw std::invalid_argument("word letters must be A or B");
    }

    /// Parses "AAB", "A^3B^2" (exponent sugar) or the X/Y spellings.
    /// X maps to A and Y maps to B.
    static Word parse(std::string_view text) {
        std::string out;
        std::size_t i = 0;
        while (i < text.size()) {
            char c = text[i];
            if (c == 'X') c = 'A';
            if (c == 'Y') c = 'B';
            if (c != 'A' && c != 'B')
                throw std::invalid_argument("unexpected character in word: " +
                                            std::string(text));
            ++i;
            std::size_t count = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                std::size_t start = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (i == start) throw std::invalid_argument("missing exponent in word");
                count = std::stoull(std::string(text.substr(start, i - start)));
            }
            out.append(count, c);
        }
        return Word(std::move(out));
    }

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    char at(std::size_t i) const { return letters_[i]; }
    const std::string& letters() const { return letters_; }

    std::size_t count(char c) const {
        return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), c));
    }

    /// Expanded text, always "AAABB" style.
    const std::string& str() const { return letters_; }

    /// Letter reversal; the word-level form of the anti-multiplicative
    /// involution fixing the generators.
    Word reversed() const {
        return Word(std::string(letters_.rbegin(), letters_.rend()));
    }

    /// Swaps A and B in every position.
    Word swapped() const {
        std::string s = letters_;
        for (char& c : s) c = (c == 'A') ? 'B' : 'A';
        return Word(std::move(s));
    }

    Word rotated_left(std::size_t i) const {
        if (letters_.empty()) return *this;
        i %= letters_.size();
        return Word(letters_.substr(i) + letters_.substr(0, i));
    }

    /// All length(w) left rotations in order (a single empty word for the
    /// empty word).
    std::vector<Word> rotations() const {
        if (letters_.empty()) return {Word()};
        std::vector<Word> out;
        out.reserve(letters_.size());
        for (std::size_t i = 0; i < letters_.size(); ++i) out.push_back(rotated_left(i));
        return out;
    }

    /// Lexicographically least rotation (A < B), by Booth's algorithm.
    Word canonical() const {
        if (letters_.size() < 2) return *this;
        return rotated_left(least_rotation_index());
    }

    /// Number of distinct rotations, i.e. the length of the primitive period.
    std::size_t class_order() const {
        if (letters_.empty()) return 1;
        const std::size_t n = letters_.size();
        // smallest period via prefix function of the doubled comparison
        for (std::size_t p = 1; p <= n; ++p) {
            if (n % p != 0) continue;
            bool periodic = true;
            for (std::size_t i = p; i < n && periodic; ++i)
                periodic = letters_[i] == letters_[i - p];
            if (periodic) return p;
        }
        return n;
    }

    Word operator*(const Word& rhs) const { return Word(letters_ + rhs.letters_); }

    auto operator<=>(const Word&) const = default;

private:
    std::size_t least_rotation_index() const {
        const std::string& s = letters_;
        const std::size_t n = s.size();
        std::size_t i = 0, j = 1, k = 0;
        while (i < n && j < n && k < n) {
            char a = s[(i + k) % n], b = s[(j + k) % n];
            if (a == b) { ++k; continue; }
            if (a > b) i = std::max(i + k + 1, j);
            else       j = std::max(j + k + 1, i);
            if (i == j) ++j;
            k = 0;
        }
        return std::min(i, j);
    }

    std::string letters_;
};

inline Word involution(const Word& w) { return w.reversed(); }

/// Length, then lexicographic.  Fixes term order, basis order and all
/// serialized indexing.
struct LenLexLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.letters() < b.letters();
    }
};

struct CyclicClass {
    Word representative;   // lexicographically least rotation
    std::uint64_t order;   // number of distinct rotations
};

inline CyclicClass canonical_class(const Word& w) {
    return {w.canonical(), static_cast<std::uint64_t>(w.class_order())};
}

/// A^n as a word.
inline Word wordA(std::size_t n) { return Word(std::string(n, 'A')); }
/// B^n as a word.
inline Word wordB(std::size_t n) { return Word(std::string(n, 'B')); }

/// Enumerates W_{q,p}(A,B): all words with q A's and p B's, in length-lex
/// (here plain lex) order.  Calls f on each word.
template <typename F>
void for_each_word(std::size_t nA, std::size_t nB, F&& f) {
    std::string w(nA + nB, 'A');
    // iterate over B-position subsets in lex order of the resulting string
    std::vector<std::size_t> pos(nB);
    for (std::size_t i = 0; i < nB; ++i) pos[i] = nA + i;  // last nB slots: first word AAA..BBB? no
    // lex-least word is A^nA B^nB only if B positions are the last ones; but
    // lex order over words corresponds to B positions in colex... simplest:
    // generate all combinations and sort is wasteful; walk combinations in a
    // order and let callers not rely on order unless stated.
    // We generate in lexicographic order of the word: choose B positions in
    // lexicographic order of the position vector reversed... Use standard
    // combination enumeration of positions in lex order; the induced word
    // order is lex as well (B > A, so later B positions give smaller words).
    // To keep a deterministic lex word order, collect then sort when needed.
    if (nB == 0) { f(Word(w)); return; }
    for (std::size_t i = 0; i < nB; ++i) pos[i] = i;
    const std::size_t n = nA + nB;
    while (true) {
        std::string s(n, 'A');
        for (auto p : pos) s[p] = 'B';
        f(Word(std::move(s)));
        // next combination
        std::size_t i = nB;
        while (i > 0) {
            --i;
            if (pos[i] != i + n - nB) break;
            if (i == 0) return;
        }
        if (pos[i] == i + n - nB) return;
        ++pos[i];
        for (std::size_t j = i + 1; j < nB; ++j) pos[j] = pos[j - 1] + 1;
    }
}

/// W_{q,p}(A,B) as a sorted vector (length-lex order).
inline std::vector<Word> words_with_counts(std::size_t nA, std::size_t nB) {
    std::vector<Word> out;
    for_each_word(nA, nB, [&](Word w) { out.push_back(std::move(w)); });
    std::sort(out.begin(), out.end(), LenLexLess{});
    return out;
}

}  // namespace cycsos

#endif
