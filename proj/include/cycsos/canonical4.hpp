#ifndef CYCSOS_CANONICAL4_HPP
#define CYCSOS_CANONICAL4_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cycsos/word.hpp"

namespace cycsos {

/// Canonical index of a four-B word: the unique rotation
/// B A^{k1} B A^{k2} B A^{k3} B A^{k4} with (k1 <= k3 and k2 < k4)  [type I]
/// or (k1 = k3 <= k2 = k4)                                          [type II].
struct CanonicalIndex {
    enum class Kind { TypeI, TypeII };

    std::int64_t k1 = 0, k2 = 0, k3 = 0, k4 = 0;
    Kind kind = Kind::TypeI;

    static bool is_type1(std::int64_t k1, std::int64_t k2, std::int64_t k3,
                         std::int64_t k4) {
        return k1 <= k3 && k2 < k4;
    }
    static bool is_type2(std::int64_t k1, std::int64_t k2, std::int64_t k3,
                         std::int64_t k4) {
        return k1 == k3 && k2 == k4 && k1 <= k2;
    }

    Word word() const {
        std::string s;
        s.reserve(static_cast<std::size_t>(4 + k1 + k2 + k3 + k4));
        for (std::int64_t g : {k1, k2, k3, k4}) {
            s += 'B';
            s.append(static_cast<std::size_t>(g), 'A');
        }
        return Word(std::move(s));
    }

    bool operator==(const CanonicalIndex&) const = default;
};

/// Exponent vector iota with E(iota) = A^{i1} B A^{i2} B A^{i3} B A^{i4} B A^{i5}.
struct ExponentIndex {
    std::array<std::int64_t, 5> e{};

    Word word() const {
        std::string s;
        for (int t = 0; t < 5; ++t) {
            s.append(static_cast<std::size_t>(e[static_cast<std::size_t>(t)]), 'A');
            if (t < 4) s += 'B';
        }
        return Word(std::move(s));
    }
};

/// The canonically ordered form of a word with exactly four B's.
inline CanonicalIndex canonical_ordered_form(const Word& w) {
    if (w.count('B') != 4)
        throw std::invalid_argument("canonical_ordered_form requires exactly four B's");
    const std::size_t n = w.size();
    std::array<std::size_t, 4> pos{};
    std::size_t bi = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (w.at(i) == 'B') pos[bi++] = i;

    for (std::size_t a = 0; a < 4; ++a) {
        std::array<std::int64_t, 4> g{};
        for (std::size_t t = 0; t < 4; ++t) {
            std::size_t p1 = pos[(a + t) % 4], p2 = pos[(a + t + 1) % 4];
            g[t] = static_cast<std::int64_t>((p2 + n - p1) % n) - 1;
        }
        if (CanonicalIndex::is_type1(g[0], g[1], g[2], g[3]))
            return {g[0], g[1], g[2], g[3], CanonicalIndex::Kind::TypeI};
        if (CanonicalIndex::is_type2(g[0], g[1], g[2], g[3]))
            return {g[0], g[1], g[2], g[3], CanonicalIndex::Kind::TypeII};
    }
    throw std::logic_error("no canonically ordered rotation found");
}

/// Class order of a canonically ordered word in W_{4m-2,4}: 4m+2 for type I,
/// 2m+1 for type II.
inline std::uint64_t class_order_smk4(const Word& w) {
    if (w.count('B') != 4)
        throw std::invalid_argument("class_order_smk4 requires exactly four B's");
    const std::size_t nA = w.count('A');
    if (nA % 4 != 2)
        throw std::invalid_argument("class_order_smk4 requires a word in W_{4m-2,4}");
    const std::uint64_t m = (nA + 2) / 4;
    CanonicalIndex ci = canonical_ordered_form(w);
    if (ci.word() != w)
        throw std::invalid_argument("class_order_smk4 requires a canonically ordered word");
    return ci.kind == CanonicalIndex::Kind::TypeI ? 4 * m + 2 : 2 * m + 1;
}

/// Closed-form canonical index for iota = (s, l-i-s, i+j, l-j-t, t) with
/// l = 2m-1, avoiding the rotation search.  Matches
/// canonical_ordered_form(E(iota)) on all of I.
inline CanonicalIndex o_closed_form(std::int64_t p, std::int64_t i, std::int64_t j,
                                    std::int64_t s, std::int64_t t, std::int64_t m) {
    const std::int64_t l = 2 * m - 1;
    const std::int64_t lo = std::max<std::int64_t>(0, p - 1);
    const std::int64_t hi = std::min(p, m - 1);
    if (m < 1 || p < 0 || p > m || i < lo || i > hi || j < lo || j > hi ||
        s < p || s > l - i || t < p || t > l - j)
        throw std::invalid_argument("o_closed_form index out of range");

    std::array<std::int64_t, 4> g{};
    const bool upper = (i == j && t > s) || (i > j && t - 1 > s) || (j > i && t > s - 1);
    if (upper)
        g = {i + j, l - j - t, s + t, l - i - s};
    else
        g = {l - i - s, i + j, l - j - t, s + t};

    // The periodic (a,b,a,b) outputs land with a > b on the diagonal points
    // iota_p; the canonically ordered rotation is then (b,a,b,a).
    if (g[0] == g[2] && g[1] == g[3] && g[0] > g[1])
        g = {g[1], g[2], g[3], g[0]};

    CanonicalIndex::Kind kind = CanonicalIndex::is_type2(g[0], g[1], g[2], g[3])
                                    ? CanonicalIndex::Kind::TypeII
                                    : CanonicalIndex::Kind::TypeI;
    return {g[0], g[1], g[2], g[3], kind};
}

/// All canonically ordered indices for W_{4m-2,4}: exactly
/// 2m(2m-1)(2m+1)/3 of type I and m of type II.
inline std::vector<CanonicalIndex> enumerate_canonical(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("enumerate_canonical requires m >= 1");
    const std::int64_t total = 4 * m - 2;
    std::vector<CanonicalIndex> out;
    for (std::int64_t k1 = 0; k1 <= total; ++k1)
        for (std::int64_t k2 = 0; k1 + k2 <= total; ++k2)
            for (std::int64_t k3 = 0; k1 + k2 + k3 <= total; ++k3) {
                const std::int64_t k4 = total - k1 - k2 - k3;
                if (CanonicalIndex::is_type1(k1, k2, k3, k4))
                    out.push_back({k1, k2, k3, k4, CanonicalIndex::Kind::TypeI});
                else if (CanonicalIndex::is_type2(k1, k2, k3, k4))
                    out.push_back({k1, k2, k3, k4, CanonicalIndex::Kind::TypeII});
            }
    return out;
}

}  // namespace cycsos

#endif
