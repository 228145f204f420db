#ifndef CYCSOS_CERTIFY_HPP
#define CYCSOS_CERTIFY_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cycsos/canonical4.hpp"
#include "cycsos/exactlinalg.hpp"
#include "cycsos/gram.hpp"
#include "cycsos/ncpoly.hpp"

namespace cycsos {

/// A weighted sum of Hermitian squares: sum_i weight_i * f_i^* f_i,
/// claimed cyclically equivalent to S_{m,k}.
struct SOSCertificate {
    RingTag ring = RingTag::AB;
    std::size_t m = 0, k = 0;
    std::vector<std::pair<Rational, NCPoly>> items;
};

/// sum_i w_i f_i^* f_i, exact.
inline NCPoly expand_certificate(const SOSCertificate& cert) {
    NCPoly p(cert.ring);
    for (const auto& [w, f] : cert.items) {
        if (w < 0) throw std::invalid_argument("negative certificate weight");
        p += w * (star(f) * f);
    }
    return p;
}

struct VerifyReport {
    bool valid = false;
    /// class representative -> (expected class sum, actual class sum),
    /// for every mismatched class.
    std::vector<std::tuple<Word, Rational, Rational>> diffs;
};

/// Exact verification: the expansion's fingerprint must equal the target's,
/// class by class.  The target fingerprint is computed without
/// materializing S_{m,k}.
inline VerifyReport verify_certificate(const SOSCertificate& cert) {
    VerifyReport rep;
    ClassSumFingerprint actual = fingerprint(expand_certificate(cert));
    ClassSumFingerprint expected = smk_fingerprint(cert.m, cert.k);
    auto ia = actual.begin();
    auto ie = expected.begin();
    LenLexLess less;
    while (ia != actual.end() || ie != expected.end()) {
        if (ie == expected.end() || (ia != actual.end() && less(ia->first, ie->first))) {
            rep.diffs.emplace_back(ia->first, Rational(0), ia->second);
            ++ia;
        } else if (ia == actual.end() || less(ie->first, ia->first)) {
            rep.diffs.emplace_back(ie->first, ie->second, Rational(0));
            ++ie;
        } else {
            if (ia->second != ie->second)
                rep.diffs.emplace_back(ie->first, ie->second, ia->second);
            ++ia;
            ++ie;
        }
    }
    rep.valid = rep.diffs.empty();
    return rep;
}

/// Certificate for S_{4m,2}: weight m on f_m and 2m on f_0..f_{m-1}, with
/// f_0 = B A^{2m-1} and f_j = A^{j-1} B A^{2m-j} + A^j B A^{2m-j-1}.
inline SOSCertificate lemma_s4m2(std::size_t m) {
    if (m < 1) throw std::invalid_argument("lemma_s4m2 requires m >= 1");
    SOSCertificate cert;
    cert.m = 4 * m;
    cert.k = 2;
    NCPoly f0 = NCPoly::monomial(wordB(1) * wordA(2 * m - 1));
    cert.items.emplace_back(Rational(2 * m), std::move(f0));
    for (std::size_t j = 1; j <= m; ++j) {
        NCPoly f = NCPoly::monomial(wordA(j - 1) * wordB(1) * wordA(2 * m - j));
        f += NCPoly::monomial(wordA(j) * wordB(1) * wordA(2 * m - j - 1));
        cert.items.emplace_back(Rational(j == m ? m : 2 * m), std::move(f));
    }
    return cert;
}

/// Certificate for S_{4m+2,2}: all weights 2m+1, f_0 = B A^{2m},
/// f_j = A^{j-1} B A^{2m-j+1} + A^j B A^{2m-j}.
inline SOSCertificate lemma_s4m2p2(std::size_t m) {
    if (m < 1) throw std::invalid_argument("lemma_s4m2p2 requires m >= 1");
    SOSCertificate cert;
    cert.m = 4 * m + 2;
    cert.k = 2;
    const Rational w(2 * m + 1);
    cert.items.emplace_back(w, NCPoly::monomial(wordB(1) * wordA(2 * m)));
    for (std::size_t j = 1; j <= m; ++j) {
        NCPoly f = NCPoly::monomial(wordA(j - 1) * wordB(1) * wordA(2 * m - j + 1));
        f += NCPoly::monomial(wordA(j) * wordB(1) * wordA(2 * m - j));
        cert.items.emplace_back(w, std::move(f));
    }
    return cert;
}

/// Certificate for S_{4m+2,4}: all weights 2m+1, with
///   f_0 = sum_s B A^{2m-s-1} B A^s,
///   f_p = sum_{i=p-1}^{p} sum_{s=p}^{2m-i-1} A^i B A^{2m-s-i-1} B A^s,
///   f_m = A^{m-1} B^2 A^m.
/// The p = 1..m-1 family is empty for m = 1.
inline SOSCertificate prop_s4m2p4(std::size_t m) {
    if (m < 1) throw std::invalid_argument("prop_s4m2p4 requires m >= 1");
    SOSCertificate cert;
    cert.m = 4 * m + 2;
    cert.k = 4;
    const Rational w(2 * m + 1);

    NCPoly f0;
    for (std::size_t s = 0; s < 2 * m; ++s)
        f0 += NCPoly::monomial(wordB(1) * wordA(2 * m - s - 1) * wordB(1) * wordA(s));
    cert.items.emplace_back(w, std::move(f0));

    for (std::size_t p = 1; p + 1 <= m; ++p) {
        NCPoly f;
        for (std::size_t i = p - 1; i <= p; ++i)
            for (std::size_t s = p; s + i + 1 <= 2 * m; ++s)
                f += NCPoly::monomial(wordA(i) * wordB(1) * wordA(2 * m - s - i - 1) *
                                      wordB(1) * wordA(s));
        cert.items.emplace_back(w, std::move(f));
    }

    cert.items.emplace_back(w, NCPoly::monomial(wordA(m - 1) * wordB(2) * wordA(m)));
    return cert;
}

/// Class sum of the unweighted square sum over the class of a canonical
/// index: 2 for type I, 1 for type II.
inline Rational representative_count(const CanonicalIndex& idx, const SOSCertificate& cert) {
    if (cert.k != 4 || cert.m % 4 != 2)
        throw std::invalid_argument("representative_count expects a S_{4m+2,4} certificate");
    const std::size_t m = (cert.m - 2) / 4;
    Word w = idx.word();
    if (w.size() != 4 * m + 2)
        throw std::invalid_argument("canonical index does not match the certificate's m");
    NCPoly sum(cert.ring);
    for (const auto& [weight, f] : cert.items) sum += star(f) * f;
    ClassSumFingerprint fp = fingerprint(sum);
    auto it = fp.find(w.canonical());
    return it == fp.end() ? Rational(0) : it->second;
}

/// Exact Gram matrix of a certificate over a basis: H = sum_i w_i c_i c_i^T
/// with c_i the coefficient vector of f_i.
inline QMatrix certificate_gram_matrix(const SOSCertificate& cert, const GramBasis& basis) {
    const std::size_t n = basis.Z.size();
    QMatrix H(n, n);
    for (const auto& [w, f] : cert.items) {
        std::vector<std::pair<std::size_t, Rational>> c;
        for (const auto& [word, coef] : f.terms())
            c.emplace_back(basis.index_of(Block::Z, word), coef);
        for (const auto& [i, ci] : c)
            for (const auto& [j, cj] : c) H(i, j) += w * ci * cj;
    }
    return H;
}

}  // namespace cycsos

#endif
