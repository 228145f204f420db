#include <catch2/catch_amalgamated.hpp>

#include "cycsos/certify.hpp"

using namespace cycsos;

TEST_CASE("weight-2 certificates verify for small degrees") {
    for (std::size_t m = 1; m <= 4; ++m) {
        CHECK(verify_certificate(lemma_s4m2(m)).valid);
        CHECK(verify_certificate(lemma_s4m2p2(m)).valid);
    }
    CHECK(lemma_s4m2(2).m == 8);
    CHECK(lemma_s4m2p2(2).m == 10);
    CHECK_THROWS_AS(lemma_s4m2(0), std::invalid_argument);
    CHECK_THROWS_AS(lemma_s4m2p2(0), std::invalid_argument);
}

TEST_CASE("weight-4 certificates verify for small degrees") {
    for (std::size_t m = 1; m <= 3; ++m) {
        SOSCertificate cert = prop_s4m2p4(m);
        CHECK(cert.m == 4 * m + 2);
        CHECK(cert.k == 4);
        CHECK(cert.items.size() == m + 1);
        CHECK(verify_certificate(cert).valid);
    }
    CHECK_THROWS_AS(prop_s4m2p4(0), std::invalid_argument);
}

TEST_CASE("verification localizes mismatches by class") {
    SOSCertificate cert = lemma_s4m2(2);
    cert.items[0].first += 1;  // perturb one weight
    VerifyReport rep = verify_certificate(cert);
    CHECK_FALSE(rep.valid);
    REQUIRE_FALSE(rep.diffs.empty());
    // the perturbed square is f0* f0 with f0 = B A^3, touching only the
    // class of A^3 B A^3 B... here A^{2m-1} B A^{2m-1} B has rep:
    for (const auto& [rep_word, expected, actual] : rep.diffs) {
        CHECK(expected != actual);
        CHECK(actual == expected + 1);  // one extra copy of a single square
    }
    CHECK(rep.diffs.size() == 1);
}

TEST_CASE("empty and malformed certificates are rejected") {
    SOSCertificate empty;
    empty.m = 2;
    empty.k = 1;
    VerifyReport rep = verify_certificate(empty);
    CHECK_FALSE(rep.valid);
    REQUIRE(rep.diffs.size() == 1);
    CHECK(std::get<0>(rep.diffs[0]) == Word::parse("AB"));
    CHECK(std::get<1>(rep.diffs[0]) == 2);
    CHECK(std::get<2>(rep.diffs[0]) == 0);

    SOSCertificate bad = lemma_s4m2(1);
    bad.items[0].first = -1;
    CHECK_THROWS_AS(expand_certificate(bad), std::invalid_argument);
}

TEST_CASE("per-class representative counts are 2 or 1 by type") {
    for (std::size_t m = 1; m <= 3; ++m) {
        SOSCertificate cert = prop_s4m2p4(m);
        for (const CanonicalIndex& idx : enumerate_canonical(static_cast<std::int64_t>(m))) {
            Rational c = representative_count(idx, cert);
            CHECK(c == (idx.kind == CanonicalIndex::Kind::TypeI ? 2 : 1));
        }
    }
    CHECK_THROWS_AS(representative_count(CanonicalIndex{}, lemma_s4m2(1)),
                    std::invalid_argument);
}

TEST_CASE("certificate Gram matrices satisfy the constraint system") {
    for (std::size_t m = 1; m <= 2; ++m) {
        SOSCertificate cert = prop_s4m2p4(m);
        GramBasis basis = build_basis(BasisSetting::plain_ab(
            static_cast<std::int64_t>(cert.m), static_cast<std::int64_t>(cert.k)));
        QMatrix H = certificate_gram_matrix(cert, basis);
        CHECK(H.is_symmetric());
        CHECK(psd_check_exact(H).psd);

        GramConstraintSystem sys = build_constraints(smk(cert.m, cert.k), basis);
        for (const auto& eq : sys.equations) {
            Rational lhs = 0;
            for (const auto& e : eq.entries) {
                REQUIRE(e.block == Block::Z);
                lhs += H(e.i, e.j);
            }
            CHECK(lhs == eq.rhs);
        }
        CHECK(cyc_equivalent(gram_to_poly(H, basis), smk(cert.m, cert.k)));
    }
}
