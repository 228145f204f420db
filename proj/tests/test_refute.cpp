#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "cycsos/certify.hpp"
#include "cycsos/io.hpp"
#include "cycsos/refute.hpp"

using namespace cycsos;

namespace {

QMatrix to_qmatrix(const std::vector<std::vector<Rational>>& rows) {
    QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

const TraceStep* find_pinned(const RefutationTrace& trace, const std::string& var,
                             const Rational& value) {
    for (const auto& s : trace.steps) {
        auto sv = detail::solved_value(s.stmt);
        if (sv && sv->first == var && sv->second == value) return &s;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("degree-12 refutation: the exact 2x2 obstruction") {
    RefutationTrace trace = refute_s12_6();
    CHECK(trace.target_m == 12);
    CHECK(trace.target_k == 6);
    CHECK(trace.setting.kind == BasisSetting::Kind::SqrtXY);

    const Conclusion& c = trace.conclusion;
    REQUIRE(c.kind == Conclusion::Kind::NegativeWitness);
    REQUIRE(c.submatrix.size() == 2);
    QMatrix M = to_qmatrix(c.submatrix);
    CHECK(M(0, 0) == 6);
    CHECK(M(0, 1) == 6);
    CHECK(M(1, 0) == 6);
    CHECK(M(1, 1) == 2);
    CHECK(M.determinant() == -24);
    CHECK(c.witness == std::vector<Rational>{1, -2});
    CHECK(c.value == -10);
    CHECK(quadratic_form(M, c.witness) == c.value);
    CHECK_FALSE(psd_check_exact(M).psd);

    TraceCheckResult res = check_trace(trace);
    INFO(res.error);
    CHECK(res.ok);
}

TEST_CASE("general family refutations re-check exactly") {
    for (auto [k, l] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 5}, {3, 7}}) {
        RefutationTrace trace = refute_skl(k, l);
        CHECK(trace.target_m == static_cast<std::size_t>(2 * (k + l)));
        CHECK(trace.target_k == static_cast<std::size_t>(2 * k));
        REQUIRE(trace.conclusion.kind == Conclusion::Kind::NegativeWitness);
        CHECK(trace.conclusion.value == -Rational(k + l));
        REQUIRE(trace.conclusion.submatrix.size() == 1);
        CHECK(trace.conclusion.submatrix[0][0] == -Rational(k + l));
        // every pinned entry equals k + l
        for (const auto& s : trace.steps) {
            auto sv = detail::solved_value(s.stmt);
            if (sv && sv->second > 0) CHECK(sv->second == Rational(k + l));
        }
        TraceCheckResult res = check_trace(trace);
        INFO("(k,l) = (" << k << "," << l << "): " << res.error);
        CHECK(res.ok);
    }
    CHECK_THROWS_AS(refute_skl(2, 5), std::invalid_argument);
    CHECK_THROWS_AS(refute_skl(3, 4), std::invalid_argument);
}

TEST_CASE("at k = 3 the fourth probe word collapses onto the third") {
    RefutationTrace trace = refute_skl(3, 5);
    REQUIRE(trace.conclusion.submatrix_words.size() == 1);
    // u4 = A B^{k-1} A^{l-1} B coincides with u3 = A B^2 A^{l-1} B^{k-2}
    CHECK(trace.conclusion.submatrix_words[0] == Word::parse("AB^2A^4B"));
    RefutationTrace t45 = refute_skl(4, 5);
    CHECK(t45.conclusion.submatrix_words[0] == Word::parse("AB^3A^4B"));
}

TEST_CASE("degree-8 class structure matches the hard-coded table") {
    const std::vector<std::vector<int>> expected = {
        {1, 2, 3, 5, 6, 8}, {4, 7, 9, 9, 10, 6}, {3, 6, 8, 7, 9, 3},
        {5, 6, 7, 8, 9, 5}, {9, 10, 6, 6, 7, 2}, {8, 9, 3, 5, 4, 1}};
    CHECK(s84_class_index_matrix() == expected);

    auto classes = s84_class_words();
    REQUIRE(classes.size() == 10);
    std::set<Word> reps;
    for (const auto& w : classes) reps.insert(w.canonical());
    CHECK(reps.size() == 10);
    // these are exactly the cyclic classes of W_{4,4}
    std::set<Word> brute;
    for_each_word(4, 4, [&](const Word& w) { brute.insert(w.canonical()); });
    CHECK(brute == reps);
}

TEST_CASE("degree-8 refutation derives the impossible quadratic") {
    RefutationTrace trace = refute_s84();
    CHECK(trace.target_m == 8);
    CHECK(trace.target_k == 4);
    CHECK(trace.setting.kind == BasisSetting::Kind::PlainAB);

    CHECK(find_pinned(trace, "H[AABB,AABB]", 4) != nullptr);
    CHECK(find_pinned(trace, "H[AABB,ABAB]", 4) != nullptr);
    CHECK(find_pinned(trace, "H[AABB,ABBA]", 2) != nullptr);
    CHECK(find_pinned(trace, "H[ABAB,BABA]", 1) != nullptr);

    // the two lower bounds x2 >= 4 and x3 >= 1 appear as Ge statements
    auto has_ge = [&](const QPoly& expr) {
        for (const auto& s : trace.steps)
            if (s.stmt.rel == Statement::Rel::Ge && s.stmt.expr == expr) return true;
        return false;
    };
    QPoly x2 = QPoly::var("H[ABAB,ABAB]");
    QPoly x3 = QPoly::var("H[ABBA,ABBA]");
    CHECK(has_ge(x2 - QPoly(4)));
    CHECK(has_ge(x3 - QPoly(1)));
    CHECK(has_ge(QPoly(6) - x3));

    const Conclusion& c = trace.conclusion;
    REQUIRE(c.kind == Conclusion::Kind::UnsatInequality);
    // unsat_quad = x3^2 - 6 x3 + 16: discriminant 36 - 64 = -28
    Rational a = 0, b = 0, cc = 0;
    for (const auto& [mono, coef] : c.unsat_quad.terms()) {
        int deg = 0;
        for (const auto& [v, e] : mono) deg += e;
        (deg == 2 ? a : deg == 1 ? b : cc) = coef;
    }
    CHECK(a == 1);
    CHECK(b == -6);
    CHECK(cc == 16);
    CHECK(b * b - 4 * a * cc == -28);

    TraceCheckResult res = check_trace(trace);
    INFO(res.error);
    CHECK(res.ok);
}

TEST_CASE("tampered traces are rejected") {
    {
        RefutationTrace t = refute_s12_6();
        t.conclusion.value = -9;  // wrong quadratic form
        CHECK_FALSE(check_trace(t).ok);
    }
    {
        RefutationTrace t = refute_s12_6();
        t.conclusion.submatrix[1][1] = 7;  // entry no longer justified
        CHECK_FALSE(check_trace(t).ok);
    }
    {
        RefutationTrace t = refute_s12_6();
        t.conclusion.witness = {1, 1};  // form is positive
        CHECK_FALSE(check_trace(t).ok);
    }
    {
        RefutationTrace t = refute_skl(3, 5);
        // corrupt a derived statement: claim H(u1,u1) = k+l+1
        for (auto& s : t.steps) {
            auto sv = detail::solved_value(s.stmt);
            if (sv && sv->second == 8) {
                s.stmt.expr += QPoly(1);
                break;
            }
        }
        CHECK_FALSE(check_trace(t).ok);
    }
    {
        RefutationTrace t = refute_s84();
        t.conclusion.unsat_quad += QPoly::var("H[ABBA,ABBA]", 7);  // disc now >= 0
        CHECK_FALSE(check_trace(t).ok);
    }
    {
        RefutationTrace t = refute_s84();
        // drop a citation: the 4x4 compression loses a pinned entry
        for (auto& s : t.steps)
            if (s.kind == StepKind::MinorAnalysis && s.minor_words.size() == 4)
                s.uses.clear();
        CHECK_FALSE(check_trace(t).ok);
    }
}

TEST_CASE("kernel propagation rule on exact matrices") {
    QMatrix T(3, 3);
    // T11 = [[1,-1],[-1,1]] has kernel (1,1); lower row (2,0) gives 2
    T(0, 0) = 1; T(0, 1) = -1; T(0, 2) = 2;
    T(1, 0) = -1; T(1, 1) = 1; T(1, 2) = 0;
    T(2, 0) = 2; T(2, 1) = 0; T(2, 2) = 3;
    auto lower = check_kerpos(T, 2, {1, 1});
    REQUIRE(lower.size() == 1);
    CHECK(lower[0] == 2);  // nonzero: T cannot be PSD

    CHECK_THROWS_AS(check_kerpos(T, 2, {1, 2}), std::invalid_argument);  // not in kernel
    CHECK_THROWS_AS(check_kerpos(T, 1, {1, 1}), std::invalid_argument);  // size mismatch
    QMatrix asym(2, 2);
    asym(0, 1) = 1;
    CHECK_THROWS_AS(check_kerpos(asym, 1, {0}), std::invalid_argument);

    QMatrix psd(2, 2);
    psd(1, 1) = 5;
    auto zero_lower = check_kerpos(psd, 1, {1});
    REQUIRE(zero_lower.size() == 1);
    CHECK(zero_lower[0] == 0);
}

TEST_CASE("traces survive the JSON round trip") {
    for (RefutationTrace t : {refute_s12_6(), refute_skl(3, 5), refute_s84()}) {
        json j = trace_to_json(t);
        RefutationTrace back = trace_from_json(j);
        CHECK(back.target_m == t.target_m);
        CHECK(back.target_k == t.target_k);
        CHECK(back.steps.size() == t.steps.size());
        TraceCheckResult res = check_trace(back);
        INFO(res.error);
        CHECK(res.ok);
        CHECK(trace_to_json(back) == j);
    }
}

TEST_CASE("no false positives: certified targets have PSD Gram matrices") {
    // the exact PSD check accepts the matrices behind valid certificates, so
    // the refuted cases are not an artifact of the checker
    SOSCertificate cert = prop_s4m2p4(1);
    GramBasis basis = build_basis(BasisSetting::plain_ab(6, 4));
    QMatrix H = certificate_gram_matrix(cert, basis);
    PsdCheckResult r = psd_check_exact(H);
    CHECK(r.psd);
}
