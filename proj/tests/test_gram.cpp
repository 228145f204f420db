#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "cycsos/gram.hpp"

using namespace cycsos;

namespace {

const GramEquation& equation_for(const GramConstraintSystem& sys, const char* rep) {
    Word w = Word::parse(rep).canonical();
    for (const auto& eq : sys.equations)
        if (eq.class_rep == w) return eq;
    throw std::runtime_error("no equation for class");
}

bool orbit_contains_both(const GramConstraintSystem& sys, const std::string& a,
                         const std::string& b) {
    for (const auto& orbit : sys.orbits) {
        bool ha = std::find(orbit.begin(), orbit.end(), a) != orbit.end();
        bool hb = std::find(orbit.begin(), orbit.end(), b) != orbit.end();
        if (ha || hb) return ha && hb;
    }
    return false;
}

}  // namespace

TEST_CASE("basis sizes and content") {
    GramBasis p84 = build_basis(BasisSetting::plain_ab(8, 4));
    REQUIRE(p84.Z.size() == 6);
    CHECK(p84.Z[0].str() == "AABB");
    CHECK(p84.Z[5].str() == "BBAA");
    CHECK(p84.ZX.empty());
    CHECK(p84.ZY.empty());
    CHECK(p84.setting.target_mk() == std::pair<std::size_t, std::size_t>{8, 4});
    CHECK(p84.setting.sigma_applicable());

    GramBasis s33 = build_basis(BasisSetting::sqrt_xy(3, 3));
    CHECK(s33.Z.size() == 20);   // C(6,3)
    CHECK(s33.ZX.size() == 10);  // C(5,3)
    CHECK(s33.ZY.size() == 10);  // C(5,2)
    CHECK(s33.setting.target_mk() == std::pair<std::size_t, std::size_t>{12, 6});
    CHECK(s33.setting.sigma_applicable());

    GramBasis s35 = build_basis(BasisSetting::sqrt_xy(3, 5));
    CHECK(s35.Z.size() == 56);   // C(8,3)
    CHECK(s35.ZX.size() == 35);  // C(7,3)
    CHECK(s35.ZY.size() == 21);  // C(7,2)
    CHECK_FALSE(s35.setting.sigma_applicable());

    CHECK(s33.index_of(Block::Z, Word::parse("AAABBB")) == 0);
    CHECK(s33.contains(Block::ZX, Word::parse("AABBB")));
    CHECK_FALSE(s33.contains(Block::Z, Word::parse("BBB")));
    CHECK_THROWS_AS(s33.index_of(Block::Z, Word::parse("A")), std::invalid_argument);

    CHECK_THROWS_AS(BasisSetting::plain_ab(7, 4), std::invalid_argument);
    CHECK_THROWS_AS(BasisSetting::plain_ab(8, 3), std::invalid_argument);
}

TEST_CASE("variable naming is symmetric") {
    GramBasis b = build_basis(BasisSetting::plain_ab(8, 4));
    CHECK(b.var_name(Block::Z, 0, 5) == b.var_name(Block::Z, 5, 0));
    CHECK(b.var_name(Block::Z, 0, 5) == "H[AABB,BBAA]");
    GramBasis s = build_basis(BasisSetting::sqrt_xy(1, 1));
    CHECK(s.var_name(Block::ZX, 0, 0) == "HX[B,B]");
    CHECK(s.var_name(Block::ZY, 0, 0) == "HY[A,A]");
    // auxiliary words conjugate with the outer letter, squared interior
    CHECK(s.conjugated_word(Block::Z, s.index_of(Block::Z, Word::parse("AB"))).str() ==
          "AABB");
    CHECK(s.conjugated_word(Block::ZX, 0).str() == "ABBA");
    CHECK(s.conjugated_word(Block::ZY, 0).str() == "BAAB");
}

TEST_CASE("factorizations scan distinct rotations") {
    GramBasis b = build_basis(BasisSetting::plain_ab(8, 4));

    FactorizationRow r1 = factorizations(Word::parse("A^4B^4"), b);
    CHECK(r1.class_rep.str() == "AAAABBBB");
    CHECK(r1.class_order == 8);
    REQUIRE(r1.z_pairs.size() == 2);
    std::set<std::pair<std::string, std::string>> got;
    for (auto& [u, v] : r1.z_pairs) got.insert({u.str(), v.str()});
    CHECK(got == std::set<std::pair<std::string, std::string>>{{"AABB", "AABB"},
                                                               {"BBAA", "BBAA"}});

    FactorizationRow r2 = factorizations(Word::parse("AABBAABB"), b);
    CHECK(r2.class_order == 4);
    CHECK(r2.z_pairs.size() == 4);

    CHECK_THROWS_AS(factorizations(Word::parse("AABB"), b), std::invalid_argument);

    // SqrtXY: the auxiliary pairs are exactly the Z pairs whose cut letters
    // agree, with that letter peeled off
    GramBasis s = build_basis(BasisSetting::sqrt_xy(1, 1));
    FactorizationRow r3 = factorizations(Word::parse("AABB"), s);
    for (auto& [u, v] : r3.zx_pairs) {
        CHECK(s.contains(Block::ZX, u));
        CHECK(s.contains(Block::ZX, v));
    }
    for (auto& [u, v] : r3.zy_pairs) {
        CHECK(s.contains(Block::ZY, u));
        CHECK(s.contains(Block::ZY, v));
    }
}

TEST_CASE("constraint system partitions all basis products") {
    for (BasisSetting setting :
         {BasisSetting::plain_ab(8, 4), BasisSetting::sqrt_xy(1, 2),
          BasisSetting::sqrt_xy(2, 2)}) {
        GramBasis basis = build_basis(setting);
        auto [m, k] = setting.target_mk();
        GramConstraintSystem sys = build_constraints(smk(m, k), basis);
        CHECK(sys.empty_target_classes.empty());

        std::size_t nz = 0, nx = 0, ny = 0;
        std::set<std::tuple<Block, std::size_t, std::size_t>> distinct;
        Rational rhs_total = 0;
        for (const auto& eq : sys.equations) {
            CHECK(eq.rhs == Rational(eq.class_rep.class_order()));
            rhs_total += eq.rhs;
            for (const auto& e : eq.entries) {
                CHECK(distinct.insert({e.block, e.i, e.j}).second);
                (e.block == Block::Z ? nz : e.block == Block::ZX ? nx : ny) += 1;
            }
        }
        CHECK(nz == basis.Z.size() * basis.Z.size());
        CHECK(nx == basis.ZX.size() * basis.ZX.size());
        CHECK(ny == basis.ZY.size() * basis.ZY.size());
        // total class-sum mass is C(m,k)
        Rational binom = 1;
        for (std::size_t i = 0; i < k; ++i)
            binom = binom * Rational(m - i) / Rational(i + 1);
        CHECK(rhs_total == binom);
    }
}

TEST_CASE("specific class equations of the degree-8 weight-4 system") {
    GramBasis basis = build_basis(BasisSetting::plain_ab(8, 4));
    GramConstraintSystem sys = build_constraints(smk(8, 4), basis);

    const GramEquation& e1 = equation_for(sys, "AAAABBBB");
    CHECK(e1.rhs == 8);
    REQUIRE(e1.entries.size() == 2);
    std::multiset<std::string> names1;
    for (const auto& e : e1.entries) names1.insert(basis.var_name(e.block, e.i, e.j));
    CHECK(names1 == std::multiset<std::string>{"H[AABB,AABB]", "H[BBAA,BBAA]"});

    const GramEquation& e2 = equation_for(sys, "AABBAABB");
    CHECK(e2.rhs == 4);
    std::multiset<std::string> names2;
    for (const auto& e : e2.entries) names2.insert(basis.var_name(e.block, e.i, e.j));
    CHECK(names2 == std::multiset<std::string>{"H[AABB,BBAA]", "H[AABB,BBAA]",
                                               "H[ABBA,ABBA]", "H[BAAB,BAAB]"});
}

TEST_CASE("symmetry reduction merges the right orbits") {
    GramBasis basis = build_basis(BasisSetting::plain_ab(8, 4));
    GramConstraintSystem sys = build_constraints(smk(8, 4), basis);
    CHECK(sys.orbits.size() == 21);  // 6*7/2 singletons

    GramConstraintSystem star = symmetry_reduce(sys, {.star = true, .sigma = false});
    CHECK(orbit_contains_both(star, "H[AABB,ABAB]", "H[BABA,BBAA]"));
    CHECK(orbit_contains_both(star, "H[AABB,AABB]", "H[BBAA,BBAA]"));
    CHECK_FALSE(orbit_contains_both(star, "H[AABB,AABB]", "H[ABAB,ABAB]"));

    GramConstraintSystem both = symmetry_reduce(sys, {.star = true, .sigma = true});
    CHECK(both.orbits.size() < star.orbits.size());
    // needs sigma: star alone maps (AABB,ABBA) only to (ABBA,BBAA)
    CHECK(orbit_contains_both(both, "H[AABB,ABBA]", "H[AABB,BAAB]"));
    CHECK_FALSE(orbit_contains_both(star, "H[AABB,ABBA]", "H[AABB,BAAB]"));

    // orbit families always partition the same variable set
    auto flatten = [](const GramConstraintSystem& s) {
        std::multiset<std::string> all;
        for (const auto& o : s.orbits) all.insert(o.begin(), o.end());
        return all;
    };
    CHECK(flatten(star) == flatten(sys));
    CHECK(flatten(both) == flatten(sys));

    auto rep = orbit_representatives(both);
    const GramEquation& e1 = equation_for(sys, "AAAABBBB");
    auto lhs = reduced_equation_lhs(both, e1, rep);
    REQUIRE(lhs.size() == 1);
    CHECK(lhs.begin()->first == "H[AABB,AABB]");
    CHECK(lhs.begin()->second == 2);

    // sigma needs the balanced weight
    GramConstraintSystem sys2 =
        build_constraints(smk(8, 2), build_basis(BasisSetting::plain_ab(8, 2)));
    CHECK_THROWS_AS(symmetry_reduce(sys2, {.star = true, .sigma = true}),
                    std::invalid_argument);
}

TEST_CASE("gram_to_poly expands block quadratic forms") {
    GramBasis basis = build_basis(BasisSetting::plain_ab(8, 4));
    CHECK(gram_to_poly(QMatrix(6, 6), basis).is_zero());

    QMatrix single(6, 6);
    single(0, 5) = Rational(3, 2);
    NCPoly p = gram_to_poly(single, basis);
    REQUIRE(p.term_count() == 1);
    CHECK(p.coeff(Word::parse("AABB").reversed() * Word::parse("BBAA")) ==
          Rational(3, 2));

    // identity Gram matrix gives the sum of squares of the basis words
    NCPoly sq = gram_to_poly(QMatrix::identity(6), basis);
    CHECK(sq.term_count() == 6);
    for (const auto& w : basis.Z) CHECK(sq.coeff(w.reversed() * w) == 1);

    CHECK_THROWS_AS(gram_to_poly(QMatrix(5, 5), basis), std::invalid_argument);

    // SqrtXY lands in the conjugated XY ring
    GramBasis s = build_basis(BasisSetting::sqrt_xy(1, 1));
    QMatrix hx = QMatrix::identity(1);
    NCPoly q = gram_to_poly(QMatrix(2, 2), hx, QMatrix(1, 1), s);
    CHECK(q.ring() == RingTag::XY);
    CHECK(q.coeff(Word::parse("ABBA").reversed() * Word::parse("ABBA")) == 1);
}

TEST_CASE("random Gram matrices satisfy the constraint bookkeeping") {
    // for any symmetric H, the class sums of Z^* H Z match the per-equation
    // entry sums; this ties factorizations, equations and expansion together
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (BasisSetting setting :
         {BasisSetting::plain_ab(8, 4), BasisSetting::sqrt_xy(1, 2)}) {
        GramBasis basis = build_basis(setting);
        auto [m, k] = setting.target_mk();
        GramConstraintSystem sys = build_constraints(smk(m, k), basis);

        auto random_sym = [&](std::size_t n) {
            QMatrix M(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) M(i, j) = M(j, i) = coef(rng);
            return M;
        };
        QMatrix H = random_sym(basis.Z.size());
        QMatrix HX = random_sym(basis.ZX.size());
        QMatrix HY = random_sym(basis.ZY.size());
        NCPoly poly = gram_to_poly(H, HX, HY, basis);
        ClassSumFingerprint fp = fingerprint(poly);

        const bool xy = setting.kind == BasisSetting::Kind::SqrtXY;
        for (const auto& eq : sys.equations) {
            Rational lhs = 0;
            for (const auto& e : eq.entries) {
                const QMatrix& M =
                    e.block == Block::Z ? H : e.block == Block::ZX ? HX : HY;
                lhs += M(e.i, e.j);
            }
            Word key = xy ? substitute_squares(eq.class_rep).canonical()
                          : eq.class_rep;
            auto it = fp.find(key);
            CHECK(lhs == (it == fp.end() ? Rational(0) : it->second));
        }
    }
}
