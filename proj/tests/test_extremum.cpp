#include <catch2/catch_amalgamated.hpp>

#include "cycsos/extremum.hpp"
#include "cycsos/word.hpp"

using namespace cycsos;

namespace {

// independent oracle: multiply out every word of length m with k B's
CMatrix word_sum(const CMatrix& A, const CMatrix& B, std::size_t m, std::size_t k) {
    CMatrix sum = CMatrix::Zero(A.rows(), A.cols());
    for_each_word(m - k, k, [&](const Word& w) {
        CMatrix p = CMatrix::Identity(A.rows(), A.cols());
        for (char c : w.letters()) p = p * (c == 'A' ? A : B);
        sum += p;
    });
    return sum;
}

}  // namespace

TEST_CASE("matrix evaluation matches the word-sum oracle") {
    std::mt19937_64 rng(3);
    CMatrix A = random_hermitian(3, rng), B = random_hermitian(3, rng);

    CHECK((eval_smk(A, B, 2, 1) - (A * B + B * A)).norm() < 1e-12);
    CHECK((eval_smk(A, B, 4, 0) - A * A * A * A).norm() < 1e-12);
    CHECK((eval_smk(A, B, 3, 3) - B * B * B).norm() < 1e-12);

    for (auto [m, k] : std::vector<std::pair<std::size_t, std::size_t>>{
             {6, 3}, {5, 2}, {7, 4}, {4, 4}, {1, 0}}) {
        CMatrix direct = word_sum(A, B, m, k);
        CMatrix rec = eval_smk(A, B, m, k);
        CHECK((rec - direct).norm() < 1e-10 * std::max(1.0, direct.norm()));
    }
    CHECK_THROWS_AS(eval_smk(A, B, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(eval_smk(A, CMatrix::Zero(2, 2), 2, 1), std::invalid_argument);
}

TEST_CASE("trace polynomial coefficients recover the class traces") {
    std::mt19937_64 rng(5);
    CMatrix A = random_hermitian(4, rng), B = random_hermitian(4, rng);
    for (std::size_t m = 1; m <= 6; ++m) {
        Eigen::VectorXd c = trace_poly_coeffs(A, B, m);
        REQUIRE(c.size() == static_cast<Eigen::Index>(m + 1));
        for (std::size_t k = 0; k <= m; ++k) {
            double expected = eval_smk(A, B, m, k).trace().real();
            CHECK(std::abs(c(k) - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
        }
    }
    // (I + tI)^m: coefficients are n * binomials
    CMatrix I = CMatrix::Identity(3, 3);
    Eigen::VectorXd c = trace_poly_coeffs(I, I, 4);
    CHECK(c(0) == Catch::Approx(3.0));
    CHECK(c(2) == Catch::Approx(18.0));
    CHECK(c(4) == Catch::Approx(3.0));
}

TEST_CASE("gradients agree with central finite differences") {
    std::mt19937_64 rng(11);
    const std::size_t m = 5, k = 2, n = 3;
    const double h = 1e-5;
    CMatrix A = random_hermitian(n, rng), B = random_hermitian(n, rng);
    CMatrix gA = gradient_A(A, B, m, k), gB = gradient_B(A, B, m, k);

    auto f = [&](const CMatrix& a, const CMatrix& b) {
        return eval_smk(a, b, m, k).trace().real();
    };

    for (int trial = 0; trial < 60; ++trial) {
        CMatrix H = random_hermitian(n, rng);
        double fd_A = (f(A + h * H, B) - f(A - h * H, B)) / (2 * h);
        double an_A = (H.adjoint() * gA).trace().real();
        CHECK(std::abs(fd_A - an_A) <= 1e-6 * std::max(1.0, std::abs(an_A)));

        double fd_B = (f(A, B + h * H) - f(A, B - h * H)) / (2 * h);
        double an_B = (H.adjoint() * gB).trace().real();
        CHECK(std::abs(fd_B - an_B) <= 1e-6 * std::max(1.0, std::abs(an_B)));
    }
}

TEST_CASE("trace symmetries hold to machine precision") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + (trial % 3);
        CMatrix A = random_hermitian(n, rng), B = random_hermitian(n, rng);
        std::size_t m = 2 + (trial % 5), k = trial % (m + 1);
        double lhs = eval_smk(A, B, m, k).trace().real();
        double rhs = eval_smk(B, A, m, m - k).trace().real();
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
        // the trace polynomial identity at t = 1: sum_k Tr S_{m,k} = Tr (A+B)^m
        Eigen::VectorXd c = trace_poly_coeffs(A, B, m);
        double total = 0;
        for (Eigen::Index i = 0; i < c.size(); ++i) total += c(i);
        CMatrix sum = A + B;
        CMatrix p = CMatrix::Identity(n, n);
        for (std::size_t i = 0; i < m; ++i) p = p * sum;
        CHECK(std::abs(total - p.trace().real()) <=
              1e-10 * std::max(1.0, std::abs(total)));
    }
}

TEST_CASE("descent on the two-sphere finds the known minimum of 2 Tr(AB)") {
    // min Tr S_{2,1} over Tr(A^2) = Tr(B^2) = 1 is -2, attained at B = -A
    MinimizeConfig cfg;
    cfg.real_field = true;
    SearchState best = minimize_trace_multistart(2, 1, 2, 42, 4, cfg);
    CHECK(best.converged);
    CHECK(best.objective == Catch::Approx(-2.0).margin(1e-7));
    CHECK(best.residual_A < 1e-6);
    CHECK(best.residual_B < 1e-6);
    CHECK((best.A + best.B).norm() < 1e-4);  // B = -A at the minimum
}

TEST_CASE("descent respects the positivity of the balanced quartic") {
    SearchState best = minimize_trace_multistart(4, 2, 2, 7, 6);
    CHECK(best.objective >= -1e-6);
    if (best.converged) {
        CHECK(best.residual_A < 1e-6);
        CHECK(best.residual_B < 1e-6);
    }
    CHECK_THROWS_AS(minimize_trace(2, 3, 2, 1), std::invalid_argument);
}

TEST_CASE("negative-definiteness report") {
    std::mt19937_64 rng(17);
    CMatrix A = random_hermitian(3, rng), B = random_hermitian(3, rng);
    NegDefReport rep = check_negdef_equiv(A, B, 4, 2);
    CHECK_FALSE(rep.parity_warning);
    CHECK(std::abs(rep.trace - eval_smk(A, B, 4, 2).trace().real()) < 1e-12);
    CHECK_FALSE(rep.is_zero);

    NegDefReport odd = check_negdef_equiv(A, B, 3, 1);
    CHECK(odd.parity_warning);

    CMatrix Z = CMatrix::Zero(3, 3);
    NegDefReport zero = check_negdef_equiv(Z, B, 4, 2);
    CHECK(zero.is_zero);  // every word contains A
}
