#ifndef CYCSOS_EXTREMUM_HPP
#define CYCSOS_EXTREMUM_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace cycsos {

using CMatrix = Eigen::MatrixXcd;

/// Mirrors the upper triangle so the result is exactly Hermitian.
inline CMatrix hermitize(const CMatrix& m) {
    return (m + m.adjoint()) / 2.0;
}

inline bool is_hermitian(const CMatrix& m, double tol = 1e-10) {
    return (m - m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

/// Gaussian random Hermitian matrix; `real` restricts to real symmetric.
inline CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng, bool real = false) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = real ? std::complex<double>(g(rng), 0.0)
                           : std::complex<double>(g(rng), g(rng));
    return hermitize(m);
}

/// S_{m,k}(A,B) by the recursion S(i,j) = A S(i-1,j) + B S(i-1,j-1),
/// S(0,0) = I; O(mk) matrix products.  Conventions: S(i,j) = 0 for j < 0 or
/// j > i.
inline CMatrix eval_smk(const CMatrix& A, const CMatrix& B, std::size_t m, std::size_t k) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw std::invalid_argument("eval_smk: dimension mismatch");
    if (k > m) throw std::invalid_argument("eval_smk requires k <= m");
    const auto n = A.rows();
    // row i holds S(i, j) for j = 0..min(i,k)
    std::vector<CMatrix> prev{CMatrix::Identity(n, n)};
    for (std::size_t i = 1; i <= m; ++i) {
        const std::size_t hi = std::min(i, k);
        std::vector<CMatrix> cur(hi + 1);
        for (std::size_t j = 0; j <= hi; ++j) {
            CMatrix s = CMatrix::Zero(n, n);
            if (j < prev.size()) s += A * prev[j];
            if (j >= 1 && j - 1 < prev.size()) s += B * prev[j - 1];
            cur[j] = std::move(s);
        }
        prev = std::move(cur);
    }
    return prev.at(k);
}

/// Coefficients of p(t) = Tr((A + tB)^m), computed by expanding the matrix
/// polynomial (A + tB)^m directly; independent of eval_smk.
inline Eigen::VectorXd trace_poly_coeffs(const CMatrix& A, const CMatrix& B, std::size_t m) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw std::invalid_argument("trace_poly_coeffs: dimension mismatch");
    const auto n = A.rows();
    // power[j]: matrix coefficient of t^j in (A + tB)^i
    std::vector<CMatrix> power{CMatrix::Identity(n, n)};
    for (std::size_t i = 1; i <= m; ++i) {
        std::vector<CMatrix> next(i + 1, CMatrix::Zero(n, n));
        for (std::size_t j = 0; j < power.size(); ++j) {
            next[j] += A * power[j];
            next[j + 1] += B * power[j];
        }
        power = std::move(next);
    }
    Eigen::VectorXd coeffs(m + 1);
    for (std::size_t j = 0; j <= m; ++j) coeffs(j) = power[j].trace().real();
    return coeffs;
}

/// Gradient of Tr S_{m,k} with respect to A: m * S_{m-1,k}(A,B).  The
/// directional derivative along Hermitian H is Re Tr(H * result).
inline CMatrix gradient_A(const CMatrix& A, const CMatrix& B, std::size_t m, std::size_t k) {
    if (m < 1) throw std::invalid_argument("gradient_A requires m >= 1");
    if (k > m - 1) return CMatrix::Zero(A.rows(), A.cols());
    return double(m) * eval_smk(A, B, m - 1, k);
}

/// Gradient with respect to B: m * S_{m-1,k-1}(A,B).
inline CMatrix gradient_B(const CMatrix& A, const CMatrix& B, std::size_t m, std::size_t k) {
    if (m < 1) throw std::invalid_argument("gradient_B requires m >= 1");
    if (k < 1 || k - 1 > m - 1) return CMatrix::Zero(A.rows(), A.cols());
    return double(m) * eval_smk(A, B, m - 1, k - 1);
}

/// Frobenius norm of S_{m-1,k}(A,B) - ((m-k)/m) Tr(S_{m,k}(A,B)) A, the
/// first-order condition at a constrained extremum in A (Tr(A^2) = 1).
inline double stationarity_residual(const CMatrix& A, const CMatrix& B, std::size_t m,
                                    std::size_t k) {
    if (m < 1) throw std::invalid_argument("stationarity_residual requires m >= 1");
    CMatrix lhs = k > m - 1 ? CMatrix::Zero(A.rows(), A.cols()) : eval_smk(A, B, m - 1, k);
    double tr = eval_smk(A, B, m, k).trace().real();
    return (lhs - (double(m - k) / double(m)) * tr * A).norm();
}

/// Same condition in B: S_{m-1,k-1}(A,B) = (k/m) Tr(S_{m,k}(A,B)) B.
inline double stationarity_residual_B(const CMatrix& A, const CMatrix& B, std::size_t m,
                                      std::size_t k) {
    if (m < 1) throw std::invalid_argument("stationarity_residual_B requires m >= 1");
    CMatrix lhs = (k < 1 || k > m) ? CMatrix::Zero(A.rows(), A.cols())
                                   : eval_smk(A, B, m - 1, k - 1);
    double tr = eval_smk(A, B, m, k).trace().real();
    return (lhs - (double(k) / double(m)) * tr * B).norm();
}

struct MinimizeConfig {
    std::size_t max_iters = 100000;
    double tol = 1e-8;            // stationarity residual target
    double armijo_c = 1e-4;
    double backtrack = 0.5;       // Armijo shrink factor
    double init_step = 1.0;
    bool real_field = false;      // real symmetric instead of complex Hermitian
};

struct SearchState {
    CMatrix A, B;
    double objective = 0;
    double grad_norm_A = 0, grad_norm_B = 0;
    double residual_A = 0, residual_B = 0;
    bool converged = false;
    std::size_t iters = 0;
    std::uint64_t seed = 0;
};

namespace detail {
inline double herm_inner(const CMatrix& x, const CMatrix& y) {
    return (x.adjoint() * y).trace().real();
}
inline CMatrix sphere_retract(const CMatrix& x) { return x / x.norm(); }
}  // namespace detail

/// Projected gradient descent on Tr S_{m,k}(A,B) over the two unit spheres
/// Tr(A^2) = Tr(B^2) = 1, alternating A and B steps with Armijo
/// backtracking and sphere retraction.  The objective never increases on an
/// accepted step; non-convergence is reported in the state, not thrown.
inline SearchState minimize_trace(std::size_t m, std::size_t k, std::size_t n,
                                  std::uint64_t seed, const MinimizeConfig& cfg = {}) {
    if (k > m) throw std::invalid_argument("minimize_trace requires k <= m");
    std::mt19937_64 rng(seed);
    CMatrix A = detail::sphere_retract(random_hermitian(n, rng, cfg.real_field));
    CMatrix B = detail::sphere_retract(random_hermitian(n, rng, cfg.real_field));

    auto objective = [&](const CMatrix& a, const CMatrix& b) {
        return eval_smk(a, b, m, k).trace().real();
    };

    double f = objective(A, B);
    SearchState st;
    st.seed = seed;

    // one Armijo step along -riemannian_grad for the chosen variable
    auto step_var = [&](CMatrix& X, const CMatrix& grad) -> bool {
        CMatrix rg = grad - detail::herm_inner(grad, X) * X;  // tangent projection
        double g2 = rg.squaredNorm();
        if (g2 == 0) return false;
        double s = cfg.init_step;
        while (s > 1e-16) {
            CMatrix trial = detail::sphere_retract(X - s * rg);
            double ftrial = (&X == &A) ? objective(trial, B) : objective(A, trial);
            if (ftrial <= f - cfg.armijo_c * s * g2) {
                X = trial;
                f = ftrial;
                return true;
            }
            s *= cfg.backtrack;
        }
        return false;
    };

    std::size_t it = 0;
    for (; it < cfg.max_iters; ++it) {
        bool movedA = step_var(A, gradient_A(A, B, m, k));
        bool movedB = step_var(B, gradient_B(A, B, m, k));
        double rA = stationarity_residual(A, B, m, k);
        double rB = stationarity_residual_B(A, B, m, k);
        if ((rA < cfg.tol && rB < cfg.tol) || (!movedA && !movedB)) {
            st.converged = rA < cfg.tol && rB < cfg.tol;
            ++it;
            break;
        }
    }

    st.A = A;
    st.B = B;
    st.objective = f;
    st.grad_norm_A = gradient_A(A, B, m, k).norm();
    st.grad_norm_B = gradient_B(A, B, m, k).norm();
    st.residual_A = stationarity_residual(A, B, m, k);
    st.residual_B = stationarity_residual_B(A, B, m, k);
    st.iters = it;
    return st;
}

/// Best of `seeds` independent runs (min objective, ties by seed).
inline SearchState minimize_trace_multistart(std::size_t m, std::size_t k, std::size_t n,
                                             std::uint64_t base_seed, std::size_t seeds,
                                             const MinimizeConfig& cfg = {}) {
    SearchState best;
    bool have = false;
    for (std::size_t s = 0; s < seeds; ++s) {
        SearchState st = minimize_trace(m, k, n, base_seed + s, cfg);
        if (!have || st.objective < best.objective) {
            best = std::move(st);
            have = true;
        }
    }
    return best;
}

struct NegDefReport {
    double trace = 0;
    double max_eigenvalue = 0;
    bool is_zero = false;
    bool parity_warning = false;  // odd m or k: theorem hypothesis violated
};

/// Both sides of the equivalence: Tr S_{m,k} together with whether S is zero
/// or has a strictly positive eigenvalue.  Zero test at 1e-12 relative, the
/// eigenvalue threshold at 1e-10 * Frobenius norm.
inline NegDefReport check_negdef_equiv(const CMatrix& A, const CMatrix& B, std::size_t m,
                                       std::size_t k) {
    NegDefReport rep;
    rep.parity_warning = (m % 2 != 0) || (k % 2 != 0);
    CMatrix S = eval_smk(A, B, m, k);
    rep.trace = S.trace().real();
    double scale = std::max(1.0, std::pow(A.norm() + B.norm(), double(m)));
    rep.is_zero = S.norm() < 1e-12 * scale;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(S));
    rep.max_eigenvalue = es.eigenvalues().maxCoeff();
    return rep;
}

}  // namespace cycsos

#endif
