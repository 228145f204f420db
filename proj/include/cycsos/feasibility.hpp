#ifndef CYCSOS_FEASIBILITY_HPP
#define CYCSOS_FEASIBILITY_HPP

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <stdexcept>

#include "cycsos/gram.hpp"

namespace cycsos {

struct FeasibilityConfig {
    double tol = 1e-9;
    std::size_t max_iters = 100000;
};

struct FeasibilityResult {
    double residual = 0;      // distance between the affine and PSD projections
    std::size_t iters = 0;
    bool converged = false;   // residual < tol: evidence of feasibility, not proof
    Eigen::MatrixXd H, HX, HY;
};

/// Alternating projections between the affine set of Eq. (Hsums) and the
/// PSD cone, per block.  The class equations have disjoint supports (every
/// ordered basis pair lands in exactly one cyclic class), so the affine
/// projection decomposes per equation.  A small residual is evidence of
/// feasibility only; stalling proves nothing.
inline FeasibilityResult numerical_feasibility(const GramConstraintSystem& sys,
                                               const FeasibilityConfig& cfg = {}) {
    const GramBasis& basis = sys.basis;
    std::array<Eigen::MatrixXd, 3> mats;
    auto bi = [](Block b) { return static_cast<std::size_t>(b); };
    for (auto b : {Block::Z, Block::ZX, Block::ZY}) {
        const auto n = static_cast<Eigen::Index>(basis.block_words(b).size());
        mats[bi(b)] = Eigen::MatrixXd::Zero(n, n);
    }

    auto affine_project = [&](std::array<Eigen::MatrixXd, 3>& x) {
        for (const auto& eq : sys.equations) {
            if (eq.entries.empty()) continue;
            double sum = 0;
            for (const auto& e : eq.entries) sum += x[bi(e.block)](e.i, e.j);
            const double delta =
                (static_cast<double>(eq.rhs) - sum) / static_cast<double>(eq.entries.size());
            for (const auto& e : eq.entries) x[bi(e.block)](e.i, e.j) += delta;
        }
    };

    auto psd_project = [&](std::array<Eigen::MatrixXd, 3>& x) {
        for (auto& m : x) {
            if (m.rows() == 0) continue;
            Eigen::MatrixXd s = (m + m.transpose()) / 2.0;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
            Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
            m = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
        }
    };

    FeasibilityResult res;
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        affine_project(mats);
        std::array<Eigen::MatrixXd, 3> affine = mats;
        psd_project(mats);
        double dist = 0;
        for (std::size_t b = 0; b < 3; ++b) dist += (mats[b] - affine[b]).squaredNorm();
        res.residual = std::sqrt(dist);
        res.iters = it + 1;
        if (res.residual < cfg.tol) {
            res.converged = true;
            break;
        }
    }
    res.H = mats[0];
    res.HX = mats[1];
    res.HY = mats[2];
    return res;
}

/// Convenience: build the system for S_{m,k} over a setting and run.
inline FeasibilityResult numerical_feasibility(std::size_t m, std::size_t k,
                                               const BasisSetting& setting,
                                               const FeasibilityConfig& cfg = {}) {
    auto [tm, tk] = setting.target_mk();
    if (tm != m || tk != k)
        throw std::invalid_argument("basis setting does not target S_{m,k}");
    GramBasis basis = build_basis(setting);
    return numerical_feasibility(build_constraints(smk(m, k), basis), cfg);
}

}  // namespace cycsos

#endif
