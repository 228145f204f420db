#ifndef CYCSOS_REFUTE_HPP
#define CYCSOS_REFUTE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cycsos/exactlinalg.hpp"
#include "cycsos/gram.hpp"
#include "cycsos/ncpoly.hpp"

namespace cycsos {

// ---------------------------------------------------------------------------
// Trace data model.  A refutation is an ordered list of derivation steps over
// the Gram entries, each re-derivable from its cited predecessors by the
// named rule, ending in an exact non-PSD witness or an unsatisfiable
// polynomial inequality.  Checking is independent of construction: the
// checker recomputes class equations from the `gram` module and replays
// every rule.
// ---------------------------------------------------------------------------

enum class StepKind {
    ClassEquation,      // eq. from the factorization table of one cyclic class
    StarSymmetry,       // H(u,v) = H(u*,v*)
    SigmaSymmetry,      // H(sigma u, sigma v) = H(u,v), k = l only
    KernelPropagation,  // v in ker T11  =>  T21 v = 0
    Elimination,        // linear combination / positive-factor cancellation
    MinorAnalysis,      // principal compression of a PSD matrix has det >= 0
};

inline const char* step_kind_name(StepKind k) {
    switch (k) {
        case StepKind::ClassEquation: return "ClassEquation";
        case StepKind::StarSymmetry: return "StarSymmetry";
        case StepKind::SigmaSymmetry: return "SigmaSymmetry";
        case StepKind::KernelPropagation: return "KernelPropagation";
        case StepKind::Elimination: return "Elimination";
        case StepKind::MinorAnalysis: return "MinorAnalysis";
    }
    return "?";
}

inline StepKind parse_step_kind(const std::string& s) {
    if (s == "ClassEquation") return StepKind::ClassEquation;
    if (s == "StarSymmetry") return StepKind::StarSymmetry;
    if (s == "SigmaSymmetry") return StepKind::SigmaSymmetry;
    if (s == "KernelPropagation") return StepKind::KernelPropagation;
    if (s == "Elimination") return StepKind::Elimination;
    if (s == "MinorAnalysis") return StepKind::MinorAnalysis;
    throw std::invalid_argument("unknown step kind: " + s);
}

/// A statement: expr = 0 or expr >= 0, expr a polynomial over Gram entries.
struct Statement {
    enum class Rel { Eq, Ge };
    Rel rel = Rel::Eq;
    QPoly expr;

    std::string str() const { return expr.str() + (rel == Rel::Eq ? " = 0" : " >= 0"); }
};

struct TraceStep {
    int id = 0;
    StepKind kind = StepKind::ClassEquation;
    Statement stmt;
    std::vector<int> uses;

    // ClassEquation
    Word class_rep;

    // Star/SigmaSymmetry: the two identified variables
    std::string var_a, var_b;

    // Elimination
    enum class ElimMode { LinearCombo, FactorCancel };
    ElimMode elim_mode = ElimMode::LinearCombo;
    std::vector<Rational> combo;          // LinearCombo: one coefficient per use
    QPoly factor;                         // FactorCancel: uses[0].expr == factor * stmt.expr
    std::vector<Rational> factor_combo;   // nonneg multipliers over uses[1..]
    Rational factor_const = 0;            // strictly positive constant term

    // KernelPropagation
    std::vector<Word> kp_block;           // compression basis words (Z block)
    std::size_t kp_split = 0;             // T11 = leading kp_split x kp_split block
    std::vector<Rational> kp_kernel;      // v with T11 v = 0
    Word kp_row;                          // the emitted row's basis word

    // MinorAnalysis
    std::vector<Word> minor_words;        // compression basis words (Z block)
    std::vector<std::vector<QPoly>> minor_entries;
};

struct Conclusion {
    enum class Kind { NegativeWitness, UnsatInequality };
    Kind kind = Kind::NegativeWitness;
    std::vector<int> uses;

    // NegativeWitness: an exact principal submatrix with a vector whose
    // quadratic form is strictly negative.
    std::vector<Word> submatrix_words;
    std::vector<std::vector<Rational>> submatrix;  // pinned exact values
    std::vector<Rational> witness;
    Rational value = 0;  // witness^T M witness, must be < 0

    // UnsatInequality: sum of positive multiples of products of cited
    // nonnegative statements equals -q with q strictly positive (a
    // univariate quadratic with negative discriminant, or a constant).
    std::vector<std::pair<Rational, std::vector<int>>> products;
    QPoly unsat_quad;
};

struct RefutationTrace {
    std::size_t target_m = 0, target_k = 0;
    BasisSetting setting;
    std::vector<TraceStep> steps;
    Conclusion conclusion;

    const TraceStep& step(int id) const {
        for (const auto& s : steps)
            if (s.id == id) return s;
        throw std::invalid_argument("unknown step id " + std::to_string(id));
    }
};

// ---------------------------------------------------------------------------
// Variable naming helpers
// ---------------------------------------------------------------------------

struct ParsedVar {
    Block block;
    Word u, v;
};

inline ParsedVar parse_var_name(const std::string& name) {
    auto lb = name.find('[');
    auto comma = name.find(',', lb);
    auto rb = name.rfind(']');
    if (lb == std::string::npos || comma == std::string::npos || rb == std::string::npos)
        throw std::invalid_argument("bad variable name: " + name);
    std::string prefix = name.substr(0, lb);
    Block b = prefix == "H" ? Block::Z : (prefix == "HX" ? Block::ZX : Block::ZY);
    return {b, Word(name.substr(lb + 1, comma - lb - 1)),
            Word(name.substr(comma + 1, rb - comma - 1))};
}

inline std::string make_var_name(Block b, Word u, Word v) {
    if (LenLexLess{}(v, u)) std::swap(u, v);
    std::string prefix = b == Block::Z ? "H" : (b == Block::ZX ? "HX" : "HY");
    return prefix + "[" + u.str() + "," + v.str() + "]";
}

// ---------------------------------------------------------------------------
// check_kerpos: the kernel-propagation rule on an exact matrix
// ---------------------------------------------------------------------------

/// For a symmetric rational T split into blocks at `split`, verifies
/// v in ker T11 exactly and returns the necessary equalities T21 v = 0
/// (one inner product per lower row).  Sound for any PSD T.
inline std::vector<Rational> check_kerpos(const QMatrix& T, std::size_t split,
                                          const std::vector<Rational>& v) {
    if (!T.is_symmetric()) throw std::invalid_argument("check_kerpos expects symmetric T");
    if (split > T.rows() || v.size() != split)
        throw std::invalid_argument("check_kerpos block split mismatch");
    for (std::size_t i = 0; i < split; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < split; ++j) s += T(i, j) * v[j];
        if (s != 0) throw std::invalid_argument("vector is not in ker T11");
    }
    std::vector<Rational> lower;
    for (std::size_t i = split; i < T.rows(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < split; ++j) s += T(i, j) * v[j];
        lower.push_back(s);  // each must be 0 if T is PSD
    }
    return lower;
}

// ---------------------------------------------------------------------------
// Trace checker
// ---------------------------------------------------------------------------

namespace detail {

/// Union-find over variable names collected from cited symmetry steps.
class VarMerge {
public:
    void merge(const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra != rb) parent_[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::string find(const std::string& x) const {
        std::string cur = x;
        auto it = parent_.find(cur);
        while (it != parent_.end()) {
            cur = it->second;
            it = parent_.find(cur);
        }
        return cur;
    }

private:
    mutable std::map<std::string, std::string> parent_;
};

inline QPoly class_equation_expr(const GramBasis& basis, const Word& rep) {
    FactorizationRow row = factorizations(rep, basis);
    QPoly expr;
    auto add_pairs = [&](Block b, const std::vector<std::pair<Word, Word>>& pairs) {
        for (const auto& [u, v] : pairs) expr += QPoly::var(make_var_name(b, u, v));
    };
    add_pairs(Block::Z, row.z_pairs);
    add_pairs(Block::ZX, row.zx_pairs);
    add_pairs(Block::ZY, row.zy_pairs);
    expr -= QPoly(Rational(row.class_order));
    return expr;
}

/// Extracts var = value (a rational constant) from an Eq statement of the
/// form a*var + b = 0.
inline std::optional<std::pair<std::string, Rational>> solved_value(const Statement& s) {
    if (s.rel != Statement::Rel::Eq) return std::nullopt;
    auto vars = s.expr.variables();
    if (vars.size() != 1 || !s.expr.is_affine_in_one_var()) return std::nullopt;
    Rational a = s.expr.coeff_of(vars[0]);
    if (a == 0) return std::nullopt;
    return std::make_pair(vars[0], -s.expr.constant() / a);
}

}  // namespace detail

struct TraceCheckResult {
    bool ok = false;
    std::string error;
};

inline TraceCheckResult check_trace(const RefutationTrace& trace) {
    auto fail = [](std::string msg) { return TraceCheckResult{false, std::move(msg)}; };

    GramBasis basis;
    try {
        basis = build_basis(trace.setting);
    } catch (const std::exception& e) {
        return fail(std::string("bad basis setting: ") + e.what());
    }
    auto [tm, tk] = trace.setting.target_mk();
    if (tm != trace.target_m || tk != trace.target_k)
        return fail("basis setting does not match target (m,k)");

    std::map<int, const TraceStep*> byid;

    auto collect_merges = [&](const std::vector<int>& uses, detail::VarMerge& vm) {
        for (int id : uses) {
            const TraceStep* s = byid.count(id) ? byid.at(id) : nullptr;
            if (!s) continue;
            if (s->kind == StepKind::StarSymmetry || s->kind == StepKind::SigmaSymmetry)
                vm.merge(s->var_a, s->var_b);
        }
    };

    auto collect_values = [&](const std::vector<int>& uses, const detail::VarMerge& vm,
                              std::map<std::string, Rational>& values) {
        for (int id : uses) {
            const TraceStep* s = byid.count(id) ? byid.at(id) : nullptr;
            if (!s) continue;
            if (auto sv = detail::solved_value(s->stmt)) values[vm.find(sv->first)] = sv->second;
        }
    };

    // Validates a symbolic compression: entry (i,j) must be the (merged)
    // variable itself or a value pinned by a cited Eq statement.
    auto validate_entries = [&](const TraceStep* stepOrNull, const std::vector<int>& uses,
                                const std::vector<Word>& words,
                                const std::vector<std::vector<QPoly>>& entries,
                                std::string& err) {
        detail::VarMerge vm;
        collect_merges(uses, vm);
        if (entries.size() != words.size()) { err = "entry grid size mismatch"; return false; }
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (entries[i].size() != words.size()) { err = "entry grid size mismatch"; return false; }
            for (std::size_t j = 0; j < words.size(); ++j) {
                if (!basis.contains(Block::Z, words[i]) || !basis.contains(Block::Z, words[j])) {
                    err = "compression word not in basis";
                    return false;
                }
                std::string var = vm.find(make_var_name(Block::Z, words[i], words[j]));
                const QPoly& e = entries[i][j];
                if (e == QPoly::var(var)) continue;
                bool justified = false;
                for (int id : uses) {
                    const TraceStep* s = byid.count(id) ? byid.at(id) : nullptr;
                    if (!s || s->stmt.rel != Statement::Rel::Eq) continue;
                    QPoly want = QPoly::var(var) - e;
                    // rename the statement's variables through the merges
                    QPoly renamed;
                    for (const auto& [mon, c] : s->stmt.expr.terms()) {
                        QPoly::Monomial m2;
                        for (const auto& [v, exp] : mon) m2[vm.find(v)] += exp;
                        renamed.add(std::move(m2), c);
                    }
                    if (renamed == want || renamed == (QPoly() - want)) { justified = true; break; }
                }
                if (!justified) {
                    err = "unjustified compression entry " + make_var_name(Block::Z, words[i], words[j]) +
                          " = " + e.str();
                    return false;
                }
            }
        }
        (void)stepOrNull;
        return true;
    };

    for (const auto& step : trace.steps) {
        for (int id : step.uses)
            if (!byid.count(id))
                return fail("step " + std::to_string(step.id) + " cites unknown/future step " +
                            std::to_string(id));

        switch (step.kind) {
            case StepKind::ClassEquation: {
                QPoly expected;
                try {
                    expected = detail::class_equation_expr(basis, step.class_rep);
                } catch (const std::exception& e) {
                    return fail("step " + std::to_string(step.id) + ": " + e.what());
                }
                if (step.stmt.rel != Statement::Rel::Eq || !(step.stmt.expr == expected))
                    return fail("step " + std::to_string(step.id) +
                                ": class equation does not match the regenerated one for " +
                                step.class_rep.str());
                break;
            }
            case StepKind::StarSymmetry:
            case StepKind::SigmaSymmetry: {
                ParsedVar a = parse_var_name(step.var_a), b = parse_var_name(step.var_b);
                if (a.block != b.block) return fail("step " + std::to_string(step.id) +
                                                    ": symmetry across blocks");
                Word iu, iv;
                if (step.kind == StepKind::StarSymmetry) {
                    iu = a.u.reversed();
                    iv = a.v.reversed();
                } else {
                    if (!trace.setting.sigma_applicable())
                        return fail("step " + std::to_string(step.id) +
                                    ": sigma symmetry requires k = l");
                    iu = a.u.swapped();
                    iv = a.v.swapped();
                }
                if (make_var_name(a.block, iu, iv) != step.var_b)
                    return fail("step " + std::to_string(step.id) + ": variables not related by " +
                                step_kind_name(step.kind));
                QPoly expected = QPoly::var(step.var_a) - QPoly::var(step.var_b);
                if (step.stmt.rel != Statement::Rel::Eq ||
                    !(step.stmt.expr == expected || step.stmt.expr == (QPoly() - expected)))
                    return fail("step " + std::to_string(step.id) + ": symmetry statement mismatch");
                break;
            }
            case StepKind::KernelPropagation: {
                detail::VarMerge vm;
                collect_merges(step.uses, vm);
                std::map<std::string, Rational> values;
                collect_values(step.uses, vm, values);
                const std::size_t q = step.kp_block.size();
                if (step.kp_split == 0 || step.kp_split > q || step.kp_kernel.size() != step.kp_split)
                    return fail("step " + std::to_string(step.id) + ": bad kernel block shape");
                QMatrix T11(step.kp_split, step.kp_split);
                for (std::size_t i = 0; i < step.kp_split; ++i)
                    for (std::size_t j = 0; j < step.kp_split; ++j) {
                        std::string var =
                            vm.find(make_var_name(Block::Z, step.kp_block[i], step.kp_block[j]));
                        auto it = values.find(var);
                        if (it == values.end())
                            return fail("step " + std::to_string(step.id) +
                                        ": T11 entry not pinned: " + var);
                        T11(i, j) = it->second;
                    }
                try {
                    check_kerpos(T11, step.kp_split, step.kp_kernel);
                } catch (const std::exception& e) {
                    return fail("step " + std::to_string(step.id) + ": " + e.what());
                }
                // the emitted equation: sum_j H(row, b_j) v_j = 0
                QPoly expected;
                for (std::size_t j = 0; j < step.kp_split; ++j)
                    expected += step.kp_kernel[j] *
                                QPoly::var(vm.find(make_var_name(Block::Z, step.kp_row,
                                                                 step.kp_block[j])));
                if (step.stmt.rel != Statement::Rel::Eq || !(step.stmt.expr == expected))
                    return fail("step " + std::to_string(step.id) +
                                ": kernel propagation statement mismatch");
                break;
            }
            case StepKind::Elimination: {
                if (step.elim_mode == TraceStep::ElimMode::LinearCombo) {
                    if (step.combo.size() != step.uses.size())
                        return fail("step " + std::to_string(step.id) + ": combo size mismatch");
                    QPoly acc;
                    bool anyGe = false;
                    for (std::size_t i = 0; i < step.uses.size(); ++i) {
                        const TraceStep& cited = *byid.at(step.uses[i]);
                        if (cited.stmt.rel == Statement::Rel::Ge) {
                            anyGe = true;
                            if (step.combo[i] < 0)
                                return fail("step " + std::to_string(step.id) +
                                            ": negative multiplier on an inequality");
                        }
                        acc += step.combo[i] * cited.stmt.expr;
                    }
                    if (!(acc == step.stmt.expr))
                        return fail("step " + std::to_string(step.id) +
                                    ": linear combination does not reproduce the statement");
                    if (anyGe && step.stmt.rel != Statement::Rel::Ge)
                        return fail("step " + std::to_string(step.id) +
                                    ": inequality citations require a >= statement");
                } else {
                    if (step.uses.empty()) return fail("step " + std::to_string(step.id) +
                                                       ": factor cancel needs a product step");
                    const TraceStep& prod = *byid.at(step.uses[0]);
                    if (prod.stmt.rel != Statement::Rel::Ge)
                        return fail("step " + std::to_string(step.id) +
                                    ": factor cancel needs a nonnegative product");
                    if (!(prod.stmt.expr == step.factor * step.stmt.expr))
                        return fail("step " + std::to_string(step.id) +
                                    ": product does not factor as claimed");
                    // factor strictly positive: factor == sum mu_i * cited_i + c, c > 0
                    if (step.factor_const <= 0)
                        return fail("step " + std::to_string(step.id) +
                                    ": factor bound constant must be positive");
                    if (step.factor_combo.size() + 1 != step.uses.size())
                        return fail("step " + std::to_string(step.id) +
                                    ": factor bound combo size mismatch");
                    QPoly acc(step.factor_const);
                    for (std::size_t i = 1; i < step.uses.size(); ++i) {
                        const TraceStep& cited = *byid.at(step.uses[i]);
                        if (cited.stmt.rel != Statement::Rel::Ge || step.factor_combo[i - 1] < 0)
                            return fail("step " + std::to_string(step.id) +
                                        ": factor bound needs nonneg multiples of inequalities");
                        acc += step.factor_combo[i - 1] * cited.stmt.expr;
                    }
                    if (!(acc == step.factor))
                        return fail("step " + std::to_string(step.id) +
                                    ": factor positivity bound does not hold");
                    if (step.stmt.rel != Statement::Rel::Ge)
                        return fail("step " + std::to_string(step.id) +
                                    ": factor cancel yields an inequality");
                }
                break;
            }
            case StepKind::MinorAnalysis: {
                std::string err;
                if (!validate_entries(&step, step.uses, step.minor_words, step.minor_entries, err))
                    return fail("step " + std::to_string(step.id) + ": " + err);
                QPoly det = poly_determinant(step.minor_entries);
                if (step.stmt.rel != Statement::Rel::Ge || !(step.stmt.expr == det))
                    return fail("step " + std::to_string(step.id) +
                                ": determinant statement mismatch");
                break;
            }
        }
        byid[step.id] = &step;
    }

    // conclusion
    const Conclusion& c = trace.conclusion;
    for (int id : c.uses)
        if (!byid.count(id)) return fail("conclusion cites unknown step");
    if (c.kind == Conclusion::Kind::NegativeWitness) {
        const std::size_t n = c.submatrix_words.size();
        if (c.submatrix.size() != n || c.witness.size() != n)
            return fail("conclusion: witness shape mismatch");
        std::vector<std::vector<QPoly>> entries(n, std::vector<QPoly>(n));
        for (std::size_t i = 0; i < n; ++i) {
            if (c.submatrix[i].size() != n) return fail("conclusion: submatrix shape mismatch");
            for (std::size_t j = 0; j < n; ++j) entries[i][j] = QPoly(c.submatrix[i][j]);
        }
        std::string err;
        if (!validate_entries(nullptr, c.uses, c.submatrix_words, entries, err))
            return fail("conclusion: " + err);
        QMatrix M(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) M(i, j) = c.submatrix[i][j];
        if (!M.is_symmetric()) return fail("conclusion: submatrix not symmetric");
        Rational q = quadratic_form(M, c.witness);
        if (q != c.value) return fail("conclusion: quadratic form value mismatch");
        if (!(q < 0)) return fail("conclusion: quadratic form is not negative");
    } else {
        QPoly acc;
        for (const auto& [coef, ids] : c.products) {
            if (coef <= 0) return fail("conclusion: nonpositive product coefficient");
            QPoly prod(Rational(1));
            for (int id : ids) {
                const TraceStep& s = *byid.at(id);
                if (s.stmt.rel != Statement::Rel::Ge)
                    return fail("conclusion: product over a non-inequality");
                prod = prod * s.stmt.expr;
            }
            acc += coef * prod;
        }
        if (!(acc == (QPoly() - c.unsat_quad)))
            return fail("conclusion: certificate identity does not hold");
        // q must be strictly positive everywhere
        auto vars = c.unsat_quad.variables();
        if (vars.empty()) {
            if (!(c.unsat_quad.constant() > 0))
                return fail("conclusion: constant certificate not positive");
        } else if (vars.size() == 1) {
            const std::string& x = vars[0];
            Rational a = 0, b = c.unsat_quad.coeff_of(x), cc = c.unsat_quad.constant();
            auto it = c.unsat_quad.terms().find({{x, 2}});
            if (it != c.unsat_quad.terms().end()) a = it->second;
            // no terms beyond degree 2 allowed
            for (const auto& [m, coef] : c.unsat_quad.terms()) {
                int deg = 0;
                for (const auto& [v, e] : m) deg += e;
                if (deg > 2) return fail("conclusion: certificate quadratic has degree > 2");
            }
            if (a <= 0) return fail("conclusion: quadratic not strictly convex");
            Rational disc = b * b - 4 * a * cc;
            if (!(disc < 0)) return fail("conclusion: discriminant not negative");
        } else {
            return fail("conclusion: certificate polynomial has too many variables");
        }
    }
    return {true, ""};
}

// ---------------------------------------------------------------------------
// Trace construction helpers
// ---------------------------------------------------------------------------

namespace detail {

/// Exact solve for coefficients lambda with sum lambda_i expr_i == target
/// over the monomial coordinates.  Throws if no solution exists.
inline std::vector<Rational> find_combo(const std::vector<const QPoly*>& exprs,
                                        const QPoly& target) {
    std::map<QPoly::Monomial, std::size_t> coords;
    auto note = [&](const QPoly& p) {
        for (const auto& [m, c] : p.terms())
            if (!coords.count(m)) coords.emplace(m, coords.size());
    };
    for (const auto* e : exprs) note(*e);
    note(target);

    const std::size_t rows = coords.size(), cols = exprs.size();
    std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(cols + 1, Rational(0)));
    for (std::size_t j = 0; j < cols; ++j)
        for (const auto& [m, c] : exprs[j]->terms()) A[coords.at(m)][j] = c;
    for (const auto& [m, c] : target.terms()) A[coords.at(m)][cols] = c;

    // Gaussian elimination
    std::vector<std::size_t> pivot_col(rows, SIZE_MAX);
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t piv = r;
        while (piv < rows && A[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        Rational p = A[r][col];
        for (auto& x : A[r]) x /= p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][col] == 0) continue;
            Rational f = A[i][col];
            for (std::size_t jj = col; jj <= cols; ++jj) A[i][jj] -= f * A[r][jj];
        }
        pivot_col[r] = col;
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (A[i][cols] != 0) throw std::logic_error("no elimination combo exists");
    std::vector<Rational> lambda(cols, Rational(0));
    for (std::size_t i = 0; i < r; ++i) lambda[pivot_col[i]] = A[i][cols];
    return lambda;
}

class TraceBuilder {
public:
    TraceBuilder(std::size_t m, std::size_t k, BasisSetting setting) {
        trace_.target_m = m;
        trace_.target_k = k;
        trace_.setting = setting;
        basis_ = build_basis(setting);
    }

    const GramBasis& basis() const { return basis_; }
    RefutationTrace take() && { return std::move(trace_); }

    int class_equation(const Word& rep) {
        TraceStep s;
        s.kind = StepKind::ClassEquation;
        s.class_rep = rep.canonical();
        s.stmt = {Statement::Rel::Eq, class_equation_expr(basis_, s.class_rep)};
        return push(std::move(s));
    }

    int star_symmetry(Block b, const Word& u, const Word& v) {
        TraceStep s;
        s.kind = StepKind::StarSymmetry;
        s.var_a = make_var_name(b, u, v);
        s.var_b = make_var_name(b, u.reversed(), v.reversed());
        if (s.var_a == s.var_b) throw std::logic_error("degenerate star symmetry step");
        s.stmt = {Statement::Rel::Eq, QPoly::var(s.var_a) - QPoly::var(s.var_b)};
        return push(std::move(s));
    }

    int sigma_symmetry(Block b, const Word& u, const Word& v) {
        TraceStep s;
        s.kind = StepKind::SigmaSymmetry;
        s.var_a = make_var_name(b, u, v);
        s.var_b = make_var_name(b, u.swapped(), v.swapped());
        if (s.var_a == s.var_b) throw std::logic_error("degenerate sigma symmetry step");
        s.stmt = {Statement::Rel::Eq, QPoly::var(s.var_a) - QPoly::var(s.var_b)};
        return push(std::move(s));
    }

    /// Derives `expr REL 0` as an exact linear combination of the cited steps.
    int eliminate(const std::vector<int>& uses, QPoly expr,
                  Statement::Rel rel = Statement::Rel::Eq) {
        TraceStep s;
        s.kind = StepKind::Elimination;
        s.elim_mode = TraceStep::ElimMode::LinearCombo;
        s.uses = uses;
        std::vector<const QPoly*> exprs;
        for (int id : uses) exprs.push_back(&trace_.step(id).stmt.expr);
        s.combo = find_combo(exprs, expr);
        s.stmt = {rel, std::move(expr)};
        return push(std::move(s));
    }

    int factor_cancel(int product_step, QPoly factor, QPoly cofactor,
                      const std::vector<int>& bound_steps,
                      std::vector<Rational> bound_combo, Rational bound_const) {
        TraceStep s;
        s.kind = StepKind::Elimination;
        s.elim_mode = TraceStep::ElimMode::FactorCancel;
        s.uses.push_back(product_step);
        for (int id : bound_steps) s.uses.push_back(id);
        s.factor = std::move(factor);
        s.factor_combo = std::move(bound_combo);
        s.factor_const = std::move(bound_const);
        s.stmt = {Statement::Rel::Ge, std::move(cofactor)};
        return push(std::move(s));
    }

    int kernel_propagation(const std::vector<int>& uses, std::vector<Word> block,
                           std::size_t split, std::vector<Rational> kernel, Word row) {
        TraceStep s;
        s.kind = StepKind::KernelPropagation;
        s.uses = uses;
        s.kp_block = std::move(block);
        s.kp_split = split;
        s.kp_kernel = std::move(kernel);
        s.kp_row = std::move(row);
        VarMerge vm;
        for (int id : uses) {
            const TraceStep& c = trace_.step(id);
            if (c.kind == StepKind::StarSymmetry || c.kind == StepKind::SigmaSymmetry)
                vm.merge(c.var_a, c.var_b);
        }
        QPoly expr;
        for (std::size_t j = 0; j < s.kp_split; ++j)
            expr += s.kp_kernel[j] *
                    QPoly::var(vm.find(make_var_name(Block::Z, s.kp_row, s.kp_block[j])));
        s.stmt = {Statement::Rel::Eq, std::move(expr)};
        return push(std::move(s));
    }

    int minor_analysis(const std::vector<int>& uses, std::vector<Word> words,
                       std::vector<std::vector<QPoly>> entries) {
        TraceStep s;
        s.kind = StepKind::MinorAnalysis;
        s.uses = uses;
        s.minor_words = std::move(words);
        s.minor_entries = std::move(entries);
        s.stmt = {Statement::Rel::Ge, poly_determinant(s.minor_entries)};
        return push(std::move(s));
    }

    void conclude(Conclusion c) { trace_.conclusion = std::move(c); }

private:
    int push(TraceStep s) {
        s.id = next_id_++;
        trace_.steps.push_back(std::move(s));
        return trace_.steps.back().id;
    }

    RefutationTrace trace_;
    GramBasis basis_;
    int next_id_ = 1;
};

/// Asserts that the factorization row of `w` consists of exactly the given
/// Z-block pairs (as an unordered multiset) and has no X/Y pairs.
inline void expect_z_factorizations(const GramBasis& basis, const Word& w,
                                    std::vector<std::pair<Word, Word>> expected,
                                    std::uint64_t expected_order) {
    FactorizationRow row = factorizations(w, basis);
    if (!row.zx_pairs.empty() || !row.zy_pairs.empty())
        throw std::logic_error("unexpected X/Y factorization for " + w.str());
    if (row.class_order != expected_order)
        throw std::logic_error("unexpected class order for " + w.str());
    auto norm = [](std::vector<std::pair<Word, Word>> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    if (norm(row.z_pairs) != norm(std::move(expected)))
        throw std::logic_error("factorization list mismatch for " + w.str());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The refutations
// ---------------------------------------------------------------------------

/// Refutation of S_{2(k+l),2k} for k >= 3, l >= 5: replays the five probe
/// words w_1..w_5, derives every Gram entry equal to k+l, kernel-propagates
/// on the {u1,u2} compression and concludes H(u4,u4) = -(k+l) < 0.
inline RefutationTrace refute_skl(std::int64_t k, std::int64_t l) {
    if (k < 3 || l < 5)
        throw std::invalid_argument("refute_skl requires k >= 3 and l >= 5");
    const std::size_t K = static_cast<std::size_t>(k), L = static_cast<std::size_t>(l);
    const Rational KL(k + l);

    detail::TraceBuilder tb(2 * (K + L), 2 * K, BasisSetting::sqrt_xy(k, l));
    const GramBasis& basis = tb.basis();

    const Word u1 = wordA(L) * wordB(K);
    const Word u2 = wordA(L - 2) * wordB(K - 1) * wordA(2) * wordB(1);
    const Word u3 = wordA(1) * wordB(2) * wordA(L - 1) * wordB(K - 2);
    const Word u4 = wordA(1) * wordB(K - 1) * wordA(L - 1) * wordB(1);
    const Word v1 = u1.reversed(), v2 = u2.reversed(), v3 = u3.reversed(),
               v4 = u4.reversed();

    const Word w1 = wordA(2 * L) * wordB(2 * K);
    const Word w2 = wordA(2 * L - 2) * wordB(K - 1) * wordA(2) * wordB(K + 1);
    const Word w3 = wordA(L + 1) * wordB(2) * wordA(L - 1) * wordB(2 * K - 2);
    const Word w4 = wordA(2 * L - 4) * wordB(K - 1) * wordA(2) * wordB(2) * wordA(2) *
                    wordB(K - 1);
    const Word w5 = wordA(L - 1) * wordB(2) * wordA(L - 1) * wordB(K - 1) * wordA(2) *
                    wordB(K - 1);

    const std::uint64_t order = 2 * (K + L);
    detail::expect_z_factorizations(basis, w1, {{v1, v1}, {u1, u1}}, order);
    detail::expect_z_factorizations(basis, w2, {{v2, v1}, {u1, u2}}, order);
    detail::expect_z_factorizations(basis, w3, {{v3, v1}, {u1, u3}}, order);
    detail::expect_z_factorizations(basis, w4, {{v2, v2}, {u2, u2}}, order);
    detail::expect_z_factorizations(
        basis, w5, {{v3, v2}, {u4, u4}, {v2, v3}, {u2, u3}, {v4, v4}, {u3, u2}}, order);

    auto var = [&](const Word& a, const Word& b) { return QPoly::var(make_var_name(Block::Z, a, b)); };

    // w1: H(u1,u1) = k+l
    int e1 = tb.class_equation(w1);
    int s1 = tb.star_symmetry(Block::Z, u1, u1);
    int d1 = tb.eliminate({e1, s1}, var(u1, u1) - QPoly(KL));

    // w2: H(u1,u2) = k+l
    int e2 = tb.class_equation(w2);
    int s2 = tb.star_symmetry(Block::Z, v2, v1);
    int d2 = tb.eliminate({e2, s2}, var(u1, u2) - QPoly(KL));

    // w3: H(u1,u3) = k+l
    int e3 = tb.class_equation(w3);
    int s3 = tb.star_symmetry(Block::Z, v3, v1);
    int d3 = tb.eliminate({e3, s3}, var(u1, u3) - QPoly(KL));

    // w4: H(u2,u2) = k+l
    int e4 = tb.class_equation(w4);
    int s4 = tb.star_symmetry(Block::Z, v2, v2);
    int d4 = tb.eliminate({e4, s4}, var(u2, u2) - QPoly(KL));

    // w5: 2 H(u2,u3) + H(u4,u4) = k+l
    int e5 = tb.class_equation(w5);
    int s5a = tb.star_symmetry(Block::Z, v2, v3);
    int s5b = tb.star_symmetry(Block::Z, v4, v4);
    int d5 = tb.eliminate({e5, s5a, s5b},
                          Rational(2) * var(u2, u3) + var(u4, u4) - QPoly(KL));

    // kernel propagation on the {u1, u2} compression, kernel vector (1, -1)
    int kp = tb.kernel_propagation({d1, d2, d4}, {u1, u2}, 2,
                                   {Rational(1), Rational(-1)}, u3);
    int d6 = tb.eliminate({kp, d3}, var(u2, u3) - QPoly(KL));
    int d7 = tb.eliminate({d5, d6}, var(u4, u4) + QPoly(KL));

    Conclusion c;
    c.kind = Conclusion::Kind::NegativeWitness;
    c.uses = {d7};
    c.submatrix_words = {u4};
    c.submatrix = {{-KL}};
    c.witness = {Rational(1)};
    c.value = -KL;
    tb.conclude(std::move(c));
    return std::move(tb).take();
}

/// Refutation of S_{12,6}: words w6, w7, w8 pin the {u5, u6} compression to
/// [[6,6],[6,2]], which is not PSD.
inline RefutationTrace refute_s12_6() {
    detail::TraceBuilder tb(12, 6, BasisSetting::sqrt_xy(3, 3));
    const GramBasis& basis = tb.basis();

    const Word u5 = wordA(3) * wordB(3);
    const Word u6 = wordA(1) * wordB(2) * wordA(2) * wordB(1);
    const Word v5 = u5.reversed(), v6 = u6.reversed();

    const Word w6 = wordA(6) * wordB(6);
    const Word w7 = wordA(4) * wordB(2) * wordA(2) * wordB(4);
    const Word w8 = wordA(2) * wordB(2) * wordA(2) * wordB(2) * wordA(2) * wordB(2);

    detail::expect_z_factorizations(basis, w6, {{v5, v5}, {u5, u5}}, 12);
    detail::expect_z_factorizations(basis, w7, {{v6, v5}, {u5, u6}}, 12);
    detail::expect_z_factorizations(basis, w8, {{v6, v6}, {u6, u6}}, 4);

    auto var = [&](const Word& a, const Word& b) { return QPoly::var(make_var_name(Block::Z, a, b)); };

    int e6 = tb.class_equation(w6);
    int s6 = tb.star_symmetry(Block::Z, u5, u5);
    int d6 = tb.eliminate({e6, s6}, var(u5, u5) - QPoly(Rational(6)));

    int e7 = tb.class_equation(w7);
    int s7 = tb.star_symmetry(Block::Z, v6, v5);
    int d7 = tb.eliminate({e7, s7}, var(u5, u6) - QPoly(Rational(6)));

    int e8 = tb.class_equation(w8);
    int s8 = tb.star_symmetry(Block::Z, u6, u6);
    int d8 = tb.eliminate({e8, s8}, var(u6, u6) - QPoly(Rational(2)));

    Conclusion c;
    c.kind = Conclusion::Kind::NegativeWitness;
    c.uses = {d6, d7, d8};
    c.submatrix_words = {u5, u6};
    c.submatrix = {{Rational(6), Rational(6)}, {Rational(6), Rational(2)}};
    c.witness = {Rational(1), Rational(-2)};
    c.value = Rational(-10);
    tb.conclude(std::move(c));
    return std::move(tb).take();
}

/// The ten class representatives of W_{4,4}(A,B) in the order w_1..w_10.
inline std::vector<Word> s84_class_words() {
    return {Word::parse("A^4B^4"),    Word::parse("A^3BAB^3"),  Word::parse("A^3B^2AB^2"),
            Word::parse("A^3B^3AB"),  Word::parse("A^2BA^2B^3"), Word::parse("A^2BABAB^2"),
            Word::parse("A^2BAB^2AB"), Word::parse("A^2B^2A^2B^2"), Word::parse("A^2B^2ABAB"),
            Word::parse("ABABABAB")};
}

/// The 6x6 matrix whose (i,j) entry names the class of z_i^* z_j, with the
/// plain basis Z = (A^2B^2, ABAB, AB^2A, BA^2B, BABA, B^2A^2).
inline std::vector<std::vector<int>> s84_class_index_matrix() {
    GramBasis basis = build_basis(BasisSetting::plain_ab(8, 4));
    auto classes = s84_class_words();
    std::map<Word, int, LenLexLess> class_id;
    for (std::size_t i = 0; i < classes.size(); ++i)
        class_id[classes[i].canonical()] = static_cast<int>(i) + 1;
    std::vector<std::vector<int>> m(6, std::vector<int>(6, 0));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            m[i][j] = class_id.at((basis.Z[i].reversed() * basis.Z[j]).canonical());
    return m;
}

/// Refutation of S_{8,4} in the plain ring: ten class equations, star and
/// sigma symmetry, elimination to the two free entries x2 = H22, x3 = H33,
/// compression bounds x2 >= 4, 1 <= x3 <= 6, the exact factorization of the
/// {1,3,4,6} compression determinant, and the final impossible quadratic
/// x3^2 - 6 x3 + 16 <= 0 (discriminant -28).
inline RefutationTrace refute_s84() {
    detail::TraceBuilder tb(8, 4, BasisSetting::plain_ab(8, 4));
    const GramBasis& basis = tb.basis();
    const std::vector<Word>& Z = basis.Z;  // (A^2B^2, ABAB, AB^2A, BA^2B, BABA, B^2A^2)

    auto var = [&](std::size_t i, std::size_t j) {
        return QPoly::var(make_var_name(Block::Z, Z[i - 1], Z[j - 1]));
    };

    // the ten class equations in the order w_1..w_10
    std::vector<int> eq;
    for (const Word& w : s84_class_words()) eq.push_back(tb.class_equation(w));

    // star (tau: 1<->6, 2<->5) and sigma (1<->6, 2<->5, 3<->4) identifications
    auto star_step = [&](std::size_t i, std::size_t j) {
        return tb.star_symmetry(Block::Z, Z[i - 1], Z[j - 1]);
    };
    auto sigma_step = [&](std::size_t i, std::size_t j) {
        return tb.sigma_symmetry(Block::Z, Z[i - 1], Z[j - 1]);
    };

    int t11 = star_step(1, 1);   // H11 = H66
    int t12 = star_step(1, 2);   // H12 = H56  (star of (1,2) is (6,5))
    int t13 = star_step(1, 3);   // H13 = H36
    int t14 = star_step(1, 4);   // H14 = H46
    int t15 = star_step(1, 5);   // H15 = H26
    int t22 = star_step(2, 2);   // H22 = H55
    int t23 = star_step(2, 3);   // H23 = H35
    int t24 = star_step(2, 4);   // H24 = H45
    int g14 = sigma_step(1, 4);  // H14 = H36
    int g23 = sigma_step(2, 3);  // H23 = H45
    int g24 = sigma_step(2, 4);  // H24 = H35
    int g33 = sigma_step(3, 3);  // H33 = H44
    int g34sym = sigma_step(1, 3);  // H13 = H46

    // pinned entries
    int p11 = tb.eliminate({eq[0], t11}, var(1, 1) - QPoly(Rational(4)));        // H11 = 4
    int p12 = tb.eliminate({eq[1], t12}, var(1, 2) - QPoly(Rational(4)));        // H12 = 4
    int p13 = tb.eliminate({eq[2], t13}, var(1, 3) - QPoly(Rational(2)));        // H13 = 2
    int p14 = tb.eliminate({eq[4], t14}, var(1, 4) - QPoly(Rational(2)));        // H14 = 2
    int p25 = tb.eliminate({eq[9]}, var(2, 5) - QPoly(Rational(1)));             // H25 = 1
    // H15 = 4 - 2 H23
    int p15 = tb.eliminate({eq[5], t15, t23, g23, g24},
                           var(1, 5) + Rational(2) * var(2, 3) - QPoly(Rational(4)));
    // H34 = 4 - H22
    int p34 = tb.eliminate({eq[6], t22}, var(3, 4) + var(2, 2) - QPoly(Rational(4)));
    // H16 = 2 - H33
    int p16 = tb.eliminate({eq[7], g33}, var(1, 6) + var(3, 3) - QPoly(Rational(2)));
    // derived copies used by the compressions
    int p36 = tb.eliminate({p13, t13}, var(3, 6) - QPoly(Rational(2)));
    int p46 = tb.eliminate({p14, t14}, var(4, 6) - QPoly(Rational(2)));
    int p66 = tb.eliminate({p11, t11}, var(6, 6) - QPoly(Rational(4)));

    const QPoly x2 = var(2, 2), x3 = var(3, 3);
    const QPoly c4(Rational(4)), c2(Rational(2)), c1(Rational(1)), c6(Rational(6));

    // compression {1,3}: [[4,2],[2,x3]]  =>  4 x3 - 4 >= 0  =>  x3 >= 1
    int m13 = tb.minor_analysis({p11, p13}, {Z[0], Z[2]},
                                {{c4, c2}, {c2, x3}});
    int bx3lo = tb.eliminate({m13}, x3 - c1, Statement::Rel::Ge);

    // compression {1,2}: [[4,4],[4,x2]]  =>  x2 >= 4
    int m12 = tb.minor_analysis({p11, p12}, {Z[0], Z[1]},
                                {{c4, c4}, {c4, x2}});
    int bx2 = tb.eliminate({m12}, x2 - c4, Statement::Rel::Ge);

    // compression {1,6}: [[4, 2-x3],[2-x3, 4]]: det = (x3+2)(6-x3) >= 0;
    // x3+2 >= 3 > 0, so 6 - x3 >= 0
    int m16 = tb.minor_analysis({p11, p16, p66}, {Z[0], Z[5]},
                                {{c4, c2 - x3}, {c2 - x3, c4}});
    int bx3hi = tb.factor_cancel(m16, x3 + c2, c6 - x3, {bx3lo}, {Rational(1)}, Rational(3));

    // compression {1,3,4,6}: det factors as (2+x3)(x2+x3-4)(8-6x2+2x3+x2x3-x3^2)
    std::vector<std::vector<QPoly>> comp = {
        {c4, c2, c2, c2 - x3},
        {c2, x3, c4 - x2, c2},
        {c2, c4 - x2, x3, c2},
        {c2 - x3, c2, c2, c4},
    };
    int m1346 = tb.minor_analysis({p11, p13, p14, p16, p34, p36, p46, p66, g33, t13, t14},
                                  {Z[0], Z[2], Z[3], Z[5]}, comp);

    const QPoly f1 = x3 + c2;
    const QPoly f2 = x2 + x3 - c4;
    QPoly f3 = QPoly(Rational(8)) - Rational(6) * x2 + Rational(2) * x3 + x2 * x3 - x3 * x3;

    int cf1 = tb.factor_cancel(m1346, f1, f2 * f3, {bx3lo}, {Rational(1)}, Rational(3));
    int cf3 = tb.factor_cancel(cf1, f2, f3, {bx2, bx3lo}, {Rational(1), Rational(1)},
                               Rational(1));

    // F3 + (x2-4)(6-x3) = -(x3^2 - 6 x3 + 16), and x3^2-6x3+16 > 0 always
    Conclusion c;
    c.kind = Conclusion::Kind::UnsatInequality;
    c.uses = {cf3, bx2, bx3hi};
    c.products = {{Rational(1), {cf3}}, {Rational(1), {bx2, bx3hi}}};
    QPoly q;
    q.add({{make_var_name(Block::Z, Z[2], Z[2]), 2}}, Rational(1));
    q += Rational(-6) * x3 + QPoly(Rational(16));
    c.unsat_quad = std::move(q);
    tb.conclude(std::move(c));
    return std::move(tb).take();
}

// ---------------------------------------------------------------------------
// Factorization table rendering (Tables 1-8)
// ---------------------------------------------------------------------------

/// The probe word of a table at parameters (k, l).  Tables 1-5 require
/// k >= 3 and l >= 5 for the full derivation but render for any k >= 3,
/// l >= 3; tables 6-8 are the (3,3) words.
inline Word table_word(int table, std::int64_t k, std::int64_t l) {
    const std::size_t K = static_cast<std::size_t>(k), L = static_cast<std::size_t>(l);
    switch (table) {
        case 1: return wordA(2 * L) * wordB(2 * K);
        case 2: return wordA(2 * L - 2) * wordB(K - 1) * wordA(2) * wordB(K + 1);
        case 3: return wordA(L + 1) * wordB(2) * wordA(L - 1) * wordB(2 * K - 2);
        case 4: return wordA(2 * L - 4) * wordB(K - 1) * wordA(2) * wordB(2) * wordA(2) * wordB(K - 1);
        case 5: return wordA(L - 1) * wordB(2) * wordA(L - 1) * wordB(K - 1) * wordA(2) * wordB(K - 1);
        case 6: return wordA(6) * wordB(6);
        case 7: return wordA(4) * wordB(2) * wordA(2) * wordB(4);
        case 8: return wordA(2) * wordB(2) * wordA(2) * wordB(2) * wordA(2) * wordB(2);
        default: throw std::invalid_argument("unknown table id");
    }
}

/// Renders the cyclically equivalent forms of the table's word, grouped by
/// the run each rotation cut falls in, with every u*v factorization over the
/// basis named in terms of u_i / v_i.  Regenerated from the gram module;
/// nothing is hard-coded.
inline std::string verify_table(int table, std::int64_t k, std::int64_t l) {
    if (table < 1 || table > 8) throw std::invalid_argument("unknown table id");
    if (table >= 6 && !(k == 3 && l == 3))
        throw std::invalid_argument("tables 6-8 are defined at (k,l) = (3,3)");
    if (table <= 5 && (k < 3 || l < 5))
        throw std::invalid_argument("tables 1-5 require k >= 3 and l >= 5");

    const std::size_t K = static_cast<std::size_t>(k), L = static_cast<std::size_t>(l);
    GramBasis basis = build_basis(BasisSetting::sqrt_xy(k, l));
    Word w = table_word(table, k, l);

    // element names
    std::map<Word, std::string, LenLexLess> names;
    auto name_pair = [&](const Word& u, const std::string& n) {
        names.emplace(u, n);
        Word v = u.reversed();
        if (!names.count(v)) names.emplace(v, "v" + n.substr(1));
    };
    if (table <= 5) {
        name_pair(wordA(L) * wordB(K), "u1");
        name_pair(wordA(L - 2) * wordB(K - 1) * wordA(2) * wordB(1), "u2");
        name_pair(wordA(1) * wordB(2) * wordA(L - 1) * wordB(K - 2), "u3");
        name_pair(wordA(1) * wordB(K - 1) * wordA(L - 1) * wordB(1), "u4");
    } else {
        name_pair(wordA(3) * wordB(3), "u5");
        name_pair(wordA(1) * wordB(2) * wordA(2) * wordB(1), "u6");
    }
    auto display = [&](const Word& u) {
        auto it = names.find(u);
        return it == names.end() ? u.str() : it->second;
    };

    // exponent-form rendering of a word
    auto exp_form = [](const Word& ww) {
        std::string out;
        std::size_t i = 0;
        while (i < ww.size()) {
            char c = ww.at(i);
            std::size_t j = i;
            while (j < ww.size() && ww.at(j) == c) ++j;
            out += c;
            if (j - i > 1) out += "^" + std::to_string(j - i);
            i = j;
        }
        return out.empty() ? "1" : out;
    };

    const std::size_t n = w.size();
    const std::size_t period = w.class_order();
    if (w.at(0) == w.at(n - 1))
        throw std::logic_error("table word must start at a run boundary");

    std::ostringstream os;
    os << "Table " << table << ": forms of w" << (table <= 5 ? table : table)
       << " = " << exp_form(w) << "  (k=" << k << ", l=" << l
       << "), class order " << period << "\n";

    const std::size_t half = K + L;
    std::size_t family = 0;
    std::size_t pos = 0;
    while (pos < period) {
        char c = w.at(pos);
        std::size_t runlen = 0;
        while (pos + runlen < n && w.at(pos + runlen) == c) ++runlen;
        ++family;

        // symbolic pattern: c^j  <rest runs>  c^(runlen - j)
        std::ostringstream pat;
        pat << c << "^j";
        {
            std::size_t q = pos + runlen;
            Word rest = (q % n == 0) ? Word(w.letters().substr(0, pos))
                                     : Word(w.letters().substr(q % n) + w.letters().substr(0, pos));
            if (!rest.empty()) pat << " " << exp_form(rest);
        }
        pat << " " << c << "^(" << runlen << "-j)";
        os << "family " << family << ": " << pat.str() << "  (1 <= j <= " << runlen << ")\n";

        bool any = false;
        for (std::size_t j = 1; j <= runlen; ++j) {
            Word r = w.rotated_left((pos + runlen - j) % n);
            std::size_t countA = 0;
            for (std::size_t i = 0; i < half; ++i) countA += r.at(i) == 'A';
            if (countA != L) continue;
            Word prefix(r.letters().substr(0, half));
            Word u = prefix.reversed();
            Word v(r.letters().substr(half));
            os << "  j=" << j << ": " << display(u) << "*" << display(v) << "\n";
            any = true;
        }
        if (!any) os << "  none\n";
        pos += runlen;
    }
    (void)basis;
    return os.str();
}

}  // namespace cycsos

#endif
