#ifndef CYCSOS_EXACTLINALG_HPP
#define CYCSOS_EXACTLINALG_HPP

#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cycsos/rational.hpp"

namespace cycsos {

/// Dense matrix with exact rational entries.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    std::vector<Rational> mul(const std::vector<Rational>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
        std::vector<Rational> r(rows_, Rational(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    QMatrix submatrix(const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) const {
        QMatrix m(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j)
                m(i, j) = (*this)(rows[i], cols[j]);
        return m;
    }

    Rational determinant() const {
        if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
        QMatrix m = *this;
        const std::size_t n = rows_;
        Rational det = 1;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            while (piv < n && m(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            if (piv != k) {
                for (std::size_t j = k; j < n; ++j) std::swap(m(piv, j), m(k, j));
                det = -det;
            }
            det *= m(k, k);
            for (std::size_t i = k + 1; i < n; ++i) {
                if (m(i, k) == 0) continue;
                Rational f = m(i, k) / m(k, k);
                for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
            }
        }
        return det;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

struct PsdCheckResult {
    bool psd = false;
    /// On failure: index set of a principal submatrix and an exact witness
    /// vector whose quadratic form on it is strictly negative.
    std::vector<std::size_t> indices;
    std::vector<Rational> witness;
    Rational value = 0;
};

/// Exact quadratic form v^T M v.
inline Rational quadratic_form(const QMatrix& m, const std::vector<Rational>& v) {
    Rational q = 0;
    auto mv = m.mul(v);
    for (std::size_t i = 0; i < v.size(); ++i) q += v[i] * mv[i];
    return q;
}

/// Exact positive-semidefiniteness test for a symmetric rational matrix by
/// pivoted elimination.  A zero pivot whose row is not identically zero in
/// the remaining block violates the kernel-propagation necessary condition
/// and yields a negative witness; so does any negative pivot.
inline PsdCheckResult psd_check_exact(QMatrix m) {
    if (!m.is_symmetric()) throw std::invalid_argument("psd_check_exact expects a symmetric matrix");
    const std::size_t n = m.rows();
    PsdCheckResult res;

    // Accumulated elimination multipliers let us lift a witness found in a
    // Schur complement back to the original coordinates.
    QMatrix lift = QMatrix::identity(n);
    std::vector<bool> eliminated(n, false);

    for (std::size_t k = 0; k < n; ++k) {
        if (m(k, k) < 0) {
            // e_k in Schur coordinates
            std::vector<Rational> w(n, Rational(0));
            w[k] = 1;
            std::vector<Rational> v(n, Rational(0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (w[j] != 0) v[i] += lift(i, j) * w[j];
            res.psd = false;
            res.indices.resize(n);
            for (std::size_t i = 0; i < n; ++i) res.indices[i] = i;
            res.witness = v;
            res.value = m(k, k);
            return res;
        }
        if (m(k, k) == 0) {
            for (std::size_t j = k + 1; j < n; ++j) {
                if (eliminated[j] || m(k, j) == 0) continue;
                // zero diagonal with nonzero off-diagonal entry t:
                // v = (1, -sgn(t) * c) on {k, j} makes the form negative for
                // suitable c; with diag d = m(j,j) >= 0 pick c = (d+1)/|t|... use
                // v = (d + 1, -t) : form = (d+1)^2*0 - 2 t (d+1) t + t^2 d
                //                = t^2 (d - 2(d+1)) = -t^2 (d+2) < 0.
                Rational t = m(k, j), d = m(j, j);
                std::vector<Rational> w(n, Rational(0));
                w[k] = d + 1;
                w[j] = -t;
                std::vector<Rational> v(n, Rational(0));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t jj = 0; jj < n; ++jj)
                        if (w[jj] != 0) v[i] += lift(i, jj) * w[jj];
                res.psd = false;
                res.indices.resize(n);
                for (std::size_t i = 0; i < n; ++i) res.indices[i] = i;
                res.witness = v;
                res.value = -t * t * (d + 2);
                return res;
            }
            eliminated[k] = true;
            continue;
        }
        // Schur complement step
        for (std::size_t i = k + 1; i < n; ++i) {
            if (eliminated[i] || m(k, i) == 0) continue;
            Rational f = m(k, i) / m(k, k);
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
            // new e_i corresponds to e_i - f e_k in the original coordinates
            for (std::size_t r = 0; r < n; ++r) lift(r, i) -= f * lift(r, k);
            m(i, k) = 0;
            m(k, i) = 0;
        }
        eliminated[k] = true;
    }
    res.psd = true;
    return res;
}

/// Sparse multivariate polynomial over named rational variables.  Used for
/// symbolic Gram entries and refutation statements.
class QPoly {
public:
    /// monomial: variable name -> exponent (>=1 entries only)
    using Monomial = std::map<std::string, int>;
    using TermMap = std::map<Monomial, Rational>;

    QPoly() = default;
    QPoly(Rational c) { add({}, std::move(c)); }          // NOLINT implicit
    QPoly(int c) : QPoly(Rational(c)) {}                  // NOLINT implicit

    static QPoly var(const std::string& name, Rational coeff = 1) {
        QPoly p;
        p.add({{name, 1}}, std::move(coeff));
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(Monomial m, Rational c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) { terms_.emplace(std::move(m), std::move(c)); return; }
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    QPoly& operator+=(const QPoly& q) {
        for (const auto& [m, c] : q.terms_) add(m, c);
        return *this;
    }
    QPoly& operator-=(const QPoly& q) {
        for (const auto& [m, c] : q.terms_) add(m, -c);
        return *this;
    }
    friend QPoly operator+(QPoly p, const QPoly& q) { p += q; return p; }
    friend QPoly operator-(QPoly p, const QPoly& q) { p -= q; return p; }
    friend QPoly operator-(const QPoly& p) { QPoly z; z -= p; return z; }

    friend QPoly operator*(const QPoly& p, const QPoly& q) {
        QPoly r;
        for (const auto& [mp, cp] : p.terms_)
            for (const auto& [mq, cq] : q.terms_) {
                Monomial m = mp;
                for (const auto& [v, e] : mq) m[v] += e;
                r.add(std::move(m), cp * cq);
            }
        return r;
    }

    friend QPoly operator*(const Rational& c, QPoly p) {
        QPoly r;
        for (const auto& [m, v] : p.terms_) r.add(m, c * v);
        return r;
    }

    bool operator==(const QPoly& q) const { return terms_ == q.terms_; }

    /// True if the polynomial is c * <single variable> + d.
    bool is_affine_in_one_var() const {
        for (const auto& [m, c] : terms_) {
            int deg = 0;
            for (const auto& [v, e] : m) deg += e;
            if (deg > 1) return false;
        }
        return true;
    }

    /// Constant term.
    Rational constant() const {
        auto it = terms_.find({});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Linear coefficient of a variable.
    Rational coeff_of(const std::string& v) const {
        auto it = terms_.find({{v, 1}});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// All variable names appearing.
    std::vector<std::string> variables() const {
        std::map<std::string, int> seen;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m) seen[v] = 1;
        std::vector<std::string> out;
        for (const auto& [v, x] : seen) out.push_back(v);
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational a = c;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool printed = false;
            if (a != 1 || m.empty()) { os << to_string(a); printed = true; }
            for (const auto& [v, e] : m) {
                if (printed) os << "*";
                os << v;
                if (e > 1) os << "^" << e;
                printed = true;
            }
        }
        return os.str();
    }

private:
    TermMap terms_;
};

/// Determinant of a square matrix of polynomials (cofactor expansion; fine
/// for the 4x4 compressions used here).
inline QPoly poly_determinant(const std::vector<std::vector<QPoly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return QPoly(Rational(1));
    if (n == 1) return m[0][0];
    QPoly det;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<QPoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<QPoly> row;
            for (std::size_t jj = 0; jj < n; ++jj)
                if (jj != j) row.push_back(m[i][jj]);
            minor.push_back(std::move(row));
        }
        QPoly term = m[0][j] * poly_determinant(minor);
        if (j % 2 == 0) det += term; else det -= term;
    }
    return det;
}

}  // namespace cycsos

#endif
