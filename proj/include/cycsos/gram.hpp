#ifndef CYCSOS_GRAM_HPP
#define CYCSOS_GRAM_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cycsos/exactlinalg.hpp"
#include "cycsos/ncpoly.hpp"
#include "cycsos/word.hpp"

namespace cycsos {

/// Which Gram basis to build.
///
/// SqrtXY(k,l) is the square-root setting for S_{2(k+l),2k}: Z runs over
/// W_{l,k}(A,B) and the auxiliary blocks are X W_{l-1,k} X and Y W_{l,k-1} Y.
/// PlainAB(m,k), m and k even, targets S_{m,k} in the plain ring with
/// Z = W_{(m-k)/2, k/2}(A,B) and no auxiliary blocks.
struct BasisSetting {
    enum class Kind { SqrtXY, PlainAB };
    Kind kind = Kind::SqrtXY;
    std::int64_t k = 0;  // SqrtXY: B-count of Z words; PlainAB: target k
    std::int64_t l = 0;  // SqrtXY only: A-count of Z words
    std::int64_t m = 0;  // PlainAB only: target m

    static BasisSetting sqrt_xy(std::int64_t k, std::int64_t l) {
        if (k < 0 || l < 0) throw std::invalid_argument("SqrtXY requires k, l >= 0");
        BasisSetting s;
        s.kind = Kind::SqrtXY;
        s.k = k;
        s.l = l;
        return s;
    }

    static BasisSetting plain_ab(std::int64_t m, std::int64_t k) {
        if (m % 2 != 0 || k % 2 != 0)
            throw std::invalid_argument("PlainAB requires m and k even");
        if (k < 0 || k > m) throw std::invalid_argument("PlainAB requires 0 <= k <= m");
        BasisSetting s;
        s.kind = Kind::PlainAB;
        s.m = m;
        s.k = k;
        return s;
    }

    /// Degree of the words the Gram products live in.
    std::size_t target_degree() const {
        return kind == Kind::SqrtXY ? static_cast<std::size_t>(2 * (k + l))
                                    : static_cast<std::size_t>(m);
    }
    /// B-count of those words.
    std::size_t target_bcount() const {
        return kind == Kind::SqrtXY ? static_cast<std::size_t>(2 * k)
                                    : static_cast<std::size_t>(k);
    }
    /// (m, k) of the target polynomial S_{m,k}.
    std::pair<std::size_t, std::size_t> target_mk() const {
        return {target_degree(), target_bcount()};
    }

    /// True when the A<->B swap symmetry applies.
    bool sigma_applicable() const {
        return kind == Kind::SqrtXY ? (k == l) : (k == m - k);
    }

    std::string str() const {
        if (kind == Kind::SqrtXY)
            return "SqrtXY(k=" + std::to_string(k) + ",l=" + std::to_string(l) + ")";
        return "PlainAB(m=" + std::to_string(m) + ",k=" + std::to_string(k) + ")";
    }
};

enum class Block { Z, ZX, ZY };

inline const char* block_name(Block b) {
    switch (b) {
        case Block::Z: return "Z";
        case Block::ZX: return "ZX";
        case Block::ZY: return "ZY";
    }
    return "?";
}

/// One occurrence of a Gram entry H_block(i, j) in a class equation.
struct GramEntryRef {
    Block block = Block::Z;
    std::size_t i = 0, j = 0;
    auto operator<=>(const GramEntryRef&) const = default;
};

class GramBasis {
public:
    BasisSetting setting;
    std::vector<Word> Z;    // W_{l,k} (SqrtXY) or W_{(m-k)/2,k/2} (PlainAB)
    std::vector<Word> ZX;   // interiors u' of X u' X, i.e. W_{l-1,k}; empty in PlainAB
    std::vector<Word> ZY;   // interiors of Y u' Y, i.e. W_{l,k-1}; empty in PlainAB

    const std::vector<Word>& block_words(Block b) const {
        switch (b) {
            case Block::Z: return Z;
            case Block::ZX: return ZX;
            case Block::ZY: return ZY;
        }
        throw std::logic_error("bad block");
    }

    std::size_t index_of(Block b, const Word& w) const {
        const auto& m = index_map(b);
        auto it = m.find(w);
        if (it == m.end()) throw std::invalid_argument("word not in basis block");
        return it->second;
    }

    bool contains(Block b, const Word& w) const {
        const auto& m = index_map(b);
        return m.find(w) != m.end();
    }

    /// Canonical variable name for the symmetric entry {u, v}; the two words
    /// are ordered length-lex so H(u,v) and H(v,u) share a name.
    std::string var_name(Block b, std::size_t i, std::size_t j) const {
        const auto& words = block_words(b);
        std::size_t a = i, c = j;
        if (LenLexLess{}(words[c], words[a])) std::swap(a, c);
        std::string prefix = b == Block::Z ? "H" : (b == Block::ZX ? "HX" : "HY");
        return prefix + "[" + words[a].str() + "," + words[c].str() + "]";
    }

    /// Full XY-ring word for an auxiliary basis element (X u' X or Y u' Y).
    Word conjugated_word(Block b, std::size_t i) const {
        if (b == Block::Z) return substitute_squares(Z[i]);
        const Word& core = block_words(b)[i];
        char outer = b == Block::ZX ? 'A' : 'B';
        std::string s(1, outer);
        s += substitute_squares(core).str();
        s += outer;
        return Word(std::move(s));
    }

    void build_index_maps() {
        for (auto b : {Block::Z, Block::ZX, Block::ZY}) {
            auto& m = index_map(b);
            m.clear();
            const auto& words = block_words(b);
            for (std::size_t i = 0; i < words.size(); ++i) m.emplace(words[i], i);
        }
    }

private:
    std::map<Word, std::size_t>& index_map(Block b) {
        return b == Block::Z ? zidx_ : (b == Block::ZX ? zxidx_ : zyidx_);
    }
    const std::map<Word, std::size_t>& index_map(Block b) const {
        return b == Block::Z ? zidx_ : (b == Block::ZX ? zxidx_ : zyidx_);
    }

    std::map<Word, std::size_t> zidx_, zxidx_, zyidx_;
};

inline GramBasis build_basis(const BasisSetting& setting) {
    GramBasis basis;
    basis.setting = setting;
    if (setting.kind == BasisSetting::Kind::SqrtXY) {
        const auto k = static_cast<std::size_t>(setting.k);
        const auto l = static_cast<std::size_t>(setting.l);
        basis.Z = words_with_counts(l, k);
        if (l >= 1) basis.ZX = words_with_counts(l - 1, k);
        if (k >= 1) basis.ZY = words_with_counts(l, k - 1);
    } else {
        basis.Z = words_with_counts(static_cast<std::size_t>((setting.m - setting.k) / 2),
                                    static_cast<std::size_t>(setting.k / 2));
    }
    basis.build_index_maps();
    return basis;
}

/// All factorizations of the class of w as u*v over the basis blocks,
/// found by scanning the distinct cyclic forms of w.
struct FactorizationRow {
    Word class_rep;
    std::uint64_t class_order = 0;
    std::vector<std::pair<Word, Word>> z_pairs;   // (u, v): u*v cyclically equal to w
    std::vector<std::pair<Word, Word>> zx_pairs;  // interiors (u', v')
    std::vector<std::pair<Word, Word>> zy_pairs;
};

inline FactorizationRow factorizations(const Word& w, const GramBasis& basis) {
    const auto& s = basis.setting;
    if (w.size() != s.target_degree() || w.count('B') != s.target_bcount())
        throw std::invalid_argument("word degree/weight does not match basis");

    FactorizationRow row;
    row.class_rep = w.canonical();
    row.class_order = w.class_order();

    const std::size_t half = s.target_degree() / 2;
    const std::size_t prefA = s.kind == BasisSetting::Kind::SqrtXY
                                  ? static_cast<std::size_t>(s.l)
                                  : static_cast<std::size_t>((s.m - s.k) / 2);

    std::set<Word> seen;
    for (const Word& r : w.rotations()) {
        if (!seen.insert(r).second) continue;
        const std::string& letters = r.letters();
        std::size_t countA = 0;
        for (std::size_t i = 0; i < half; ++i) countA += letters[i] == 'A';
        if (countA != prefA) continue;
        Word prefix(letters.substr(0, half));   // this is u*
        Word suffix(letters.substr(half));      // this is v
        Word u = prefix.reversed();
        row.z_pairs.emplace_back(u, suffix);
        if (s.kind == BasisSetting::Kind::SqrtXY) {
            // X-block instances correspond to Z pairs where u* and v both
            // start with A; Y-block likewise with B.
            if (prefix.at(0) == suffix.at(0)) {
                char c = prefix.at(0);
                Word ucore(u.letters().substr(0, u.size() - 1));  // u = u' c
                Word vcore(suffix.letters().substr(1));           // v = c v'
                if (c == 'A')
                    row.zx_pairs.emplace_back(ucore, vcore);
                else
                    row.zy_pairs.emplace_back(ucore, vcore);
            }
        }
    }
    return row;
}

/// One linear constraint: the class sum of the target equals the sum of the
/// listed Gram entries (eq. over the entries of H, H_X, H_Y).
struct GramEquation {
    Word class_rep;
    Rational rhs = 0;
    std::vector<GramEntryRef> entries;  // ordered occurrences (row-major)
};

struct GramConstraintSystem {
    GramBasis basis;
    std::vector<GramEquation> equations;
    /// Orbits of variables forced equal (only after symmetry_reduce; before
    /// that, each variable sits in its own orbit).  Variables are named via
    /// GramBasis::var_name.
    std::vector<std::vector<std::string>> orbits;
    /// Classes of the target with a nonzero class sum but no factorization
    /// at all; nonempty means infeasible outright.
    std::vector<Word> empty_target_classes;
};

/// Builds the full linear system: one equation per cyclic class of the
/// target degree, RHS = class sum of `target`, LHS entries collected by
/// iterating every basis pair (row-major per block).
inline GramConstraintSystem build_constraints(const NCPoly& target, const GramBasis& basis) {
    const auto& s = basis.setting;
    GramConstraintSystem sys;
    sys.basis = basis;

    ClassSumFingerprint fp = fingerprint(target);

    // one equation per cyclic class of W_{deg-bc, bc}
    std::map<Word, std::size_t, LenLexLess> class_index;
    for_each_word(s.target_degree() - s.target_bcount(), s.target_bcount(),
                  [&](const Word& w) {
                      Word rep = w.canonical();
                      if (class_index.count(rep)) return;
                      class_index.emplace(rep, 0);
                  });
    for (auto& [rep, idx] : class_index) {
        idx = sys.equations.size();
        GramEquation eq;
        eq.class_rep = rep;
        auto it = fp.find(rep);
        eq.rhs = it == fp.end() ? Rational(0) : it->second;
        sys.equations.push_back(std::move(eq));
    }

    auto add_block = [&](Block b) {
        const auto& words = basis.block_words(b);
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = 0; j < words.size(); ++j) {
                Word prod;
                if (b == Block::Z) {
                    prod = words[i].reversed() * words[j];
                } else {
                    char c = b == Block::ZX ? 'A' : 'B';
                    std::string t(1, c);
                    t += words[i].reversed().str();
                    t += c;
                    t += words[j].str();
                    prod = Word(std::move(t));
                }
                sys.equations[class_index.at(prod.canonical())].entries.push_back({b, i, j});
            }
    };
    add_block(Block::Z);
    add_block(Block::ZX);
    add_block(Block::ZY);

    // initial orbits: singletons over the distinct symmetric entries
    for (auto b : {Block::Z, Block::ZX, Block::ZY}) {
        const auto n = basis.block_words(b).size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                sys.orbits.push_back({basis.var_name(b, i, j)});
    }

    for (const auto& eq : sys.equations)
        if (eq.rhs != 0 && eq.entries.empty())
            sys.empty_target_classes.push_back(eq.class_rep);

    return sys;
}

namespace detail {
class UnionFind {
public:
    std::size_t add(const std::string& key) {
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        std::size_t id = parent_.size();
        ids_.emplace(key, id);
        parent_.push_back(id);
        return id;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void merge(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
    const std::map<std::string, std::size_t>& ids() const { return ids_; }

private:
    std::map<std::string, std::size_t> ids_;
    std::vector<std::size_t> parent_;
};
}  // namespace detail

struct SymmetryOptions {
    bool star = true;          // H(u,v) = H(u*,v*)
    bool sigma = false;        // H(sigma u, sigma v) = H(u,v); needs k = l
    bool xy_blocks = true;     // also relate the H_X / H_Y entries
};

/// Merges Gram variables into symmetry orbits.  Solutions of the reduced
/// system extend to the original by orbit averaging, which preserves
/// positive semidefiniteness.
inline GramConstraintSystem symmetry_reduce(const GramConstraintSystem& sys,
                                            const SymmetryOptions& opt) {
    const GramBasis& basis = sys.basis;
    const auto& s = basis.setting;
    if (opt.sigma && !s.sigma_applicable())
        throw std::invalid_argument("sigma symmetry requires k = l (or k = m-k)");

    detail::UnionFind uf;
    for (const auto& orbit : sys.orbits)
        for (const auto& v : orbit) uf.add(v);

    auto merge_pairs = [&](Block b1, std::size_t i1, std::size_t j1, Block b2,
                           std::size_t i2, std::size_t j2) {
        uf.merge(uf.add(basis.var_name(b1, i1, j1)), uf.add(basis.var_name(b2, i2, j2)));
    };

    for (auto b : {Block::Z, Block::ZX, Block::ZY}) {
        if (b != Block::Z && !opt.xy_blocks) continue;
        const auto& words = basis.block_words(b);
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = i; j < words.size(); ++j) {
                if (opt.star) {
                    // star keeps every block stable
                    merge_pairs(b, i, j, b, basis.index_of(b, words[i].reversed()),
                                basis.index_of(b, words[j].reversed()));
                }
                if (opt.sigma) {
                    Word su = words[i].swapped(), sv = words[j].swapped();
                    if (b == Block::Z) {
                        merge_pairs(b, i, j, b, basis.index_of(b, su), basis.index_of(b, sv));
                    } else if (opt.xy_blocks) {
                        Block other = b == Block::ZX ? Block::ZY : Block::ZX;
                        merge_pairs(b, i, j, other, basis.index_of(other, su),
                                    basis.index_of(other, sv));
                    }
                }
            }
    }

    // regroup orbits by root, deterministic order
    std::map<std::size_t, std::vector<std::string>> grouped;
    detail::UnionFind& uf2 = uf;
    for (const auto& [name, id] : uf.ids()) grouped[uf2.find(id)].push_back(name);

    GramConstraintSystem out = sys;
    out.orbits.clear();
    for (auto& [root, names] : grouped) {
        std::sort(names.begin(), names.end());
        out.orbits.push_back(std::move(names));
    }
    std::sort(out.orbits.begin(), out.orbits.end());
    return out;
}

/// Representative (least name) of the orbit containing a variable.
inline std::map<std::string, std::string> orbit_representatives(
    const GramConstraintSystem& sys) {
    std::map<std::string, std::string> rep;
    for (const auto& orbit : sys.orbits) {
        const std::string& r = *std::min_element(orbit.begin(), orbit.end());
        for (const auto& v : orbit) rep[v] = r;
    }
    return rep;
}

/// Equation rewritten over orbit representatives: list of (rep, multiplicity).
inline std::map<std::string, Int> reduced_equation_lhs(
    const GramConstraintSystem& sys, const GramEquation& eq,
    const std::map<std::string, std::string>& rep) {
    std::map<std::string, Int> lhs;
    for (const auto& e : eq.entries) {
        const std::string name = sys.basis.var_name(e.block, e.i, e.j);
        lhs[rep.at(name)] += 1;
    }
    return lhs;
}

/// Z*HZ + Zx*Hx Zx + Zy*Hy Zy expanded exactly.  SqrtXY lands in the XY
/// ring, PlainAB in the AB ring.
inline NCPoly gram_to_poly(const QMatrix& H, const QMatrix& HX, const QMatrix& HY,
                           const GramBasis& basis) {
    const auto& s = basis.setting;
    auto check_dim = [](const QMatrix& M, std::size_t n, const char* what) {
        if (M.rows() != n || M.cols() != n)
            throw std::invalid_argument(std::string("dimension mismatch for ") + what);
    };
    check_dim(H, basis.Z.size(), "H");
    check_dim(HX, basis.ZX.size(), "H_X");
    check_dim(HY, basis.ZY.size(), "H_Y");

    const bool xy = s.kind == BasisSetting::Kind::SqrtXY;
    NCPoly p(xy ? RingTag::XY : RingTag::AB);

    for (auto b : {Block::Z, Block::ZX, Block::ZY}) {
        const QMatrix& M = b == Block::Z ? H : (b == Block::ZX ? HX : HY);
        const auto& words = basis.block_words(b);
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = 0; j < words.size(); ++j) {
                if (M(i, j) == 0) continue;
                Word wi = xy ? basis.conjugated_word(b, i) : words[i];
                Word wj = xy ? basis.conjugated_word(b, j) : words[j];
                p.add_term(wi.reversed() * wj, M(i, j));
            }
    }
    return p;
}

inline NCPoly gram_to_poly(const QMatrix& H, const GramBasis& basis) {
    return gram_to_poly(H, QMatrix(basis.ZX.size(), basis.ZX.size()),
                        QMatrix(basis.ZY.size(), basis.ZY.size()), basis);
}

}  // namespace cycsos

#endif
