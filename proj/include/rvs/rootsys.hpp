#ifndef RVS_ROOTSYS_HPP
#define RVS_ROOTSYS_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvs/matrix.hpp"
#include "rvs/rational.hpp"

namespace rvs {

using IVec = std::vector<long long>;
using IMat = Matrix<long long>;

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A root system of type A-G in a fixed exact realization of t.
///
/// Classical types live in ambient coordinates (A_n on the trace-zero
/// subspace of an (n+1)-space, B/C/D on n coordinates); exceptional types
/// use fundamental-coweight coordinates, where the j-th coordinate of a
/// vector u is alpha_j(u). Roots are stored as integer covectors of the
/// realization; roots_t re-expresses them as functionals on the chosen
/// basis of t, so all linear algebra downstream is n-dimensional.
struct RootSystem {
    char type;
    int rank;
    int ambient_dim;
    std::vector<IVec> roots;  // covectors in realization coordinates
    int n_pos;                // roots[0..n_pos) positive; roots[i+n_pos] = -roots[i]
    IMat cartan;
    std::vector<IMat> gen_ambient;       // vector action of s_i on the realization
    std::vector<IMat> gen_t;             // vector action of s_i in t coordinates (n x n)
    std::vector<std::vector<int>> gen_perm;  // root permutation of s_i
    IMat t_basis;                        // rows b_k: basis of t in ambient coordinates
    std::vector<IVec> roots_t;           // roots_t[i][k] = roots[i](b_k)

    int num_roots() const { return static_cast<int>(roots.size()); }
    int negate(int idx) const { return idx < n_pos ? idx + n_pos : idx - n_pos; }

    int root_index(const IVec& covector) const {
        for (int i = 0; i < num_roots(); ++i)
            if (roots[i] == covector) return i;
        throw std::logic_error("covector is not a root");
    }
};

namespace detail {

inline IVec covector_apply(const IVec& rho, const IMat& m) {
    int n = m.rows();
    IVec out(m.cols(), 0);
    for (int k = 0; k < m.cols(); ++k)
        for (int j = 0; j < n; ++j) out[k] += rho[j] * m(j, k);
    return out;
}

inline IMat exceptional_cartan(char type, int rank) {
    auto fill = [&](std::initializer_list<std::initializer_list<int>> rows) {
        IMat m(rank, rank);
        int i = 0;
        for (auto& r : rows) {
            int j = 0;
            for (int v : r) m(i, j++) = v;
            ++i;
        }
        return m;
    };
    if (type == 'G')
        return fill({{2, -1}, {-3, 2}});
    if (type == 'F')
        return fill({{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}});
    // Bourbaki numbering for E: node 2 is the branch node attached to node 4.
    if (type == 'E' && rank == 6)
        return fill({{2, 0, -1, 0, 0, 0},
                     {0, 2, 0, -1, 0, 0},
                     {-1, 0, 2, -1, 0, 0},
                     {0, -1, -1, 2, -1, 0},
                     {0, 0, 0, -1, 2, -1},
                     {0, 0, 0, 0, -1, 2}});
    if (type == 'E' && rank == 7)
        return fill({{2, 0, -1, 0, 0, 0, 0},
                     {0, 2, 0, -1, 0, 0, 0},
                     {-1, 0, 2, -1, 0, 0, 0},
                     {0, -1, -1, 2, -1, 0, 0},
                     {0, 0, 0, -1, 2, -1, 0},
                     {0, 0, 0, 0, -1, 2, -1},
                     {0, 0, 0, 0, 0, -1, 2}});
    if (type == 'E' && rank == 8)
        return fill({{2, 0, -1, 0, 0, 0, 0, 0},
                     {0, 2, 0, -1, 0, 0, 0, 0},
                     {-1, 0, 2, -1, 0, 0, 0, 0},
                     {0, -1, -1, 2, -1, 0, 0, 0},
                     {0, 0, 0, -1, 2, -1, 0, 0},
                     {0, 0, 0, 0, -1, 2, -1, 0},
                     {0, 0, 0, 0, 0, -1, 2, -1},
                     {0, 0, 0, 0, 0, 0, -1, 2}});
    throw std::invalid_argument("invalid exceptional type/rank");
}

} // namespace detail

inline RootSystem build_root_system(char type, int rank) {
    const bool classical = (type == 'A' || type == 'B' || type == 'C' || type == 'D');
    if ((type == 'A' && rank < 1) || ((type == 'B' || type == 'C') && rank < 2) ||
        (type == 'D' && rank < 3) ||
        (type == 'E' && (rank < 6 || rank > 8)) || (type == 'F' && rank != 4) ||
        (type == 'G' && rank != 2) ||
        (type != 'A' && type != 'B' && type != 'C' && type != 'D' && type != 'E' &&
         type != 'F' && type != 'G'))
        throw std::invalid_argument(std::string("invalid type/rank pair ") + type +
                                    std::to_string(rank));

    RootSystem rs;
    rs.type = type;
    rs.rank = rank;
    rs.ambient_dim = (type == 'A') ? rank + 1 : rank;
    const int amb = rs.ambient_dim;

    // Simple roots as covectors of the realization.
    std::vector<IVec> simple(rank, IVec(amb, 0));
    if (classical) {
        for (int i = 0; i + 1 < rank || (type == 'A' && i < rank); ++i) {
            simple[i][i] = 1;
            simple[i][i + 1] = -1;
        }
        if (type == 'B') simple[rank - 1][rank - 1] = 1;
        if (type == 'C') simple[rank - 1][rank - 1] = 2;
        if (type == 'D') {
            simple[rank - 1][rank - 2] = 1;
            simple[rank - 1][rank - 1] = 1;
        }
    } else {
        for (int i = 0; i < rank; ++i) simple[i][i] = 1;
    }

    // Generator matrices (vector action on the realization).
    if (classical) {
        for (int i = 0; i < rank; ++i) {
            const IVec& a = simple[i];
            long long norm = 0;
            for (long long x : a) norm += x * x;
            IMat m = IMat::identity(amb);
            for (int j = 0; j < amb; ++j)
                for (int k = 0; k < amb; ++k) m(j, k) -= 2 * a[j] * a[k] / norm;
            rs.gen_ambient.push_back(m);
        }
        IMat cart(rank, rank);
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) {
                long long num = 0, norm = 0;
                for (int k = 0; k < amb; ++k) {
                    num += simple[i][k] * simple[j][k];
                    norm += simple[j][k] * simple[j][k];
                }
                cart(i, j) = 2 * num / norm;
            }
        rs.cartan = cart;
    } else {
        rs.cartan = detail::exceptional_cartan(type, rank);
        for (int i = 0; i < rank; ++i) {
            IMat m = IMat::identity(rank);
            for (int j = 0; j < rank; ++j) m(j, i) -= rs.cartan(j, i);
            rs.gen_ambient.push_back(m);
        }
    }

    // Reflection closure of the simple roots.
    std::map<IVec, int> seen;
    std::vector<IVec> all;
    for (const auto& a : simple)
        if (seen.emplace(a, 0).second) all.push_back(a);
    for (size_t head = 0; head < all.size(); ++head) {
        for (const auto& g : rs.gen_ambient) {
            IVec img = detail::covector_apply(all[head], g);
            if (seen.emplace(img, 0).second) all.push_back(img);
        }
    }

    // Coefficients in the simple-root basis decide sign and ordering.
    Matrix<Rational> smat(rank, amb);
    for (int i = 0; i < rank; ++i)
        for (int k = 0; k < amb; ++k) smat(i, k) = Rational(simple[i][k]);
    Matrix<Rational> smat_t = smat.transpose();
    struct Keyed {
        long long height;
        IVec coeffs, covector;
    };
    std::vector<Keyed> pos;
    for (const auto& rho : all) {
        std::vector<Rational> rhs(amb);
        for (int k = 0; k < amb; ++k) rhs[k] = Rational(rho[k]);
        auto c = solve(smat_t, rhs);
        if (!c) throw std::logic_error("root outside simple-root span");
        IVec ci(rank);
        long long h = 0;
        for (int i = 0; i < rank; ++i) {
            if (!is_integer((*c)[i])) throw std::logic_error("non-integral root coefficient");
            ci[i] = static_cast<long long>(num((*c)[i]));
            h += ci[i];
        }
        bool positive = false;
        for (int i = 0; i < rank; ++i)
            if (ci[i] != 0) { positive = ci[i] > 0; break; }
        if (positive) pos.push_back({h, ci, rho});
    }
    std::sort(pos.begin(), pos.end(), [](const Keyed& a, const Keyed& b) {
        return std::tie(a.height, a.coeffs) < std::tie(b.height, b.coeffs);
    });
    rs.n_pos = static_cast<int>(pos.size());
    for (const auto& k : pos) rs.roots.push_back(k.covector);
    for (const auto& k : pos) {
        IVec neg = k.covector;
        for (auto& x : neg) x = -x;
        rs.roots.push_back(neg);
    }

    // Root permutations of the generators.
    std::map<IVec, int> index;
    for (int i = 0; i < rs.num_roots(); ++i) index[rs.roots[i]] = i;
    for (const auto& g : rs.gen_ambient) {
        std::vector<int> perm(rs.num_roots());
        for (int i = 0; i < rs.num_roots(); ++i)
            perm[i] = index.at(detail::covector_apply(rs.roots[i], g));
        rs.gen_perm.push_back(perm);
    }

    // Basis of t and everything expressed in it.
    if (type == 'A') {
        rs.t_basis = IMat(rank, amb);
        for (int k = 0; k < rank; ++k) {
            rs.t_basis(k, k) = 1;
            rs.t_basis(k, k + 1) = -1;
        }
        // Action of each generator on the t basis, solved exactly.
        Matrix<Rational> bt(amb, rank);
        for (int k = 0; k < rank; ++k)
            for (int j = 0; j < amb; ++j) bt(j, k) = Rational(rs.t_basis(k, j));
        for (const auto& g : rs.gen_ambient) {
            IMat mt(rank, rank);
            for (int k = 0; k < rank; ++k) {
                std::vector<Rational> img(amb, Rational(0));
                for (int j = 0; j < amb; ++j)
                    for (int j2 = 0; j2 < amb; ++j2)
                        img[j] += Rational(g(j, j2) * rs.t_basis(k, j2));
                auto c = solve(bt, img);
                if (!c) throw std::logic_error("generator does not preserve t");
                for (int j = 0; j < rank; ++j) mt(j, k) = static_cast<long long>(num((*c)[j]));
            }
            rs.gen_t.push_back(mt);
        }
    } else {
        rs.t_basis = IMat::identity(rank);
        rs.gen_t = rs.gen_ambient;
    }
    for (const auto& rho : rs.roots) {
        IVec rt(rank, 0);
        for (int k = 0; k < rank; ++k)
            for (int j = 0; j < amb; ++j) rt[k] += rho[j] * rs.t_basis(k, j);
        rs.roots_t.push_back(rt);
    }
    return rs;
}

/// A Weyl group element: exact matrix on t, the induced root permutation,
/// and a reduced word in the simple reflections.
struct WeylElement {
    IMat matrix;             // n x n action on t coordinates
    std::vector<int> perm;   // perm[i] = index of w(roots[i])
    std::vector<int> word;   // 0-based generator indices, left-to-right product
};

inline bool matrix_lex_less(const IMat& a, const IMat& b) {
    return a.data() < b.data();
}

/// The full Weyl group, enumerated by closure under right multiplication.
struct WeylGroup {
    const RootSystem* rs = nullptr;
    std::vector<WeylElement> elems;
    std::map<std::vector<int>, int> index_by_perm;

    int size() const { return static_cast<int>(elems.size()); }

    int find(const std::vector<int>& perm) const { return index_by_perm.at(perm); }

    int mul(int a, int b) const {  // index of elems[a] * elems[b]
        const auto& pa = elems[a].perm;
        const auto& pb = elems[b].perm;
        std::vector<int> p(pa.size());
        for (size_t i = 0; i < pa.size(); ++i) p[i] = pa[pb[i]];
        return find(p);
    }

    int inv(int a) const {
        const auto& pa = elems[a].perm;
        std::vector<int> p(pa.size());
        for (size_t i = 0; i < pa.size(); ++i) p[pa[i]] = static_cast<int>(i);
        return find(p);
    }

    int order_of(int a) const {
        int x = a, n = 1;
        while (x != 0) {
            x = mul(x, a);
            ++n;
        }
        return n;
    }

    int conjugate(int x, int w) const { return mul(mul(x, w), inv(x)); }

    std::vector<int> centralizer(int w) const {
        std::vector<int> c;
        for (int x = 0; x < size(); ++x)
            if (conjugate(x, w) == w) c.push_back(x);
        return c;
    }
};

inline WeylGroup enumerate_weyl(const RootSystem& rs, size_t cap = 1000000) {
    WeylGroup g;
    g.rs = &rs;
    const int nr = rs.num_roots();
    WeylElement id;
    id.matrix = IMat::identity(rs.rank);
    id.perm.resize(nr);
    std::iota(id.perm.begin(), id.perm.end(), 0);
    g.index_by_perm[id.perm] = 0;
    g.elems.push_back(std::move(id));
    for (size_t head = 0; head < g.elems.size(); ++head) {
        for (int i = 0; i < rs.rank; ++i) {
            std::vector<int> p(nr);
            for (int a = 0; a < nr; ++a) p[a] = g.elems[head].perm[rs.gen_perm[i][a]];
            auto [it, fresh] = g.index_by_perm.emplace(p, static_cast<int>(g.elems.size()));
            if (!fresh) continue;
            WeylElement e;
            e.matrix = g.elems[head].matrix * rs.gen_t[i];
            e.perm = std::move(p);
            e.word = g.elems[head].word;
            e.word.push_back(i);
            g.elems.push_back(std::move(e));
            if (g.elems.size() > cap)
                throw CapExceeded("Weyl enumeration cap exceeded");
        }
    }
    return g;
}

/// Compose a word in the simple reflections into a WeylElement (the word
/// need not be reduced).
inline WeylElement element_from_word(const RootSystem& rs, const std::vector<int>& word) {
    WeylElement e;
    e.matrix = IMat::identity(rs.rank);
    e.perm.resize(rs.num_roots());
    std::iota(e.perm.begin(), e.perm.end(), 0);
    for (int i : word) {
        if (i < 0 || i >= rs.rank) throw std::invalid_argument("generator index out of range");
        e.matrix = e.matrix * rs.gen_t[i];
        std::vector<int> p(e.perm.size());
        for (size_t a = 0; a < p.size(); ++a) p[a] = e.perm[rs.gen_perm[i][a]];
        e.perm = std::move(p);
    }
    e.word = word;
    return e;
}

struct DegreeSet {
    std::vector<int> degrees;  // sorted ascending
};

namespace detail {

/// Exact division of integer polynomials; nullopt if not divisible.
inline std::optional<std::vector<Int>> int_poly_divide(const std::vector<Int>& num,
                                                       const std::vector<Int>& den) {
    if (num.size() < den.size()) return std::nullopt;
    std::vector<Int> rem = num;
    std::vector<Int> q(num.size() - den.size() + 1, Int(0));
    for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
        Int c = rem[k + den.size() - 1];
        if (c % den.back() != 0) return std::nullopt;
        c /= den.back();
        q[k] = c;
        for (size_t j = 0; j < den.size(); ++j) rem[k + j] -= c * den[j];
    }
    for (const Int& x : rem)
        if (x != 0) return std::nullopt;
    return q;
}

inline bool factor_poincare(const std::vector<Int>& p, int remaining, std::vector<int>& out,
                            int min_d) {
    if (p.size() == 1 && p[0] == 1) return remaining == 0;
    if (remaining == 0) return false;
    int deg = static_cast<int>(p.size()) - 1;
    for (int d = min_d; d - 1 <= deg; ++d) {
        std::vector<Int> q(d, Int(1));  // 1 + t + ... + t^{d-1}
        auto quo = int_poly_divide(p, q);
        if (!quo) continue;
        out.push_back(d);
        if (factor_poincare(*quo, remaining - 1, out, d)) return true;
        out.pop_back();
    }
    return false;
}

} // namespace detail

/// Invariant degrees, obtained by factoring the length generating function
/// of W as a product of t-analogues [d_i]_t.
inline DegreeSet invariant_degrees(const RootSystem& rs, const WeylGroup& g) {
    std::vector<Int> poincare(static_cast<size_t>(rs.n_pos) + 1, Int(0));
    for (const auto& e : g.elems) poincare[e.word.size()] += 1;
    std::vector<int> degrees;
    if (!detail::factor_poincare(poincare, rs.rank, degrees, 2))
        throw std::logic_error("Poincare polynomial failed to factor");
    return DegreeSet{degrees};
}

struct ConjugacyInfo {
    int canonical;   // element index with lexicographically minimal matrix
    int class_size;
};

inline ConjugacyInfo conjugacy_class_of(const WeylGroup& g, int w) {
    std::vector<bool> seen(g.size(), false);
    int best = w, count = 0;
    for (int x = 0; x < g.size(); ++x) {
        int c = g.conjugate(x, w);
        if (seen[c]) continue;
        seen[c] = true;
        ++count;
        if (matrix_lex_less(g.elems[c].matrix, g.elems[best].matrix)) best = c;
    }
    return {best, count};
}

} // namespace rvs

#endif
