#ifndef RVS_STRATA_HPP
#define RVS_STRATA_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "rvs/cyclotomic.hpp"
#include "rvs/matrix.hpp"
#include "rvs/rational.hpp"
#include "rvs/rootsys.hpp"

namespace rvs {

using QMat = Matrix<Rational>;
using CMat = Matrix<Cyclotomic>;

inline QMat to_rational(const IMat& m) {
    QMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

inline CMat to_cyclotomic(const QMat& m) {
    CMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Cyclotomic(m(i, j));
    return r;
}

inline int element_order(const WeylElement& w) {
    const int nr = static_cast<int>(w.perm.size());
    std::vector<int> p(nr);
    std::iota(p.begin(), p.end(), 0);
    bool ident = true;
    for (int i = 0; i < nr; ++i)
        if (w.perm[i] != i) { ident = false; break; }
    if (ident) return 1;
    std::vector<int> cur = w.perm;
    int n = 1;
    while (true) {
        ident = true;
        for (int i = 0; i < nr; ++i)
            if (cur[i] != i) { ident = false; break; }
        if (ident) return n;
        std::vector<int> next(nr);
        for (int i = 0; i < nr; ++i) next[i] = w.perm[cur[i]];
        cur = std::move(next);
        ++n;
    }
}

/// r: R -> Q>=0 stored per root index, in the root system's fixed order.
struct ValuationFunction {
    std::vector<Rational> values;

    Int lcd() const {
        Int l = 1;
        for (const auto& v : values) l = lcm_int(l, den(v));
        return l;
    }
    Rational max_value() const {
        Rational m(0);
        for (const auto& v : values) m = std::max(m, v);
        return m;
    }
    bool operator==(const ValuationFunction& o) const { return values == o.values; }
};

inline ValuationFunction constant_valuation(const RootSystem& rs, const Rational& v) {
    return ValuationFunction{std::vector<Rational>(rs.num_roots(), v)};
}

inline void validate_valuation(const RootSystem& rs, const ValuationFunction& r) {
    if (static_cast<int>(r.values.size()) != rs.num_roots())
        throw std::invalid_argument("valuation function has wrong length");
    for (const auto& v : r.values)
        if (v < 0) throw std::invalid_argument("valuation values must be non-negative");
}

/// The transported function xr, with (xr)(x alpha) = r(alpha).
inline ValuationFunction transport_valuation(const WeylElement& x, const ValuationFunction& r) {
    ValuationFunction out;
    out.values.resize(r.values.size());
    for (size_t i = 0; i < r.values.size(); ++i) out.values[x.perm[i]] = r.values[i];
    return out;
}

/// The decreasing chain of root subsets R_m = {alpha : r(alpha) >= m/l},
/// stored for m = 0..cutoff where R_cutoff is the first empty level.
struct LevelChain {
    int l;
    std::vector<std::vector<int>> sets;  // sets[m] = sorted root indices of R_m

    int cutoff() const { return static_cast<int>(sets.size()) - 1; }
};

inline LevelChain level_chain(const RootSystem& rs, const ValuationFunction& r, int l) {
    if (l < 1) throw std::invalid_argument("level denominator must be positive");
    LevelChain c;
    c.l = l;
    for (int m = 0;; ++m) {
        std::vector<int> s;
        for (int i = 0; i < rs.num_roots(); ++i)
            if (r.values[i] * l >= m) s.push_back(i);
        bool empty = s.empty();
        c.sets.push_back(std::move(s));
        if (empty) break;
    }
    return c;
}

/// S is Q-closed iff no root outside S lies in the Q-span of S.
inline bool is_q_closed(const RootSystem& rs, const std::vector<int>& s) {
    QMat rows(0, rs.rank);
    std::vector<bool> in_s(rs.num_roots(), false);
    for (int i : s) {
        in_s[i] = true;
        std::vector<Rational> row(rs.rank);
        for (int k = 0; k < rs.rank; ++k) row[k] = Rational(rs.roots_t[i][k]);
        rows.append_row(row);
    }
    Subspace<Rational> span(rows);
    for (int i = 0; i < rs.num_roots(); ++i) {
        if (in_s[i]) continue;
        std::vector<Rational> row(rs.rank);
        for (int k = 0; k < rs.rank; ++k) row[k] = Rational(rs.roots_t[i][k]);
        if (span.contains(row)) return false;
    }
    return true;
}

/// The increasing chain a_m = {u in t : alpha(u) = 0 for all alpha in R_m}.
struct SubspaceChain {
    std::vector<Subspace<Rational>> spaces;
};

inline SubspaceChain subspace_chain(const RootSystem& rs, const LevelChain& chain) {
    SubspaceChain out;
    for (const auto& s : chain.sets) {
        QMat rows(0, rs.rank);
        for (int i : s) {
            std::vector<Rational> row(rs.rank);
            for (int k = 0; k < rs.rank; ++k) row[k] = Rational(rs.roots_t[i][k]);
            rows.append_row(row);
        }
        if (rows.rows() == 0)
            out.spaces.push_back(Subspace<Rational>::full(rs.rank));
        else
            out.spaces.push_back(Subspace<Rational>(kernel(rows)));
    }
    return out;
}

namespace detail {

/// Complement vectors extending a basis of `small` to one of `big`.
inline QMat complement_in(const Subspace<Rational>& small, const Subspace<Rational>& big) {
    QMat acc = small.basis();
    int r = acc.rows();
    QMat comp(0, acc.cols());
    for (int i = 0; i < big.basis().rows(); ++i) {
        QMat trial = acc;
        trial.append_row(big.basis().row(i));
        if (rank(trial) > r) {
            acc.append_row(big.basis().row(i));
            comp.append_row(big.basis().row(i));
            ++r;
        }
    }
    return comp;
}

/// Matrix of the action induced by w on big/small, in the coordinates of
/// the given complement vectors. Throws if w does not stabilize the pair.
inline QMat induced_action(const QMat& w, const Subspace<Rational>& small, const QMat& comp) {
    int k = small.dim(), c = comp.rows(), n = comp.cols();
    QMat basis_t(n, k + c);  // columns = small basis then complement
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) basis_t(i, j) = small.basis()(j, i);
    for (int j = 0; j < c; ++j)
        for (int i = 0; i < n; ++i) basis_t(i, k + j) = comp(j, i);
    QMat action(c, c);
    for (int j = 0; j < c; ++j) {
        std::vector<Rational> img = w * comp.row(j);
        auto x = solve(basis_t, img);
        if (!x) throw std::logic_error("subspace pair not stable under w");
        for (int i = 0; i < c; ++i) action(i, j) = (*x)[k + i];
    }
    return action;
}

} // namespace detail

/// Everything known about one stratum (w, r): the four non-emptiness
/// conditions, the invariants delta_r, c_w, e(w,r), d(w,r), the resulting
/// codimension, and the stabilizer order when a group is available.
struct StratumReport {
    std::vector<int> w_word;
    std::vector<Rational> r_values;
    long long l = 1;  // order of w
    bool cond1 = false, cond2 = false, cond3 = false, cond4 = false;
    bool nonempty = false;
    Rational delta_r = Rational(0);
    int c_w = 0;
    Rational e_wr = Rational(0);
    long long d_wr = -1;
    long long codim = -1;
    long long stabilizer_order = 0;
};

/// delta_r = sum of r over all roots; c_w = dim t - dim t^w; e = (delta+c)/2.
inline std::tuple<Rational, int, Rational> delta_c_e(const RootSystem& rs, const WeylElement& w,
                                                     const ValuationFunction& r) {
    validate_valuation(rs, r);
    Rational delta(0);
    for (const auto& v : r.values) delta += v;
    QMat shifted = to_rational(w.matrix);
    for (int i = 0; i < rs.rank; ++i) shifted(i, i) -= 1;
    int c = rs.rank - kernel(shifted).rows();
    return {delta, c, (delta + c) / 2};
}

namespace detail {

/// dim of the zeta_l^{-j} eigenspace of the action induced by w on
/// big/small, and that eigenspace with the complement coordinates used.
struct QuotientEigen {
    QMat comp;
    Subspace<Cyclotomic> eigen;
};

inline QuotientEigen quotient_eigenspace(const QMat& w, const Subspace<Rational>& small,
                                         const Subspace<Rational>& big, int l, long j) {
    QuotientEigen out;
    out.comp = complement_in(small, big);
    if (out.comp.rows() == 0) {
        out.eigen = Subspace<Cyclotomic>::zero(0);
        return out;
    }
    CMat action = to_cyclotomic(induced_action(w, small, out.comp));
    out.eigen = eigenspace(action, Cyclotomic::zeta(l, -j));
    return out;
}

} // namespace detail

/// d(w,r) = sum over j of dim (t/a_{j+1})(w,j) at eigenvalue zeta_l^{-j}.
/// Requires wr = r (so that w stabilizes every a_m).
inline long long d_wr(const RootSystem& rs, const WeylElement& w, const ValuationFunction& r) {
    int l = element_order(w);
    LevelChain chain = level_chain(rs, r, l);
    SubspaceChain spaces = subspace_chain(rs, chain);
    QMat wm = to_rational(w.matrix);
    Subspace<Rational> full = Subspace<Rational>::full(rs.rank);
    long long d = 0;
    for (int j = 0; j + 1 <= chain.cutoff(); ++j) {
        const auto& a_next = spaces.spaces[j + 1];
        if (a_next.dim() == rs.rank) continue;
        d += detail::quotient_eigenspace(wm, a_next, full, l, j).eigen.dim();
    }
    return d;
}

/// Evaluates the four non-emptiness conditions for the stratum (w, r):
/// (1) all values lie in (1/l)Z for l = order(w); (2) every level set R_m
/// is Q-closed; (3) wr = r; (4) for each jump level j, the eigenvalue
/// zeta_l^{-j} eigenspace of w on a_{j+1}/a_j is not killed by any single
/// root in R_j \ R_{j+1}. Condition (4) is evaluated only when (1)-(3)
/// hold. Populates flags and the numeric invariants; d, codim and the
/// stabilizer are filled only for nonempty strata (see codim_stratum).
inline StratumReport is_nonempty(const RootSystem& rs, const WeylElement& w,
                                 const ValuationFunction& r) {
    validate_valuation(rs, r);
    StratumReport rep;
    rep.w_word = w.word;
    rep.r_values = r.values;
    int l = element_order(w);
    rep.l = l;

    rep.cond1 = true;
    for (const auto& v : r.values)
        if (!is_integer(v * l)) { rep.cond1 = false; break; }

    LevelChain chain = level_chain(rs, r, l);
    rep.cond2 = true;
    for (const auto& s : chain.sets)
        if (!is_q_closed(rs, s)) { rep.cond2 = false; break; }

    rep.cond3 = (transport_valuation(w, r) == r);

    auto [delta, c, e] = delta_c_e(rs, w, r);
    rep.delta_r = delta;
    rep.c_w = c;
    rep.e_wr = e;

    if (rep.cond1 && rep.cond2 && rep.cond3) {
        rep.cond4 = true;
        SubspaceChain spaces = subspace_chain(rs, chain);
        QMat wm = to_rational(w.matrix);
        for (int j = 0; j + 1 <= chain.cutoff() && rep.cond4; ++j) {
            std::vector<int> jump;
            std::set_difference(chain.sets[j].begin(), chain.sets[j].end(),
                                chain.sets[j + 1].begin(), chain.sets[j + 1].end(),
                                std::back_inserter(jump));
            if (jump.empty()) continue;
            auto qe = detail::quotient_eigenspace(wm, spaces.spaces[j], spaces.spaces[j + 1], l, j);
            for (int idx : jump) {
                std::vector<Cyclotomic> abar(qe.comp.rows());
                for (int k = 0; k < qe.comp.rows(); ++k) {
                    Rational v(0);
                    for (int t = 0; t < rs.rank; ++t)
                        v += Rational(rs.roots_t[idx][t]) * qe.comp(k, t);
                    abar[k] = Cyclotomic(v);
                }
                if (qe.eigen.dim() == 0 || functional_vanishes_on(abar, qe.eigen)) {
                    rep.cond4 = false;
                    break;
                }
            }
        }
    }
    rep.nonempty = rep.cond1 && rep.cond2 && rep.cond3 && rep.cond4;
    return rep;
}

/// Full report: flags, d(w,r), codim = d + e, and |W_{w,r}| computed
/// exhaustively inside the centralizer of w.
inline StratumReport codim_stratum(const RootSystem& rs, const WeylGroup& g, const WeylElement& w,
                                   const ValuationFunction& r) {
    StratumReport rep = is_nonempty(rs, w, r);
    if (!rep.nonempty) return rep;
    if (!is_integer(rep.e_wr))
        throw std::logic_error("non-integral e(w,r) on a nonempty stratum");
    rep.d_wr = d_wr(rs, w, r);
    rep.codim = rep.d_wr + static_cast<long long>(num(rep.e_wr));
    int wi = g.find(w.perm);
    long long stab = 0;
    for (int x : g.centralizer(wi))
        if (transport_valuation(g.elems[x], r) == r) ++stab;
    rep.stabilizer_order = stab;
    return rep;
}

/// w^m = 1 for m the least common denominator of r; must hold whenever the
/// stratum is nonempty.
inline bool order_divisibility_check(const WeylElement& w, const ValuationFunction& r) {
    Int m = r.lcd();
    return m % element_order(w) == 0;
}

/// w is regular iff some eigenspace t(w,j) with gcd(j,l) = 1 contains a
/// vector on which no root vanishes; over an infinite field this holds iff
/// no single root kills the whole eigenspace.
inline bool is_regular_element(const RootSystem& rs, const WeylElement& w) {
    int l = element_order(w);
    CMat wm = to_cyclotomic(to_rational(w.matrix));
    for (int j = 0; j < l; ++j) {
        if (std::gcd(j, l) != 1 && !(l == 1 && j == 0)) continue;
        Subspace<Cyclotomic> eig = eigenspace(wm, Cyclotomic::zeta(l, -j));
        if (eig.dim() == 0) continue;
        bool regular = true;
        for (int i = 0; i < rs.num_roots(); ++i) {
            std::vector<Cyclotomic> a(rs.rank);
            for (int k = 0; k < rs.rank; ++k) a[k] = Cyclotomic(Rational(rs.roots_t[i][k]));
            if (functional_vanishes_on(a, eig)) { regular = false; break; }
        }
        if (regular) return true;
    }
    return false;
}

/// The equivalued stratum r = a/b (lowest terms) is nonempty for w iff w is
/// regular of order exactly b.
inline bool equivalued_nonempty(const RootSystem& rs, const WeylElement& w, const Rational& ab) {
    if (ab < 0) throw std::invalid_argument("equivalued value must be non-negative");
    Int b = den(ab);
    return Int(element_order(w)) == b && is_regular_element(rs, w);
}

/// For w = 1 and both strata nonempty, codim(r + m) = codim(r) + m * sum d_i.
inline bool scaling_shift_check(const RootSystem& rs, const WeylGroup& g, const DegreeSet& degrees,
                                const ValuationFunction& r, long long m) {
    if (m < 0) throw std::invalid_argument("shift must be non-negative");
    WeylElement id = element_from_word(rs, {});
    StratumReport base = codim_stratum(rs, g, id, r);
    ValuationFunction shifted = r;
    for (auto& v : shifted.values) v += m;
    StratumReport moved = codim_stratum(rs, g, id, shifted);
    if (!base.nonempty || !moved.nonempty)
        throw std::invalid_argument("scaling shift requires nonempty strata");
    long long degsum = 0;
    for (int d : degrees.degrees) degsum += d;
    return moved.codim == base.codim + m * degsum;
}

/// All Q-closed subsets of R, as sorted index lists. Each Q-closed set is
/// the closure of at most rank-many positive roots, so closing all such
/// subsets and deduplicating is exhaustive.
inline std::vector<std::vector<int>> q_closed_subsets(const RootSystem& rs) {
    std::set<std::vector<int>> out;
    out.insert({});
    std::vector<int> pick;
    auto close = [&](const std::vector<int>& gens) {
        QMat rows(0, rs.rank);
        for (int i : gens) {
            std::vector<Rational> row(rs.rank);
            for (int k = 0; k < rs.rank; ++k) row[k] = Rational(rs.roots_t[i][k]);
            rows.append_row(row);
        }
        Subspace<Rational> span(rows);
        std::vector<int> s;
        for (int i = 0; i < rs.num_roots(); ++i) {
            std::vector<Rational> row(rs.rank);
            for (int k = 0; k < rs.rank; ++k) row[k] = Rational(rs.roots_t[i][k]);
            if (span.contains(row)) s.push_back(i);
        }
        out.insert(std::move(s));
    };
    std::function<void(int)> rec = [&](int next) {
        if (!pick.empty()) close(pick);
        if (static_cast<int>(pick.size()) == rs.rank) return;
        for (int i = next; i < rs.n_pos; ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return {out.begin(), out.end()};
}

/// One canonical report per W-orbit of nonempty strata with
/// delta_r <= max_delta and denominator <= max_denominator. Candidate r
/// come from decreasing chains of Q-closed subsets with assigned jump
/// levels; canonical form minimizes (conjugated matrix, transported r).
inline std::vector<StratumReport> enumerate_strata(const RootSystem& rs, const WeylGroup& g,
                                                   const Rational& max_delta,
                                                   int max_denominator) {
    if (max_delta < 0 || max_denominator < 1)
        throw std::invalid_argument("bad enumeration bounds");
    std::vector<std::vector<int>> closed = q_closed_subsets(rs);

    std::vector<ValuationFunction> candidates;
    std::set<std::vector<Rational>> seen_r;
    for (int l = 1; l <= max_denominator; ++l) {
        // Chains S_1 >= S_2 >= ... of Q-closed sets; r(alpha) = #{m : alpha
        // in S_m}/l; delta = (sum of level sizes)/l.
        Rational budget = max_delta * l;
        std::vector<const std::vector<int>*> chain;
        std::function<void(const std::vector<int>&, Rational)> rec =
            [&](const std::vector<int>& prev, Rational used) {
                // Emit the chain as it stands (levels below are empty).
                ValuationFunction r;
                r.values.assign(rs.num_roots(), Rational(0));
                for (const auto* s : chain)
                    for (int i : *s) r.values[i] += Rational(1, l);
                if (r.lcd() == l && seen_r.insert(r.values).second) candidates.push_back(r);
                for (const auto& s : closed) {
                    if (s.empty()) continue;
                    if (used + static_cast<int>(s.size()) > budget) continue;
                    if (!std::includes(prev.begin(), prev.end(), s.begin(), s.end())) continue;
                    chain.push_back(&s);
                    rec(s, used + static_cast<int>(s.size()));
                    chain.pop_back();
                }
            };
        std::vector<int> all(rs.num_roots());
        std::iota(all.begin(), all.end(), 0);
        rec(all, Rational(0));
    }

    // Pair candidates with Weyl elements; keep one canonical (w, r) per
    // orbit, keyed by the lexicographically minimal (matrix, values) pair.
    std::map<std::pair<std::vector<long long>, std::vector<Rational>>, std::pair<int, ValuationFunction>>
        orbits;
    for (const auto& r : candidates) {
        Int lcd = r.lcd();
        for (int wi = 0; wi < g.size(); ++wi) {
            if (Int(g.order_of(wi)) % lcd != 0) continue;
            StratumReport rep = is_nonempty(rs, g.elems[wi], r);
            if (!rep.nonempty) continue;
            std::pair<std::vector<long long>, std::vector<Rational>> best;
            int best_w = -1;
            ValuationFunction best_r;
            for (int x = 0; x < g.size(); ++x) {
                int cw = g.conjugate(x, wi);
                ValuationFunction cr = transport_valuation(g.elems[x], r);
                std::pair<std::vector<long long>, std::vector<Rational>> key{
                    g.elems[cw].matrix.data(), cr.values};
                if (best_w < 0 || key < best) {
                    best = std::move(key);
                    best_w = cw;
                    best_r = std::move(cr);
                }
            }
            orbits.emplace(best, std::make_pair(best_w, best_r));
        }
    }
    std::vector<StratumReport> out;
    for (const auto& [key, val] : orbits)
        out.push_back(codim_stratum(rs, g, g.elems[val.first], val.second));
    return out;
}

} // namespace rvs

#endif
