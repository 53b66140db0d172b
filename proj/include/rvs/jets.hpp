#ifndef RVS_JETS_HPP
#define RVS_JETS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvs/gf.hpp"
#include "rvs/rootsys.hpp"
#include "rvs/series.hpp"
#include "rvs/strata.hpp"

namespace rvs {

/// Everything needed to work with jets of the w-twisted torus at
/// truncation N (in eps units) over a fixed prime field: the eigenspace
/// bases t(w,j) mod p for all residues j, and the w matrix mod p.
struct JetContext {
    const RootSystem* rs = nullptr;
    WeylElement w;
    JetField field;
    int N = 0;
    FpMat wmat;
    std::vector<FpMat> eig;  // eig[j]: row basis of t(w,j) over F_p

    int l() const { return field.l; }
    int coeff_count() const { return N * field.l; }
    int eig_dim(int j) const { return static_cast<int>(eig[j % field.l].size()); }
};

inline uint32_t fp_from_ll(long long v, uint32_t p) {
    long long m = v % static_cast<long long>(p);
    if (m < 0) m += p;
    return static_cast<uint32_t>(m);
}

inline JetContext make_jet_context(const RootSystem& rs, const WeylElement& w, int N,
                                   const JetField& field) {
    if (N < 1) throw std::invalid_argument("truncation must be positive");
    int l = element_order(w);
    if (field.l != l) throw std::invalid_argument("field root-of-unity order != order(w)");
    JetContext ctx;
    ctx.rs = &rs;
    ctx.w = w;
    ctx.field = field;
    ctx.N = N;
    int n = rs.rank;
    uint32_t p = field.p;
    ctx.wmat.assign(n, FpVec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ctx.wmat[i][j] = fp_from_ll(w.matrix(i, j), p);
    int total = 0;
    for (int j = 0; j < l; ++j) {
        FpMat shifted = ctx.wmat;
        uint32_t lambda = fp_pow(field.zeta, ((-j) % l + l) % l, p);
        for (int i = 0; i < n; ++i) shifted[i][i] = fp_sub(shifted[i][i], lambda, p);
        ctx.eig.push_back(fp_kernel(shifted, p, n));
        total += static_cast<int>(ctx.eig.back().size());
    }
    if (total != n) throw std::logic_error("eigenspace dimensions do not sum to rank");
    return ctx;
}

/// A jet of the twisted torus: u = sum_j u_j eps_E^j with u_j in t(w, j mod l),
/// stored as t-coordinate vectors over F_p for 0 <= j < N*l.
struct JetPoint {
    std::vector<FpVec> u;

    bool operator==(const JetPoint& o) const { return u == o.u; }
};

inline void validate_jet(const JetContext& ctx, const JetPoint& u) {
    if (static_cast<int>(u.u.size()) != ctx.coeff_count())
        throw std::invalid_argument("jet has wrong coefficient count");
    for (int j = 0; j < ctx.coeff_count(); ++j)
        if (!fp_in_span(ctx.eig[j % ctx.l()], u.u[j], ctx.field.p))
            throw std::invalid_argument("jet coefficient outside eigenspace");
}

/// The n coordinate series of a jet (eps_E powers, truncated at N*l).
inline std::vector<FSeries> jet_coordinates(const JetContext& ctx, const JetPoint& u) {
    int n = ctx.rs->rank, t = ctx.coeff_count();
    std::vector<FSeries> x(n, FSeries(ctx.field.p, ctx.l(), t));
    for (int j = 0; j < t; ++j)
        for (int k = 0; k < n; ++k) x[k].set_coeff(j, u.u[j][k]);
    return x;
}

inline JetPoint jet_from_coordinates(const JetContext& ctx, const std::vector<FSeries>& x) {
    JetPoint u;
    u.u.assign(ctx.coeff_count(), FpVec(ctx.rs->rank, 0));
    for (int j = 0; j < ctx.coeff_count(); ++j)
        for (int k = 0; k < ctx.rs->rank; ++k) u.u[j][k] = x[k].coeff(j);
    validate_jet(ctx, u);
    return u;
}

/// alpha(u) as a series, for the root with the given index.
inline FSeries root_value(const JetContext& ctx, const JetPoint& u, int root_idx) {
    FSeries s(ctx.field.p, ctx.l(), ctx.coeff_count());
    const IVec& a = ctx.rs->roots_t[root_idx];
    for (int j = 0; j < ctx.coeff_count(); ++j) {
        uint32_t v = 0;
        for (int k = 0; k < ctx.rs->rank; ++k)
            v = fp_add(v, fp_mul(fp_from_ll(a[k], ctx.field.p), u.u[j][k], ctx.field.p),
                       ctx.field.p);
        s.set_coeff(j, v);
    }
    return s;
}

/// True iff val alpha(u) = r(alpha) for every root. Requires r(alpha) < N.
inline bool stratum_membership(const JetContext& ctx, const JetPoint& u,
                               const ValuationFunction& r) {
    validate_valuation(*ctx.rs, r);
    for (int i = 0; i < ctx.rs->num_roots(); ++i) {
        Rational target = r.values[i] * ctx.l();
        if (!is_integer(target) || r.values[i] >= ctx.N)
            throw std::invalid_argument("r incompatible with this truncation/order");
        if (root_value(ctx, u, i).valuation() != static_cast<int>(num(target))) return false;
    }
    return true;
}

namespace detail {

/// All q^rank vectors of the row span of a reduced basis.
inline std::vector<FpVec> span_vectors(const FpMat& basis, uint32_t p, int n) {
    std::vector<FpVec> out{FpVec(n, 0)};
    for (const auto& b : basis) {
        std::vector<FpVec> next;
        next.reserve(out.size() * p);
        for (const auto& v : out)
            for (uint32_t c = 0; c < p; ++c) {
                FpVec x = v;
                for (int k = 0; k < n; ++k) x[k] = fp_add(x[k], fp_mul(c, b[k], p), p);
                next.push_back(std::move(x));
            }
        out = std::move(next);
    }
    return out;
}

/// Per-index data for stratum enumeration at level j (eps_E units):
/// basis of t(w, j mod l) ∩ a_{j+1} and the vectors passing the sharp
/// filter (alpha != 0 for alpha in R_j \ R_{j+1}).
struct LevelVectors {
    FpMat closure_basis;
    std::vector<FpVec> sharp;
};

inline std::vector<LevelVectors> stratum_level_vectors(const JetContext& ctx,
                                                       const ValuationFunction& r) {
    const RootSystem& rs = *ctx.rs;
    uint32_t p = ctx.field.p;
    int n = rs.rank, l = ctx.l();
    LevelChain chain = level_chain(rs, r, l);
    auto set_at = [&](int m) -> const std::vector<int>& {
        static const std::vector<int> empty;
        return m <= chain.cutoff() ? chain.sets[m] : empty;
    };
    std::vector<LevelVectors> out;
    for (int j = 0; j < ctx.coeff_count(); ++j) {
        LevelVectors lv;
        // t(w, j mod l) ∩ a_{j+1}: stack the eigenspace constraint and the
        // covectors of R_{j+1}.
        FpMat stacked = ctx.wmat;
        uint32_t lambda = fp_pow(ctx.field.zeta, ((-j) % l + l) % l, p);
        for (int i = 0; i < n; ++i) stacked[i][i] = fp_sub(stacked[i][i], lambda, p);
        for (int idx : set_at(j + 1)) {
            FpVec row(n);
            for (int k = 0; k < n; ++k) row[k] = fp_from_ll(rs.roots_t[idx][k], p);
            stacked.push_back(std::move(row));
        }
        lv.closure_basis = fp_kernel(stacked, p, n);
        std::vector<int> jump;
        std::set_difference(set_at(j).begin(), set_at(j).end(), set_at(j + 1).begin(),
                            set_at(j + 1).end(), std::back_inserter(jump));
        for (auto& v : span_vectors(lv.closure_basis, p, n)) {
            bool ok = true;
            for (int idx : jump) {
                uint32_t val = 0;
                for (int k = 0; k < n; ++k)
                    val = fp_add(val, fp_mul(fp_from_ll(rs.roots_t[idx][k], p), v[k], p), p);
                if (val == 0) { ok = false; break; }
            }
            if (ok) lv.sharp.push_back(std::move(v));
        }
        out.push_back(std::move(lv));
    }
    return out;
}

inline void product_enumerate(const std::vector<std::vector<FpVec>>& choices,
                              const std::function<void(const JetPoint&)>& cb) {
    JetPoint u;
    u.u.assign(choices.size(), {});
    std::function<void(size_t)> rec = [&](size_t j) {
        if (j == choices.size()) { cb(u); return; }
        for (const auto& v : choices[j]) {
            u.u[j] = v;
            rec(j + 1);
        }
    };
    rec(0);
}

} // namespace detail

/// Streams exactly the F_q-points of the stratum (w,r) at truncation N.
/// Requires r(alpha) < N. Throws CapExceeded if the count exceeds cap.
inline void enumerate_stratum_jets(const JetContext& ctx, const ValuationFunction& r,
                                   const std::function<void(const JetPoint&)>& cb,
                                   unsigned long long cap = 1u << 24) {
    validate_valuation(*ctx.rs, r);
    if (r.max_value() >= ctx.N) throw std::invalid_argument("truncation too small for r");
    auto levels = detail::stratum_level_vectors(ctx, r);
    unsigned long long count = 1;
    std::vector<std::vector<FpVec>> choices;
    for (auto& lv : levels) {
        if (lv.sharp.empty()) return;  // empty stratum at this level
        count *= lv.sharp.size();
        if (count > cap) throw CapExceeded("stratum jet enumeration over cap");
        choices.push_back(std::move(lv.sharp));
    }
    detail::product_enumerate(choices, cb);
}

/// Streams the closure points {u : val alpha(u) >= r(alpha)}.
inline void enumerate_closure_jets(const JetContext& ctx, const ValuationFunction& r,
                                   const std::function<void(const JetPoint&)>& cb,
                                   unsigned long long cap = 1u << 24) {
    validate_valuation(*ctx.rs, r);
    if (r.max_value() >= ctx.N) throw std::invalid_argument("truncation too small for r");
    auto levels = detail::stratum_level_vectors(ctx, r);
    unsigned long long count = 1;
    std::vector<std::vector<FpVec>> choices;
    for (auto& lv : levels) {
        auto all = detail::span_vectors(lv.closure_basis, ctx.field.p, ctx.rs->rank);
        count *= all.size();
        if (count > cap) throw CapExceeded("closure jet enumeration over cap");
        choices.push_back(std::move(all));
    }
    detail::product_enumerate(choices, cb);
}

/// Streams all jets of t_w at truncation N (no valuation constraint).
inline void enumerate_twisted_jets(const JetContext& ctx,
                                   const std::function<void(const JetPoint&)>& cb,
                                   unsigned long long cap = 1u << 24) {
    unsigned long long count = 1;
    std::vector<std::vector<FpVec>> choices;
    for (int j = 0; j < ctx.coeff_count(); ++j) {
        auto all = detail::span_vectors(ctx.eig[j % ctx.l()], ctx.field.p, ctx.rs->rank);
        count *= all.size();
        if (count > cap) throw CapExceeded("twisted jet enumeration over cap");
        choices.push_back(std::move(all));
    }
    detail::product_enumerate(choices, cb);
}

namespace detail {

/// Elementary symmetric polynomials e_1..e_max of the given series.
inline std::vector<FSeries> elementary_symmetric(const std::vector<FSeries>& x, int max_k) {
    FSeries zero = x.at(0) - x.at(0);
    std::vector<FSeries> e(max_k + 1, zero);
    e[0] = FSeries::monomial(x[0].p(), x[0].l(), x[0].trunc(), 0, 1);
    for (const auto& xi : x)
        for (int k = max_k; k >= 1; --k) e[k] = e[k] + e[k - 1] * xi;
    return e;
}

} // namespace detail

/// Ambient coordinate series of a jet (type A gains one extra coordinate).
inline std::vector<FSeries> ambient_coordinates(const JetContext& ctx,
                                                const std::vector<FSeries>& x) {
    const RootSystem& rs = *ctx.rs;
    std::vector<FSeries> amb(rs.ambient_dim, FSeries(ctx.field.p, ctx.l(), ctx.coeff_count()));
    for (int a = 0; a < rs.ambient_dim; ++a)
        for (int k = 0; k < rs.rank; ++k)
            amb[a] = amb[a] + x[k].scaled(fp_from_ll(rs.t_basis(k, a), ctx.field.p));
    return amb;
}

/// Basic invariants on ambient series: type A uses e_2..e_{n+1} of the
/// n+1 coordinates; B/C use e_1..e_n of the squared coordinates; D uses
/// e_1..e_{n-1} of the squares followed by the coordinate product.
inline std::vector<FSeries> invariants_on_series(char type, int rank,
                                                 const std::vector<FSeries>& amb) {
    std::vector<FSeries> out;
    if (type == 'A') {
        auto e = detail::elementary_symmetric(amb, rank + 1);
        for (int k = 2; k <= rank + 1; ++k) out.push_back(e[k]);
    } else if (type == 'B' || type == 'C' || type == 'D') {
        std::vector<FSeries> sq;
        for (const auto& a : amb) sq.push_back(a * a);
        int top = (type == 'D') ? rank - 1 : rank;
        auto e = detail::elementary_symmetric(sq, top);
        for (int k = 1; k <= top; ++k) out.push_back(e[k]);
        if (type == 'D') {
            FSeries prod = FSeries::monomial(amb[0].p(), amb[0].l(), amb[0].trunc(), 0, 1);
            for (const auto& a : amb) prod = prod * a;
            out.push_back(prod);
        }
    } else {
        throw std::invalid_argument("invariants implemented for classical types only");
    }
    return out;
}

/// f_w(u): evaluates the basic invariants and re-indexes to integral eps
/// powers, asserting every fractional-power coefficient vanishes.
inline std::vector<FSeries> apply_invariants(const JetContext& ctx, const JetPoint& u) {
    auto vals = invariants_on_series(ctx.rs->type, ctx.rs->rank,
                                     ambient_coordinates(ctx, jet_coordinates(ctx, u)));
    int l = ctx.l();
    std::vector<FSeries> out;
    for (const auto& v : vals) {
        FSeries s(ctx.field.p, 1, ctx.N);
        for (int k = 0; k < v.trunc(); ++k) {
            if (k % l != 0) {
                if (v.coeff(k) != 0)
                    throw std::logic_error("fractional-power residue in invariant value");
                continue;
            }
            s.set_coeff(k / l, v.coeff(k));
        }
        out.push_back(std::move(s));
    }
    return out;
}

/// The differential of the invariant map at u, as an n x n matrix of
/// series: entry (k,m) = d f_k / d t_m, via symbolic partials of the
/// classical invariants and the chain rule through the ambient basis.
inline std::vector<std::vector<FSeries>> jet_differential_at(const JetContext& ctx,
                                                             const std::vector<FSeries>& x) {
    const RootSystem& rs = *ctx.rs;
    int n = rs.rank, na = rs.ambient_dim;
    auto amb = ambient_coordinates(ctx, x);
    FSeries zero(ctx.field.p, ctx.l(), ctx.coeff_count());

    // partial[k][a] = d f_k / d x_a on ambient coordinates.
    std::vector<std::vector<FSeries>> partial(n, std::vector<FSeries>(na, zero));
    if (rs.type == 'A') {
        for (int a = 0; a < na; ++a) {
            std::vector<FSeries> rest;
            for (int b = 0; b < na; ++b)
                if (b != a) rest.push_back(amb[b]);
            auto e = detail::elementary_symmetric(rest, n);
            for (int k = 0; k < n; ++k) partial[k][a] = e[k + 1];  // d e_{k+2} / d x_a
        }
    } else if (rs.type == 'B' || rs.type == 'C' || rs.type == 'D') {
        std::vector<FSeries> sq;
        for (const auto& a : amb) sq.push_back(a * a);
        int top = (rs.type == 'D') ? n - 1 : n;
        for (int a = 0; a < na; ++a) {
            std::vector<FSeries> rest;
            for (int b = 0; b < na; ++b)
                if (b != a) rest.push_back(sq[b]);
            auto e = detail::elementary_symmetric(rest, top);
            for (int k = 0; k < top; ++k)
                partial[k][a] = e[k].scaled(2) * amb[a];  // d e_{k+1}(x^2) / d x_a
        }
        if (rs.type == 'D') {
            for (int a = 0; a < na; ++a) {
                FSeries prod = FSeries::monomial(ctx.field.p, ctx.l(), ctx.coeff_count(), 0, 1);
                for (int b = 0; b < na; ++b)
                    if (b != a) prod = prod * amb[b];
                partial[n - 1][a] = prod;
            }
        }
    } else {
        throw std::invalid_argument("differential implemented for classical types only");
    }

    std::vector<std::vector<FSeries>> jac(n, std::vector<FSeries>(n, zero));
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
            for (int a = 0; a < na; ++a)
                jac[k][m] = jac[k][m] + partial[k][a].scaled(fp_from_ll(rs.t_basis(m, a),
                                                                        ctx.field.p));
    return jac;
}

inline std::vector<std::vector<FSeries>> jet_differential(const JetContext& ctx,
                                                          const JetPoint& u) {
    return jet_differential_at(ctx, jet_coordinates(ctx, u));
}

/// Determinant of a small matrix of series by cofactor expansion.
inline FSeries series_det(const std::vector<std::vector<FSeries>>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    FSeries acc = m[0][0] - m[0][0];
    for (size_t c = 0; c < n; ++c) {
        std::vector<std::vector<FSeries>> minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<FSeries> row;
            for (size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[i][j]);
            minor.push_back(std::move(row));
        }
        FSeries term = m[0][c] * series_det(minor);
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

/// val det(df)_u in eps units; nullopt when the valuation is >= N, i.e.
/// the truncation cannot exhibit the leading term. The determinant is
/// taken in O-module coordinates of the twisted lattice, whose basis
/// vectors carry eps_E^j on the t(w,j) block; this multiplies the
/// t-coordinate determinant by eps_E^{sum_j j dim t(w,j)}.
inline std::optional<Rational> jacobian_valuation(const JetContext& ctx, const JetPoint& u) {
    FSeries det = series_det(jet_differential(ctx, u));
    int shift = 0;
    for (int j = 0; j < ctx.l(); ++j) shift += j * ctx.eig_dim(j);
    int v = det.valuation();
    if (v == FSeries::INF || v + shift >= ctx.coeff_count()) return std::nullopt;
    return Rational(v + shift, ctx.l());
}

struct HenselOutcome {
    bool ok = false;
    std::vector<FSeries> x;
    int iterations = 0;
    std::string reason;
};

/// Successive approximation: starting from x0 with finite d = val det D_{x0}
/// and M > d (both in eps_E index units), solves f(x) = y exactly at the
/// working truncation with x ≡ x0 mod eps_E^M, or reports why it cannot:
/// the first correction having valuation < M certifies that y lies outside
/// the reachable coset f(x0) + D_{x0} eps_E^M L.
template <typename Fn, typename DFn>
HenselOutcome hensel_solve(Fn&& f, DFn&& df, std::vector<FSeries> x0,
                           const std::vector<FSeries>& y, int m_idx) {
    HenselOutcome out;
    size_t n = x0.size();
    int trunc = x0[0].trunc();
    {
        FSeries det0 = series_det(df(x0));
        int d = det0.valuation();
        if (d == FSeries::INF || d >= trunc) {
            out.reason = "singular differential at x0";
            return out;
        }
        if (m_idx <= d) {
            out.reason = "M must exceed val det of the differential";
            return out;
        }
    }
    std::vector<FSeries> x = x0;
    int last_defect_val = -1;
    for (int it = 0; it <= trunc + 1; ++it) {
        std::vector<FSeries> fx = f(x);
        bool done = true;
        int defect_val = FSeries::INF;
        std::vector<FSeries> defect;
        for (size_t i = 0; i < n; ++i) {
            defect.push_back(y[i] - fx[i]);
            if (!defect.back().is_zero()) done = false;
            defect_val = std::min(defect_val, defect.back().valuation());
        }
        if (done) {
            out.ok = true;
            out.x = std::move(x);
            out.iterations = it;
            return out;
        }
        if (defect_val <= last_defect_val) {
            out.reason = "no progress in defect valuation";
            return out;
        }
        last_defect_val = defect_val;
        // Solve D h = defect by Cramer's rule at the current point.
        auto d_mat = df(x);
        FSeries det = series_det(d_mat);
        int hval = FSeries::INF;
        std::vector<FSeries> h;
        try {
            for (size_t i = 0; i < n; ++i) {
                auto col = d_mat;
                for (size_t r = 0; r < n; ++r) col[r][i] = defect[r];
                h.push_back(divide(series_det(col), det));
                hval = std::min(hval, h.back().valuation());
            }
        } catch (const std::domain_error&) {
            out.reason = "defect not in the image of the differential";
            return out;
        }
        if (it == 0 && hval < m_idx) {
            out.reason = "target outside the reachable coset";
            return out;
        }
        for (size_t i = 0; i < n; ++i) x[i] = x[i] + h[i];
    }
    out.reason = "iteration limit exceeded";
    return out;
}

/// One affine piece of a jet fiber: base + the F_q-kernel of the action of
/// the differential on eps^{N-e} L / eps^N L.
struct FiberPiece {
    JetPoint base;
    FpMat kernel_basis;  // rows = flattened high-coefficient vectors
    int kernel_dim = 0;
    int tail_start = 0;  // first eps_E index the kernel rows perturb
};

namespace detail {

/// Flattened coefficient dimensions of the jet tail [start, N*l).
inline int tail_dims(const JetContext& ctx, int start) {
    int d = 0;
    for (int j = start; j < ctx.coeff_count(); ++j) d += ctx.eig_dim(j);
    return d;
}

inline JetPoint perturb_jet(const JetContext& ctx, const JetPoint& base, int start,
                            const FpVec& flat) {
    JetPoint u = base;
    int pos = 0;
    for (int j = start; j < ctx.coeff_count(); ++j) {
        const FpMat& basis = ctx.eig[j % ctx.l()];
        for (const auto& b : basis) {
            uint32_t c = flat[pos++];
            if (c)
                for (int k = 0; k < ctx.rs->rank; ++k)
                    u.u[j][k] = fp_add(u.u[j][k], fp_mul(c, b[k], ctx.field.p), ctx.field.p);
        }
    }
    return u;
}

} // namespace detail

/// The fiber of the level-N invariant map over y, inside the stratum
/// (w, r): exact solutions are produced by Hensel lifting seeds enumerated
/// at truncation N - e, and each solution carries its affine piece
/// base + eps^{N-e} ker(D). Requires N > 2e.
inline std::vector<FiberPiece> fiber_pieces(const JetContext& ctx, const ValuationFunction& r,
                                            const std::vector<FSeries>& y,
                                            unsigned long long cap = 1u << 24) {
    const RootSystem& rs = *ctx.rs;
    auto [delta, c, e_rat] = delta_c_e(rs, ctx.w, r);
    if (!is_integer(e_rat)) throw std::invalid_argument("non-integral e for this (w,r)");
    int e = static_cast<int>(num(e_rat));
    int n_trunc = ctx.N;
    if (n_trunc < 2 * e) throw std::invalid_argument("need N >= 2e for fiber pieces");
    int l = ctx.l();
    int m_idx = (n_trunc - e) * l;
    // Seeds live at truncation N - e when that exceeds e (so the Hensel
    // modulus beats val det); at the boundary N = 2e they must already be
    // exact one level deeper.
    int seed_n = e > 0 ? std::max(n_trunc - e, e + 1) : n_trunc;
    int hensel_m = seed_n * l;
    uint32_t p = ctx.field.p;

    // Lift y (integral powers, trunc >= N) to eps_E indexing at trunc N*l.
    std::vector<FSeries> ye;
    for (const auto& s : y) {
        FSeries t(p, l, ctx.coeff_count());
        for (int k = 0; k * l < ctx.coeff_count(); ++k) t.set_coeff(k * l, s.coeff(k));
        ye.push_back(std::move(t));
    }

    auto f = [&](const std::vector<FSeries>& x) {
        return invariants_on_series(rs.type, rs.rank, ambient_coordinates(ctx, x));
    };
    auto df = [&](const std::vector<FSeries>& x) { return jet_differential_at(ctx, x); };

    // Seeds: stratum points at the seed truncation, zero-extended.
    JetContext seed_ctx = make_jet_context(rs, ctx.w, seed_n, ctx.field);
    std::vector<JetPoint> seeds;
    enumerate_stratum_jets(seed_ctx, r, [&](const JetPoint& s) { seeds.push_back(s); }, cap);

    std::vector<FiberPiece> pieces;
    for (const auto& seed : seeds) {
        JetPoint x0 = seed;
        x0.u.resize(ctx.coeff_count(), FpVec(rs.rank, 0));
        auto sol = hensel_solve(f, df, jet_coordinates(ctx, x0), ye, hensel_m);
        if (!sol.ok) continue;
        JetPoint x = jet_from_coordinates(ctx, sol.x);

        // Kernel of v -> D_x v on the tail eps_E^{m_idx} .. eps_E^{Nl - 1}.
        int dims = detail::tail_dims(ctx, m_idx);
        auto jac = jet_differential(ctx, x);
        FpMat equations;  // rows: output coefficients, columns: input dims
        int out_dims = rs.rank * e;  // integral indices N-e .. N-1 per output
        equations.assign(out_dims, FpVec(dims, 0));
        int col = 0;
        for (int j = m_idx; j < ctx.coeff_count(); ++j) {
            for (const auto& b : ctx.eig[j % l]) {
                // image of the basis perturbation eps_E^j * b
                for (int out = 0; out < rs.rank; ++out) {
                    FSeries img(p, l, ctx.coeff_count());
                    for (int k = 0; k < rs.rank; ++k)
                        img = img + jac[out][k].shifted(j).scaled(b[k]);
                    for (int m = n_trunc - e; m < n_trunc; ++m)
                        equations[static_cast<size_t>(out) * e + (m - (n_trunc - e))][col] =
                            img.coeff(m * l);
                }
                ++col;
            }
        }
        FpMat ker = fp_kernel(equations, p, dims);

        // Same piece as one already found?
        bool dup = false;
        for (const auto& prev : pieces) {
            if (prev.kernel_basis != ker) continue;
            FpVec diff;
            bool low_equal = true;
            for (int j = 0; j < m_idx && low_equal; ++j)
                if (prev.base.u[j] != x.u[j]) low_equal = false;
            if (!low_equal) continue;
            for (int j = m_idx; j < ctx.coeff_count(); ++j) {
                // express the difference in eigenspace coordinates
                FpMat sys = ctx.eig[j % l];
                FpVec target(rs.rank);
                for (int k = 0; k < rs.rank; ++k)
                    target[k] = fp_sub(x.u[j][k], prev.base.u[j][k], p);
                // solve coords * basis = target; basis rows are echelon
                FpVec coords(sys.size(), 0);
                FpVec rem = target;
                for (size_t b = 0; b < sys.size(); ++b) {
                    int lead = -1;
                    for (size_t kk = 0; kk < sys[b].size(); ++kk)
                        if (sys[b][kk]) { lead = static_cast<int>(kk); break; }
                    coords[b] = rem[lead];
                    for (size_t kk = 0; kk < sys[b].size(); ++kk)
                        rem[kk] = fp_sub(rem[kk], fp_mul(coords[b], sys[b][kk], p), p);
                }
                diff.insert(diff.end(), coords.begin(), coords.end());
            }
            if (fp_in_span(ker, diff, p)) { dup = true; break; }
        }
        if (dup) continue;
        FiberPiece piece;
        piece.base = x;
        piece.kernel_basis = ker;
        piece.kernel_dim = static_cast<int>(ker.size());
        piece.tail_start = m_idx;
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

/// All points of a fiber piece, by enumerating the kernel.
inline std::vector<JetPoint> piece_points(const JetContext& ctx, const FiberPiece& piece) {
    int dims = detail::tail_dims(ctx, piece.tail_start);
    std::vector<JetPoint> out;
    for (const auto& flat : detail::span_vectors(piece.kernel_basis, ctx.field.p, dims))
        out.push_back(detail::perturb_jet(ctx, piece.base, piece.tail_start, flat));
    return out;
}

} // namespace rvs

#endif
