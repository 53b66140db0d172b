#ifndef RVS_GF_HPP
#define RVS_GF_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rvs/rational.hpp"

namespace rvs {

inline uint32_t fp_add(uint32_t a, uint32_t b, uint32_t p) {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
}
inline uint32_t fp_sub(uint32_t a, uint32_t b, uint32_t p) { return a >= b ? a - b : a + p - b; }
inline uint32_t fp_neg(uint32_t a, uint32_t p) { return a ? p - a : 0; }
inline uint32_t fp_mul(uint32_t a, uint32_t b, uint32_t p) {
    return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
}
inline uint32_t fp_pow(uint32_t a, uint64_t e, uint32_t p) {
    uint32_t acc = 1 % p;
    while (e) {
        if (e & 1) acc = fp_mul(acc, a, p);
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    return acc;
}
inline uint32_t fp_inv(uint32_t a, uint32_t p) {
    if (a == 0) throw std::domain_error("division by zero in F_p");
    return fp_pow(a, p - 2, p);
}
/// Reduce a rational with denominator prime to p into F_p.
inline uint32_t fp_from_rational(const Rational& q, uint32_t p) {
    Int n = num(q) % p, d = den(q) % p;
    if (n < 0) n += p;
    if (d == 0) throw std::domain_error("denominator divisible by p");
    return fp_mul(static_cast<uint32_t>(n), fp_inv(static_cast<uint32_t>(d), p), p);
}

using FpVec = std::vector<uint32_t>;
using FpMat = std::vector<FpVec>;

/// Reduced row echelon form in place over F_p; returns the rank.
inline int fp_rref(FpMat& m, uint32_t p) {
    if (m.empty()) return 0;
    int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i)
            if (m[i][col]) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(m[pivot], m[rank]);
        uint32_t inv = fp_inv(m[rank][col], p);
        for (int j = col; j < cols; ++j) m[rank][j] = fp_mul(m[rank][j], inv, p);
        for (int i = 0; i < rows; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            uint32_t f = m[i][col];
            for (int j = col; j < cols; ++j)
                m[i][j] = fp_sub(m[i][j], fp_mul(f, m[rank][j], p), p);
        }
        ++rank;
    }
    return rank;
}

/// Row basis (reduced echelon) of {v : M v = 0} over F_p.
inline FpMat fp_kernel(FpMat m, uint32_t p, int cols) {
    int r = fp_rref(m, p);
    std::vector<int> pivot_col;
    std::vector<bool> is_pivot(cols, false);
    for (int i = 0, col = 0; i < r; ++i) {
        while (col < cols && m[i][col] == 0) ++col;
        pivot_col.push_back(col);
        is_pivot[col] = true;
    }
    FpMat ker;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        FpVec v(cols, 0);
        v[free] = 1;
        for (int i = 0; i < r; ++i) v[pivot_col[i]] = fp_neg(m[i][free], p);
        ker.push_back(std::move(v));
    }
    fp_rref(ker, p);
    return ker;
}

/// True iff v lies in the row span of the reduced-echelon basis `rows`.
inline bool fp_in_span(const FpMat& rows, FpVec v, uint32_t p) {
    for (const auto& b : rows) {
        int lead = -1;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j]) { lead = static_cast<int>(j); break; }
        if (lead < 0) continue;
        uint32_t f = v[lead];
        if (!f) continue;
        for (size_t j = lead; j < b.size(); ++j) v[j] = fp_sub(v[j], fp_mul(f, b[j], p), p);
    }
    for (uint32_t x : v)
        if (x) return false;
    return true;
}

inline bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// A prime field carrying a root of unity for the eigenspace coordinates.
/// Admissibility: p prime, p does not divide |W|, p > |R| (so hyperplane
/// complements have points), and l | p - 1 (so zeta_l exists in F_p).
/// Callers that only need linear counting (no sharp sets) may relax the
/// p > |R| requirement with require_large = false.
struct JetField {
    uint32_t p = 0;
    uint32_t q = 0;  // prime fields only, q = p
    int l = 1;
    uint32_t zeta = 1;  // element of multiplicative order exactly l
};

inline bool jet_field_admissible(uint32_t p, const Int& weyl_order, int num_roots, int l,
                                 bool require_large = true) {
    return is_prime_u32(p) && weyl_order % p != 0 &&
           (!require_large || p > static_cast<uint32_t>(num_roots)) && (p - 1) % l == 0;
}

inline JetField make_jet_field(uint32_t p, const Int& weyl_order, int num_roots, int l,
                               bool require_large = true) {
    if (!jet_field_admissible(p, weyl_order, num_roots, l, require_large))
        throw std::invalid_argument("prime not admissible for this root system and order");
    JetField f;
    f.p = f.q = p;
    f.l = l;
    // zeta = g^((p-1)/l) for a generator g of F_p^*.
    for (uint32_t g = 2; g < p; ++g) {
        uint32_t z = fp_pow(g, (p - 1) / l, p);
        bool primitive = true;
        for (int d = 1; d < l; ++d)
            if (fp_pow(z, d, p) == 1) { primitive = false; break; }
        if (primitive) { f.zeta = z; return f; }
    }
    if (l == 1) { f.zeta = 1; return f; }
    throw std::logic_error("no order-l element found");
}

/// Smallest admissible prime for the given Weyl order, root count and l.
inline JetField smallest_jet_field(const Int& weyl_order, int num_roots, int l) {
    for (uint32_t p = 2;; ++p)
        if (jet_field_admissible(p, weyl_order, num_roots, l))
            return make_jet_field(p, weyl_order, num_roots, l);
}

} // namespace rvs

#endif
