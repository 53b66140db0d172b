#ifndef RVS_CYCLOTOMIC_HPP
#define RVS_CYCLOTOMIC_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "rvs/rational.hpp"

namespace rvs {

namespace detail {

/// Quotient of exact polynomial division (coefficients low-to-high).
/// The divisor must be monic; division must be exact for our callers.
inline std::vector<Rational> poly_divmod(std::vector<Rational> num,
                                         const std::vector<Rational>& den,
                                         std::vector<Rational>* rem = nullptr) {
    int dn = static_cast<int>(num.size()) - 1;
    int dd = static_cast<int>(den.size()) - 1;
    std::vector<Rational> q(std::max(dn - dd + 1, 0), Rational(0));
    for (int k = dn - dd; k >= 0; --k) {
        Rational c = num[k + dd] / den[dd];
        q[k] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
    }
    if (rem) {
        num.resize(dd > 0 ? dd : 1);
        *rem = num;
    }
    return q;
}

inline void poly_trim(std::vector<Rational>& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

} // namespace detail

inline int euler_phi(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

/// Coefficients (low-to-high) of the l-th cyclotomic polynomial Phi_l,
/// computed by dividing x^l - 1 by the Phi_d for proper divisors d.
inline const std::vector<Rational>& cyclotomic_polynomial(int l) {
    static std::map<int, std::vector<Rational>> cache;
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
    std::vector<Rational> p(l + 1, Rational(0));
    p[0] = -1;
    p[l] = 1;
    for (int d = 1; d < l; ++d)
        if (l % d == 0) p = detail::poly_divmod(p, cyclotomic_polynomial(d));
    detail::poly_trim(p);
    return cache.emplace(l, std::move(p)).first->second;
}

/// An element of Q(zeta_l), stored as a residue modulo Phi_l of degree
/// < phi(l). Conductor 1 elements are plain rationals and promote freely.
class Cyclotomic {
public:
    Cyclotomic() : l_(1), c_{Rational(0)} {}
    Cyclotomic(int v) : l_(1), c_{Rational(v)} {}
    Cyclotomic(const Rational& v) : l_(1), c_{v} {}
    Cyclotomic(int l, std::vector<Rational> coeffs) : l_(l), c_(std::move(coeffs)) {
        if (static_cast<int>(c_.size()) != euler_phi(l_))
            throw std::invalid_argument("cyclotomic coefficient length != phi(l)");
    }

    /// zeta_l^j.
    static Cyclotomic zeta(int l, long j = 1) {
        j %= l;
        if (j < 0) j += l;
        std::vector<Rational> p(static_cast<size_t>(j) + 1, Rational(0));
        p.back() = 1;
        return from_poly(l, p);
    }

    int conductor() const { return l_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rational rational_value() const {
        if (!is_rational()) throw std::domain_error("not a rational cyclotomic");
        return c_[0];
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = promote(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = promote(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = promote(a, b);
        std::vector<Rational> prod(x.c_.size() + y.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (size_t j = 0; j < y.c_.size(); ++j) prod[i + j] += x.c_[i] * y.c_[j];
        }
        return from_poly(x.l_, prod);
    }
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
        return a * b.inverse();
    }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = promote(a, b);
        return x.c_ == y.c_;
    }

    /// Inverse modulo Phi_l via the extended Euclidean algorithm in Q[x].
    Cyclotomic inverse() const {
        if (is_zero()) throw std::domain_error("division by zero in Q(zeta)");
        if (l_ == 1) return Cyclotomic(Rational(1) / c_[0]);
        // r0 = Phi_l, r1 = this; maintain s-coefficients for r1 only.
        std::vector<Rational> r0 = cyclotomic_polynomial(l_), r1 = c_;
        detail::poly_trim(r1);
        std::vector<Rational> s0{Rational(0)}, s1{Rational(1)};
        while (!(r1.size() == 1 && r1[0] == 0)) {
            // Make r1 monic-compatible division: divmod handles any monic-free
            // divisor only if leading coeff divides; normalize explicitly.
            Rational lead = r1.back();
            std::vector<Rational> r1n = r1, s1n = s1;
            for (auto& x : r1n) x /= lead;
            for (auto& x : s1n) x /= lead;
            std::vector<Rational> rem;
            std::vector<Rational> q = detail::poly_divmod(r0, r1n, &rem);
            detail::poly_trim(rem);
            // s_new = s0 - q * s1n
            std::vector<Rational> snew(std::max(s0.size(), q.size() + s1n.size()), Rational(0));
            for (size_t i = 0; i < s0.size(); ++i) snew[i] += s0[i];
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t j = 0; j < s1n.size(); ++j) snew[i + j] -= q[i] * s1n[j];
            detail::poly_trim(snew);
            r0 = r1n;
            s0 = s1n;
            r1 = rem;
            s1 = snew;
        }
        // r0 is now a unit constant (gcd), s0 its Bezout coefficient.
        if (r0.size() != 1 || r0[0] == 0)
            throw std::domain_error("non-invertible residue modulo Phi_l");
        for (auto& x : s0) x /= r0[0];
        return from_poly(l_, s0);
    }

    Cyclotomic pow(long e) const {
        Cyclotomic base = *this, acc(1);
        if (e < 0) { base = inverse(); e = -e; }
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

private:
    static Cyclotomic from_poly(int l, std::vector<Rational> p) {
        const auto& phi = cyclotomic_polynomial(l);
        int deg = static_cast<int>(phi.size()) - 1;
        if (static_cast<int>(p.size()) > deg) {
            std::vector<Rational> rem;
            detail::poly_divmod(p, phi, &rem);
            p = rem;
        }
        p.resize(deg, Rational(0));
        Cyclotomic c;
        c.l_ = l;
        c.c_ = std::move(p);
        return c;
    }

    static std::pair<Cyclotomic, Cyclotomic> promote(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.l_ == b.l_) return {a, b};
        if (a.l_ == 1) {
            Cyclotomic x;
            x.l_ = b.l_;
            x.c_.assign(euler_phi(b.l_), Rational(0));
            x.c_[0] = a.c_[0];
            return {x, b};
        }
        if (b.l_ == 1) {
            auto [y, x] = promote(b, a);
            return {x, y};
        }
        throw std::invalid_argument("mixed cyclotomic conductors");
    }

    int l_;
    std::vector<Rational> c_;
};

} // namespace rvs

#endif
