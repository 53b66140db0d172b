#ifndef RVS_SERIES_HPP
#define RVS_SERIES_HPP

#include <cassert>
#include <limits>
#include <string>
#include <vector>

#include "rvs/gf.hpp"

namespace rvs {

/// Truncated power series over F_p in eps_E = eps^{1/l}: coefficients are
/// indexed by powers of eps_E and cut off at index trunc (exclusive).
/// Valuations are reported as eps_E exponents; divide by l for eps units.
class FSeries {
public:
    static constexpr int INF = std::numeric_limits<int>::max();

    FSeries() = default;
    FSeries(uint32_t p, int l, int trunc) : p_(p), l_(l), c_(trunc, 0) {}

    static FSeries monomial(uint32_t p, int l, int trunc, int k, uint32_t coeff) {
        FSeries s(p, l, trunc);
        if (k < trunc) s.c_[k] = coeff % p;
        return s;
    }

    uint32_t p() const { return p_; }
    int l() const { return l_; }
    int trunc() const { return static_cast<int>(c_.size()); }
    uint32_t coeff(int k) const { return k < trunc() ? c_[k] : 0; }
    void set_coeff(int k, uint32_t v) {
        assert(k < trunc());
        c_[k] = v % p_;
    }

    bool is_zero() const {
        for (uint32_t x : c_)
            if (x) return false;
        return true;
    }

    /// Index of the first nonzero coefficient (eps_E units), INF if zero.
    int valuation() const {
        for (int k = 0; k < trunc(); ++k)
            if (c_[k]) return k;
        return INF;
    }

    friend FSeries operator+(const FSeries& a, const FSeries& b) {
        FSeries r = a.like(b);
        for (int k = 0; k < r.trunc(); ++k) r.c_[k] = fp_add(a.coeff(k), b.coeff(k), r.p_);
        return r;
    }
    friend FSeries operator-(const FSeries& a, const FSeries& b) {
        FSeries r = a.like(b);
        for (int k = 0; k < r.trunc(); ++k) r.c_[k] = fp_sub(a.coeff(k), b.coeff(k), r.p_);
        return r;
    }
    friend FSeries operator*(const FSeries& a, const FSeries& b) {
        FSeries r = a.like(b);
        for (int i = 0; i < a.trunc(); ++i) {
            if (!a.c_[i]) continue;
            for (int j = 0; j + i < r.trunc() && j < b.trunc(); ++j) {
                if (!b.c_[j]) continue;
                r.c_[i + j] = fp_add(r.c_[i + j], fp_mul(a.c_[i], b.c_[j], r.p_), r.p_);
            }
        }
        return r;
    }
    friend bool operator==(const FSeries& a, const FSeries& b) {
        if (a.p_ != b.p_) return false;
        for (int k = 0; k < std::max(a.trunc(), b.trunc()); ++k)
            if (a.coeff(k) != b.coeff(k)) return false;
        return true;
    }

    FSeries scaled(uint32_t s) const {
        FSeries r = *this;
        for (auto& x : r.c_) x = fp_mul(x, s % p_, p_);
        return r;
    }

    /// Multiplication by eps_E^k (k may be negative; requires val >= -k).
    FSeries shifted(int k) const {
        FSeries r(p_, l_, trunc());
        for (int i = 0; i < trunc(); ++i) {
            if (!c_[i]) continue;
            int j = i + k;
            assert(j >= 0);
            if (j < trunc()) r.c_[j] = c_[i];
        }
        return r;
    }

    /// Quotient a/b to the available precision; requires val(a) >= val(b)
    /// wherever a is nonzero. Exact to index trunc - val(b) - 1.
    friend FSeries divide(const FSeries& a, const FSeries& b) {
        int vb = b.valuation();
        if (vb == INF) throw std::domain_error("series division by zero");
        FSeries r(a.p_, a.l_, a.trunc());
        std::vector<uint32_t> rem(a.c_);
        uint32_t lead_inv = fp_inv(b.c_[vb], a.p_);
        for (int k = 0; k + vb < a.trunc(); ++k) {
            uint32_t cur = rem[k + vb];
            if (!cur) { r.c_[k] = 0; continue; }
            uint32_t q = fp_mul(cur, lead_inv, a.p_);
            r.c_[k] = q;
            for (int j = vb; j + k < a.trunc() && j < b.trunc(); ++j)
                rem[k + j] = fp_sub(rem[k + j], fp_mul(q, b.c_[j], a.p_), a.p_);
        }
        for (int k = 0; k < vb; ++k)
            if (rem[k]) throw std::domain_error("series division with lower-valuation numerator");
        return r;
    }

    std::string str(const std::string& var = "E") const {
        std::string out;
        for (int k = 0; k < trunc(); ++k) {
            if (!c_[k]) continue;
            if (!out.empty()) out += " + ";
            out += std::to_string(c_[k]);
            if (k > 0) out += "*" + var + "^" + std::to_string(k);
        }
        return out.empty() ? "0" : out;
    }

private:
    FSeries like(const FSeries& o) const {
        assert(p_ == o.p_);
        return FSeries(p_, l_, std::max(trunc(), o.trunc()));
    }

    uint32_t p_ = 2;
    int l_ = 1;
    std::vector<uint32_t> c_;
};

} // namespace rvs

#endif
