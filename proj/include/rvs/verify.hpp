#ifndef RVS_VERIFY_HPP
#define RVS_VERIFY_HPP

#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rvs/jets.hpp"
#include "rvs/strata.hpp"

namespace rvs {

/// Outcome of one brute-force check. A failure always carries a witness.
struct CheckReport {
    std::string name;
    bool pass = true;
    long long counted = 0;
    long long expected = 0;
    std::string detail;
    std::string witness;

    std::string summary() const {
        std::ostringstream os;
        os << name << ": " << (pass ? "pass" : "FAIL");
        if (!detail.empty()) os << " (" << detail << ")";
        if (!pass && !witness.empty()) os << " witness: " << witness;
        return os.str();
    }
};

namespace detail {

inline std::string jet_str(const JetPoint& u) {
    std::ostringstream os;
    os << "[";
    for (size_t j = 0; j < u.u.size(); ++j) {
        if (j) os << ";";
        for (size_t k = 0; k < u.u[j].size(); ++k) os << (k ? "," : "") << u.u[j][k];
    }
    os << "]";
    return os.str();
}

inline std::vector<uint32_t> image_key(const std::vector<FSeries>& inv) {
    std::vector<uint32_t> key;
    for (const auto& s : inv)
        for (int k = 0; k < s.trunc(); ++k) key.push_back(s.coeff(k));
    return key;
}

/// A uniformly random stratum point, built from the per-level sharp sets.
inline JetPoint sample_stratum_jet(const JetContext& ctx,
                                   const std::vector<LevelVectors>& levels,
                                   std::mt19937_64& rng) {
    JetPoint u;
    for (const auto& lv : levels) {
        std::uniform_int_distribution<size_t> pick(0, lv.sharp.size() - 1);
        u.u.push_back(lv.sharp[pick(rng)]);
    }
    return u;
}

} // namespace detail

/// Exhaustive count of {u : val alpha(u) >= r(alpha)} against q^{nN - d(w,r)}.
inline CheckReport check_closure_count(const RootSystem& rs, const WeylElement& w,
                                       const ValuationFunction& r, int n_trunc,
                                       const JetField& field,
                                       unsigned long long cap = 1u << 24) {
    CheckReport rep;
    rep.name = "closure_count";
    JetContext ctx = make_jet_context(rs, w, n_trunc, field);
    long long count = 0;
    enumerate_closure_jets(ctx, r, [&](const JetPoint&) { ++count; }, cap);
    long long d = d_wr(rs, w, r);
    long long expected = 1;
    for (long long i = 0; i < static_cast<long long>(rs.rank) * n_trunc - d; ++i)
        expected *= field.q;
    rep.counted = count;
    rep.expected = expected;
    rep.pass = (count == expected);
    std::ostringstream os;
    os << "N=" << n_trunc << " q=" << field.q << " d=" << d << " count=" << count
       << " expected=" << expected;
    rep.detail = os.str();
    return rep;
}

/// Every rationally-hit fiber of the stratum has |W_{w,r}| * q^e points.
inline CheckReport check_fiber_sizes(const RootSystem& rs, const WeylGroup& g,
                                     const WeylElement& w, const ValuationFunction& r,
                                     int n_trunc, const JetField& field,
                                     unsigned long long cap = 1u << 24) {
    CheckReport rep;
    rep.name = "fiber_sizes";
    StratumReport srep = codim_stratum(rs, g, w, r);
    if (!srep.nonempty) {
        rep.pass = false;
        rep.detail = "stratum is empty";
        return rep;
    }
    long long e = num(srep.e_wr).convert_to<long long>();
    if (n_trunc < 2 * e) throw std::invalid_argument("need N >= 2e for fiber check");
    JetContext ctx = make_jet_context(rs, w, n_trunc, field);
    long long expected = srep.stabilizer_order;
    for (long long i = 0; i < e; ++i) expected *= field.q;
    std::map<std::vector<uint32_t>, long long> fibers;
    std::map<std::vector<uint32_t>, JetPoint> first_point;
    enumerate_stratum_jets(ctx, r, [&](const JetPoint& u) {
        auto key = detail::image_key(apply_invariants(ctx, u));
        if (++fibers[key] == 1) first_point.emplace(key, u);
    }, cap);
    rep.expected = expected;
    rep.counted = static_cast<long long>(fibers.size());
    for (const auto& [key, size] : fibers) {
        if (size != expected) {
            rep.pass = false;
            std::ostringstream os;
            os << "fiber of size " << size << " (expected " << expected << ") at image of "
               << detail::jet_str(first_point.at(key));
            rep.witness = os.str();
            break;
        }
    }
    std::ostringstream os;
    os << "N=" << n_trunc << " q=" << field.q << " fibers=" << fibers.size()
       << " size=" << expected;
    rep.detail = os.str();
    return rep;
}

/// Images of distinct orbit strata are pairwise disjoint. The strata are
/// taken from enumerate_strata with the given bounds, restricted to those
/// decidable at truncation N and to twist orders l with l | p - 1 (other
/// strata have no F_p model and are skipped).
inline CheckReport check_partition(const RootSystem& rs, const WeylGroup& g, int n_trunc,
                                   uint32_t p, const Rational& max_delta, int max_denominator,
                                   unsigned long long cap = 1u << 24) {
    CheckReport rep;
    rep.name = "partition";
    auto strata = enumerate_strata(rs, g, max_delta, max_denominator);
    std::map<std::vector<uint32_t>, int> owner;
    int used = 0;
    for (size_t si = 0; si < strata.size(); ++si) {
        const auto& s = strata[si];
        ValuationFunction r{s.r_values};
        if (r.max_value() >= n_trunc) continue;
        long long e = num(s.e_wr).convert_to<long long>();
        if (n_trunc < 2 * e) continue;
        if ((p - 1) % s.l != 0) continue;
        WeylElement w = element_from_word(rs, s.w_word);
        JetField field = make_jet_field(p, Int(g.size()), rs.num_roots(), static_cast<int>(s.l),
                                        /*require_large=*/false);
        JetContext ctx = make_jet_context(rs, w, n_trunc, field);
        ++used;
        bool clash = false;
        enumerate_stratum_jets(ctx, r, [&](const JetPoint& u) {
            if (clash) return;
            auto key = detail::image_key(apply_invariants(ctx, u));
            auto [it, fresh] = owner.emplace(key, static_cast<int>(si));
            if (!fresh && it->second != static_cast<int>(si)) {
                clash = true;
                rep.pass = false;
                std::ostringstream os;
                os << "image shared by strata " << it->second << " and " << si << " at "
                   << detail::jet_str(u);
                rep.witness = os.str();
            }
        }, cap);
        if (clash) break;
    }
    rep.counted = used;
    std::ostringstream os;
    os << "N=" << n_trunc << " q=" << p << " strata_checked=" << used
       << " image_points=" << owner.size();
    rep.detail = os.str();
    return rep;
}

/// Sampled laws: jacobian_valuation = e(w,r), and no non-identity element
/// of the centralizer W_w fixes a stratum jet.
inline CheckReport check_jacobian_and_freeness(const RootSystem& rs, const WeylGroup& g,
                                               const WeylElement& w, const ValuationFunction& r,
                                               int n_trunc, const JetField& field, int samples,
                                               uint64_t seed) {
    CheckReport rep;
    rep.name = "jacobian_freeness";
    StratumReport srep = codim_stratum(rs, g, w, r);
    if (!srep.nonempty) {
        rep.pass = false;
        rep.detail = "stratum is empty";
        return rep;
    }
    JetContext ctx = make_jet_context(rs, w, n_trunc, field);
    auto levels = detail::stratum_level_vectors(ctx, r);
    for (const auto& lv : levels)
        if (lv.sharp.empty()) {
            rep.pass = false;
            rep.detail = "no F_q points at this truncation";
            return rep;
        }
    int wi = g.find(w.perm);
    std::vector<int> cent = g.centralizer(wi);
    std::mt19937_64 rng(seed);
    uint32_t p = field.p;
    for (int s = 0; s < samples; ++s) {
        JetPoint u = detail::sample_stratum_jet(ctx, levels, rng);
        auto jv = jacobian_valuation(ctx, u);
        if (!jv || *jv != srep.e_wr) {
            rep.pass = false;
            std::ostringstream os;
            os << "jacobian valuation " << (jv ? to_string(*jv) : std::string(">=N"))
               << " != e=" << to_string(srep.e_wr) << " at " << detail::jet_str(u);
            rep.witness = os.str();
            return rep;
        }
        for (int x : cent) {
            if (x == 0) continue;
            bool fixes = true;
            for (size_t j = 0; j < u.u.size() && fixes; ++j) {
                for (int i = 0; i < rs.rank && fixes; ++i) {
                    uint32_t v = 0;
                    for (int k = 0; k < rs.rank; ++k)
                        v = fp_add(v,
                                   fp_mul(fp_from_ll(g.elems[x].matrix(i, k), p), u.u[j][k], p),
                                   p);
                    if (v != u.u[j][i]) fixes = false;
                }
            }
            if (fixes) {
                rep.pass = false;
                std::ostringstream os;
                os << "element " << x << " of W_w fixes " << detail::jet_str(u);
                rep.witness = os.str();
                return rep;
            }
        }
        ++rep.counted;
    }
    std::ostringstream os;
    os << "samples=" << rep.counted << " e=" << to_string(srep.e_wr)
       << " |W_w|=" << cent.size();
    rep.detail = os.str();
    return rep;
}

/// Searches the w = 1 integral nonempty strata (delta <= max_delta) for a
/// pair with equal level-size multisets that is not W-related. Returns the
/// pair of valuation vectors if one exists.
inline std::optional<std::pair<ValuationFunction, ValuationFunction>> find_separation_pair(
    const RootSystem& rs, const WeylGroup& g, const Rational& max_delta) {
    auto strata = enumerate_strata(rs, g, max_delta, 1);
    std::vector<ValuationFunction> integral;
    for (const auto& s : strata) {
        if (!s.w_word.empty()) continue;  // canonical identity has empty word
        ValuationFunction r{s.r_values};
        bool ok = true;
        for (const auto& v : r.values)
            if (!is_integer(v)) ok = false;
        if (ok) integral.push_back(std::move(r));
    }
    auto profile = [&](const ValuationFunction& r) {
        std::vector<Rational> vals = r.values;
        std::sort(vals.begin(), vals.end());
        return vals;
    };
    for (size_t i = 0; i < integral.size(); ++i)
        for (size_t j = i + 1; j < integral.size(); ++j) {
            if (profile(integral[i]) != profile(integral[j])) continue;
            bool related = false;
            for (int x = 0; x < g.size() && !related; ++x)
                if (transport_valuation(g.elems[x], integral[i]) == integral[j]) related = true;
            if (!related) return std::make_pair(integral[i], integral[j]);
        }
    return std::nullopt;
}

/// Separation certificate P_r = sum over W/W_r of prod_alpha alpha^{N-(xr)(alpha)}:
/// valuation exactly N delta_r - (r,r) on stratum r, strictly greater on
/// stratum r2. Preconditions: w = 1 on both sides, r and r2 integral with
/// equal value multisets, r2 not W-related to r.
inline CheckReport separation_certificate(const RootSystem& rs, const WeylGroup& g,
                                          const ValuationFunction& r, const ValuationFunction& r2,
                                          int n_trunc, const JetField& field, int samples,
                                          uint64_t seed) {
    CheckReport rep;
    rep.name = "separation";
    validate_valuation(rs, r);
    validate_valuation(rs, r2);
    for (const auto& v : r.values)
        if (!is_integer(v)) throw std::invalid_argument("separation requires integral r");
    for (const auto& v : r2.values)
        if (!is_integer(v)) throw std::invalid_argument("separation requires integral r'");
    {
        auto prof = [](std::vector<Rational> v) { std::sort(v.begin(), v.end()); return v; };
        if (prof(r.values) != prof(r2.values))
            throw std::invalid_argument("separation requires equal value multisets");
        for (int x = 0; x < g.size(); ++x)
            if (transport_valuation(g.elems[x], r) == r2)
                throw std::invalid_argument("r' is W-related to r");
    }
    if (Rational(r.max_value()) >= n_trunc)
        throw std::invalid_argument("truncation below max r");

    // Coset representatives of W / W_r.
    std::vector<int> reps;
    {
        std::set<std::vector<Rational>> seen;
        for (int x = 0; x < g.size(); ++x)
            if (seen.insert(transport_valuation(g.elems[x], r).values).second) reps.push_back(x);
    }
    Rational delta(0), rr(0);
    for (const auto& v : r.values) {
        delta += v;
        rr += v * v;
    }
    long long target = num(Rational(n_trunc) * delta - rr).convert_to<long long>();

    WeylElement id = element_from_word(rs, {});
    JetContext ctx = make_jet_context(rs, id, n_trunc, field);
    uint32_t p = field.p;
    // The certificate's expected valuation exceeds the jet truncation, so
    // evaluate on the polynomial representative (zero-extended jet), which
    // lies in the stratum on the nose, at a working truncation past the
    // target.
    const int work = static_cast<int>(target) + 2;
    auto certificate_val = [&](const JetPoint& u) -> long long {
        FSeries acc(p, 1, work);
        for (int x : reps) {
            ValuationFunction xr = transport_valuation(g.elems[x], r);
            FSeries term = FSeries::monomial(p, 1, work, 0, 1);
            for (int i = 0; i < rs.num_roots(); ++i) {
                long long exp = n_trunc - num(xr.values[i]).convert_to<long long>();
                FSeries short_av = root_value(ctx, u, i);
                FSeries av(p, 1, work);
                for (int k = 0; k < short_av.trunc() && k < work; ++k)
                    av.set_coeff(k, short_av.coeff(k));
                for (long long k = 0; k < exp; ++k) term = term * av;
            }
            acc = acc + term;
        }
        int v = acc.valuation();
        return v == FSeries::INF ? static_cast<long long>(work) : v;
    };

    std::mt19937_64 rng(seed);
    auto levels_r = detail::stratum_level_vectors(ctx, r);
    auto levels_r2 = detail::stratum_level_vectors(ctx, r2);
    for (const auto* lvs : {&levels_r, &levels_r2})
        for (const auto& lv : *lvs)
            if (lv.sharp.empty()) {
                rep.pass = false;
                rep.detail = "no F_q points in a stratum";
                return rep;
            }
    for (int s = 0; s < samples; ++s) {
        JetPoint u = detail::sample_stratum_jet(ctx, levels_r, rng);
        long long v = certificate_val(u);
        if (v != target) {
            rep.pass = false;
            std::ostringstream os;
            os << "certificate valuation " << v << " != " << target << " on stratum r at "
               << detail::jet_str(u);
            rep.witness = os.str();
            return rep;
        }
        JetPoint u2 = detail::sample_stratum_jet(ctx, levels_r2, rng);
        long long v2 = certificate_val(u2);
        if (v2 <= target) {
            rep.pass = false;
            std::ostringstream os;
            os << "certificate valuation " << v2 << " <= " << target << " on stratum r' at "
               << detail::jet_str(u2);
            rep.witness = os.str();
            return rep;
        }
        ++rep.counted;
    }
    std::ostringstream os;
    os << "samples=" << rep.counted << " target_valuation=" << target;
    rep.detail = os.str();
    return rep;
}

} // namespace rvs

#endif
