// Command-line front end: root-system data, stratum checks, orbit
// enumeration, and finite-field verification with machine-readable output.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rvs/io.hpp"
#include "rvs/jets.hpp"
#include "rvs/strata.hpp"
#include "rvs/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;

struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

rvs::WeylElement parse_weyl(const rvs::RootSystem& rs, const std::string& spec) {
    if (spec == "id") return rvs::element_from_word(rs, {});
    std::vector<int> word;
    if (spec == "coxeter") {
        for (int i = 0; i < rs.rank; ++i) word.push_back(i);
        return rvs::element_from_word(rs, word);
    }
    std::istringstream is(spec);
    std::string tok;
    while (is >> tok) {
        if (tok.size() < 2 || tok[0] != 's')
            throw ParseFailure("bad Weyl word token '" + tok + "' (want s1 s2 ...)");
        int idx = 0;
        try {
            idx = std::stoi(tok.substr(1));
        } catch (...) {
            throw ParseFailure("bad Weyl word token '" + tok + "'");
        }
        if (idx < 1 || idx > rs.rank)
            throw ParseFailure("generator index out of range in '" + tok + "'");
        word.push_back(idx - 1);
    }
    if (word.empty()) throw ParseFailure("empty Weyl word");
    return rvs::element_from_word(rs, word);
}

rvs::ValuationFunction parse_valuation(const rvs::RootSystem& rs, const std::string& spec) {
    using rvs::Rational;
    if (spec.rfind("const ", 0) == 0) {
        auto v = rvs::parse_rational(spec.substr(6));
        if (!v || *v < 0) throw ParseFailure("bad constant valuation '" + spec + "'");
        return rvs::constant_valuation(rs, *v);
    }
    rvs::ValuationFunction r;
    r.values.assign(rs.num_roots(), Rational(0));
    std::istringstream is(spec);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || item.rfind("alpha", 0) != 0)
            throw ParseFailure("bad assignment '" + item + "' (want alpha<i>=a/b)");
        int idx = 0;
        try {
            idx = std::stoi(item.substr(5, eq - 5));
        } catch (...) {
            throw ParseFailure("bad root index in '" + item + "'");
        }
        if (idx < 0 || idx >= rs.n_pos)
            throw ParseFailure("positive-root index out of range in '" + item + "'");
        auto v = rvs::parse_rational(item.substr(eq + 1));
        if (!v || *v < 0) throw ParseFailure("bad value in '" + item + "'");
        r.values[idx] = *v;
        r.values[rs.negate(idx)] = *v;
    }
    return r;
}

void print_report(const rvs::StratumReport& rep, const std::string& format, bool codim_only) {
    if (format == "json") {
        auto j = rvs::stratum_report_to_json(rep);
        if (codim_only) {
            rvs::json out;
            out["schema_version"] = rvs::kSchemaVersion;
            out["nonempty"] = rep.nonempty;
            out["d_wr"] = rep.d_wr;
            out["e_wr"] = rvs::to_string(rep.e_wr);
            out["codim"] = rep.codim;
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << j.dump(2) << "\n";
        }
        return;
    }
    if (format == "csv") {
        std::cout << rvs::stratum_report_csv_header() << "\n"
                  << rvs::stratum_report_to_csv(rep) << "\n";
        return;
    }
    std::cout << "nonempty: " << (rep.nonempty ? "yes" : "no") << "\n";
    std::cout << "conditions: " << rep.cond1 << rep.cond2 << rep.cond3 << rep.cond4 << "\n";
    if (!codim_only) {
        std::cout << "l (order of w): " << rep.l << "\n";
        std::cout << "delta_r: " << rvs::to_string(rep.delta_r) << "\n";
        std::cout << "c_w: " << rep.c_w << "\n";
    }
    std::cout << "e_wr: " << rvs::to_string(rep.e_wr) << "\n";
    if (rep.nonempty) {
        std::cout << "d_wr: " << rep.d_wr << "\n";
        std::cout << "codim: " << rep.codim << "\n";
        if (!codim_only) std::cout << "stabilizer_order: " << rep.stabilizer_order << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"root-valuation strata of the adjoint quotient over formal power series"};
    app.require_subcommand(1);

    std::string type = "A", w_spec = "id", r_spec = "const 0", format = "table";
    std::string checks = "closure,fiber,partition,jacobian";
    int rank = 1, n_trunc = 2, samples = 100;
    uint32_t prime = 0;
    std::string max_delta_s = "4";
    int max_denominator = 2;
    uint64_t seed = 1;
    unsigned long long cap = 1ull << 24;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--type", type, "root system type A..G")->required();
        sub->add_option("--rank", rank, "root system rank")->required();
        sub->add_option("--format", format, "output format: json|csv|table");
    };
    auto* roots_cmd = app.add_subcommand("roots", "print root system data and degrees");
    add_common(roots_cmd);
    auto* check_cmd = app.add_subcommand("check", "full stratum report for one (w, r)");
    add_common(check_cmd);
    check_cmd->add_option("--w", w_spec, "Weyl word: 'id', 'coxeter', or 's1 s2 ...'");
    check_cmd->add_option("--r", r_spec, "'const a/b' or 'alpha0=a/b,alpha3=c,...'");
    auto* codim_cmd = app.add_subcommand("codim", "codimension fields only for one (w, r)");
    add_common(codim_cmd);
    codim_cmd->add_option("--w", w_spec, "Weyl word: 'id', 'coxeter', or 's1 s2 ...'");
    codim_cmd->add_option("--r", r_spec, "'const a/b' or 'alpha0=a/b,alpha3=c,...'");
    auto* enum_cmd = app.add_subcommand("enumerate", "stream one report per nonempty orbit");
    add_common(enum_cmd);
    enum_cmd->add_option("--max-delta", max_delta_s, "bound on delta_r");
    enum_cmd->add_option("--max-denominator", max_denominator, "bound on denominators of r");
    auto* verify_cmd = app.add_subcommand("verify", "finite-field brute-force checks");
    add_common(verify_cmd);
    verify_cmd->add_option("--checks", checks,
                           "comma list: closure,fiber,partition,jacobian,separation");
    verify_cmd->add_option("--N", n_trunc, "jet truncation level");
    verify_cmd->add_option("--q", prime, "prime field (0 = auto-select)");
    verify_cmd->add_option("--max-delta", max_delta_s, "bound on delta_r");
    verify_cmd->add_option("--max-denominator", max_denominator, "bound on denominators");
    verify_cmd->add_option("--samples", samples, "samples for pointwise checks");
    verify_cmd->add_option("--seed", seed, "deterministic sampling seed");
    verify_cmd->add_option("--cap", cap, "enumeration resource cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;  // --help exits 0
    }

    auto max_delta_opt = rvs::parse_rational(max_delta_s);
    if (!max_delta_opt || *max_delta_opt < 0) throw ParseFailure("bad --max-delta");
    rvs::Rational max_delta = *max_delta_opt;

    rvs::RootSystem rs = rvs::build_root_system(type.at(0), rank);

    if (roots_cmd->parsed()) {
        rvs::WeylGroup g = rvs::enumerate_weyl(rs);
        rvs::DegreeSet deg = rvs::invariant_degrees(rs, g);
        if (format == "json") {
            auto j = rvs::root_system_to_json(rs);
            j["weyl_order"] = g.size();
            j["degrees"] = deg.degrees;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "type " << type << rank << ": " << rs.num_roots() << " roots, "
                      << rs.n_pos << " positive, |W| = " << g.size() << "\n";
            std::cout << "degrees:";
            for (int d : deg.degrees) std::cout << " " << d;
            std::cout << "\nroots (index: covector):\n";
            for (int i = 0; i < rs.num_roots(); ++i) {
                std::cout << "  " << i << ":";
                for (long long c : rs.roots[i]) std::cout << " " << c;
                std::cout << "\n";
            }
        }
        return kExitOk;
    }

    if (check_cmd->parsed() || codim_cmd->parsed()) {
        rvs::WeylGroup g = rvs::enumerate_weyl(rs);
        rvs::WeylElement w = parse_weyl(rs, w_spec);
        rvs::ValuationFunction r = parse_valuation(rs, r_spec);
        rvs::StratumReport rep = rvs::codim_stratum(rs, g, w, r);
        print_report(rep, format, codim_cmd->parsed());
        return kExitOk;
    }

    if (enum_cmd->parsed()) {
        rvs::WeylGroup g = rvs::enumerate_weyl(rs);
        auto list = rvs::enumerate_strata(rs, g, max_delta, max_denominator);
        if (format == "json") {
            rvs::json arr = rvs::json::array();
            for (const auto& rep : list) arr.push_back(rvs::stratum_report_to_json(rep));
            rvs::json out;
            out["schema_version"] = rvs::kSchemaVersion;
            out["type"] = type;
            out["rank"] = rank;
            out["max_delta"] = rvs::to_string(max_delta);
            out["max_denominator"] = max_denominator;
            out["strata"] = arr;
            std::cout << out.dump(2) << "\n";
        } else if (format == "csv") {
            std::cout << rvs::stratum_report_csv_header() << "\n";
            for (const auto& rep : list) std::cout << rvs::stratum_report_to_csv(rep) << "\n";
        } else {
            std::cout << list.size() << " nonempty orbit strata (delta <= "
                      << rvs::to_string(max_delta) << ", denom <= " << max_denominator << ")\n";
            for (const auto& rep : list) {
                std::cout << "  w=[";
                for (size_t i = 0; i < rep.w_word.size(); ++i)
                    std::cout << (i ? " " : "") << "s" << rep.w_word[i] + 1;
                std::cout << "] l=" << rep.l << " delta=" << rvs::to_string(rep.delta_r)
                          << " codim=" << rep.codim << "\n";
            }
        }
        return kExitOk;
    }

    // verify
    rvs::WeylGroup g = rvs::enumerate_weyl(rs);
    auto strata = rvs::enumerate_strata(rs, g, max_delta, max_denominator);
    std::vector<rvs::CheckReport> reports;
    auto want = [&](const std::string& c) {
        return ("," + checks + ",").find("," + c + ",") != std::string::npos;
    };
    auto field_for = [&](int l) {
        if (prime) return rvs::make_jet_field(prime, rvs::Int(g.size()), rs.num_roots(), l);
        return rvs::smallest_jet_field(rvs::Int(g.size()), rs.num_roots(), l);
    };
    for (const auto& s : strata) {
        rvs::ValuationFunction r{s.r_values};
        if (r.max_value() >= n_trunc) continue;
        long long e = rvs::num(s.e_wr).convert_to<long long>();
        rvs::WeylElement w = rvs::element_from_word(rs, s.w_word);
        rvs::JetField field = field_for(static_cast<int>(s.l));
        if (want("closure"))
            reports.push_back(rvs::check_closure_count(rs, w, r, n_trunc, field, cap));
        if (want("fiber") && n_trunc > 2 * e)  // fiber law needs N > 2e
            reports.push_back(rvs::check_fiber_sizes(rs, g, w, r, n_trunc, field, cap));
        if (want("jacobian") && e < n_trunc)
            reports.push_back(
                rvs::check_jacobian_and_freeness(rs, g, w, r, n_trunc, field, samples, seed));
    }
    if (want("partition")) {
        int lcm_l = 1;
        for (const auto& s : strata)
            lcm_l = static_cast<int>(std::lcm<long long>(lcm_l, s.l));
        uint32_t p = prime ? prime
                           : rvs::smallest_jet_field(rvs::Int(g.size()), rs.num_roots(), lcm_l).p;
        reports.push_back(rvs::check_partition(rs, g, n_trunc, p, max_delta, max_denominator, cap));
    }
    if (want("separation")) {
        auto pair = rvs::find_separation_pair(rs, g, max_delta);
        if (!pair) {
            rvs::CheckReport rep;
            rep.name = "separation";
            rep.detail = "no eligible pair (equal multisets, not W-related) at these bounds";
            reports.push_back(rep);
        } else {
            rvs::JetField field = field_for(1);
            int sep_n = std::max<int>(
                n_trunc, static_cast<int>(rvs::num(pair->first.max_value())) + 1);
            reports.push_back(rvs::separation_certificate(rs, g, pair->first, pair->second, sep_n,
                                                          field, samples, seed));
        }
    }

    bool all_pass = true;
    if (format == "json") {
        rvs::json arr = rvs::json::array();
        for (const auto& rep : reports) {
            arr.push_back(rvs::check_report_to_json(rep));
            all_pass = all_pass && rep.pass;
        }
        rvs::json out;
        out["schema_version"] = rvs::kSchemaVersion;
        out["type"] = type;
        out["rank"] = rank;
        out["N"] = n_trunc;
        out["seed"] = seed;
        out["checks"] = arr;
        out["all_pass"] = all_pass;
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& rep : reports) {
            std::cout << rep.summary() << "\n";
            all_pass = all_pass && rep.pass;
        }
        std::cout << (all_pass ? "ALL CHECKS PASS" : "CHECKS FAILED") << "\n";
    }
    return all_pass ? kExitOk : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseFailure& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const rvs::CapExceeded& e) {
        std::cerr << "resource cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
}
