// Serialization: versioned JSON documents for root systems, stratum
// reports (with exact round-trip), CSV rows, and check reports.

#include <catch2/catch_amalgamated.hpp>

#include "rvs/io.hpp"

using namespace rvs;

namespace {

StratumReport sample_report(char type, int rank, std::vector<int> word, const Rational& v) {
    auto rs = build_root_system(type, rank);
    auto g = enumerate_weyl(rs);
    auto w = element_from_word(rs, word);
    return codim_stratum(rs, g, w, constant_valuation(rs, v));
}

bool reports_equal(const StratumReport& a, const StratumReport& b) {
    return a.w_word == b.w_word && a.r_values == b.r_values && a.l == b.l &&
           a.cond1 == b.cond1 && a.cond2 == b.cond2 && a.cond3 == b.cond3 &&
           a.cond4 == b.cond4 && a.nonempty == b.nonempty && a.delta_r == b.delta_r &&
           a.c_w == b.c_w && a.e_wr == b.e_wr && a.d_wr == b.d_wr && a.codim == b.codim &&
           a.stabilizer_order == b.stabilizer_order;
}

} // namespace

TEST_CASE("root_system_to_json") {
    auto rs = build_root_system('A', 2);
    auto j = root_system_to_json(rs);
    CHECK(j.at("schema_version") == kSchemaVersion);
    CHECK(j.at("type") == "A");
    CHECK(j.at("rank") == 2);
    CHECK(j.at("ambient_dim") == 3);
    CHECK(j.at("num_positive") == 3);
    CHECK(j.at("roots").size() == 6);
    CHECK(j.at("cartan").size() == 2);
    CHECK(j.at("cartan")[0][0] == 2);
}

TEST_CASE("stratum report JSON round-trip") {
    std::vector<StratumReport> reports{
        sample_report('A', 1, {0}, Rational(5, 2)),   // nonempty twisted
        sample_report('A', 1, {0}, Rational(1)),      // empty
        sample_report('A', 2, {0, 1}, Rational(1, 3)),
        sample_report('A', 2, {}, Rational(1)),
    };
    for (const auto& rep : reports) {
        auto j = stratum_report_to_json(rep);
        CHECK(j.at("schema_version") == kSchemaVersion);
        StratumReport back = stratum_report_from_json(j);
        CHECK(reports_equal(rep, back));
        // Through text as well: serialize, reparse, compare.
        StratumReport back2 = stratum_report_from_json(json::parse(j.dump()));
        CHECK(reports_equal(rep, back2));
    }
}

TEST_CASE("unknown schema version is rejected") {
    auto rep = sample_report('A', 1, {}, Rational(1));
    auto j = stratum_report_to_json(rep);
    j["schema_version"] = kSchemaVersion + 1;
    CHECK_THROWS_AS(stratum_report_from_json(j), std::invalid_argument);
}

TEST_CASE("CSV header and rows") {
    CHECK(stratum_report_csv_header() ==
          "w_word,r_values,l,cond1,cond2,cond3,cond4,nonempty,delta_r,c_w,e_wr,d_wr,codim,"
          "stabilizer_order");
    auto rep = sample_report('A', 1, {0}, Rational(3, 2));
    auto row = stratum_report_to_csv(rep);
    CHECK(row.rfind("s1,", 0) == 0);
    CHECK(row.find("3/2") != std::string::npos);
    // Same column count as the header.
    auto commas = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
    CHECK(commas(row) == commas(stratum_report_csv_header()));

    auto id_rep = sample_report('A', 1, {}, Rational(2));
    CHECK(stratum_report_to_csv(id_rep).rfind("id,", 0) == 0);
}

TEST_CASE("check report JSON") {
    CheckReport rep;
    rep.name = "closure_count";
    rep.pass = false;
    rep.counted = 5;
    rep.expected = 6;
    rep.detail = "N=2 q=3";
    rep.witness = "[0;1]";
    auto j = check_report_to_json(rep);
    CHECK(j.at("schema_version") == kSchemaVersion);
    CHECK(j.at("name") == "closure_count");
    CHECK(j.at("pass") == false);
    CHECK(j.at("counted") == 5);
    CHECK(j.at("expected") == 6);
    CHECK(j.at("witness") == "[0;1]");
}
