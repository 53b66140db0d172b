#ifndef RVS_IO_HPP
#define RVS_IO_HPP

#include <sstream>
#include <string>

#include "json.hpp"

#include "rvs/rootsys.hpp"
#include "rvs/strata.hpp"
#include "rvs/verify.hpp"

namespace rvs {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json root_system_to_json(const RootSystem& rs) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["type"] = std::string(1, rs.type);
    j["rank"] = rs.rank;
    j["ambient_dim"] = rs.ambient_dim;
    j["num_positive"] = rs.n_pos;
    json roots = json::array();
    for (const auto& r : rs.roots) roots.push_back(r);
    j["roots"] = roots;
    json cartan = json::array();
    for (int i = 0; i < rs.rank; ++i) {
        json row = json::array();
        for (int k = 0; k < rs.rank; ++k) row.push_back(rs.cartan(i, k));
        cartan.push_back(row);
    }
    j["cartan"] = cartan;
    return j;
}

inline json stratum_report_to_json(const StratumReport& rep) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["w_word"] = rep.w_word;
    json rv = json::array();
    for (const auto& v : rep.r_values) rv.push_back(to_string(v));
    j["r_values"] = rv;
    j["l"] = rep.l;
    j["condition_flags"] = {rep.cond1, rep.cond2, rep.cond3, rep.cond4};
    j["nonempty"] = rep.nonempty;
    j["delta_r"] = to_string(rep.delta_r);
    j["c_w"] = rep.c_w;
    j["e_wr"] = to_string(rep.e_wr);
    j["d_wr"] = rep.d_wr;
    j["codim"] = rep.codim;
    j["stabilizer_order"] = rep.stabilizer_order;
    return j;
}

inline StratumReport stratum_report_from_json(const json& j) {
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::invalid_argument("unsupported schema version");
    StratumReport rep;
    rep.w_word = j.at("w_word").get<std::vector<int>>();
    for (const auto& s : j.at("r_values")) {
        auto v = parse_rational(s.get<std::string>());
        if (!v) throw std::invalid_argument("bad rational in r_values");
        rep.r_values.push_back(*v);
    }
    rep.l = j.at("l").get<long long>();
    const auto& flags = j.at("condition_flags");
    rep.cond1 = flags.at(0).get<bool>();
    rep.cond2 = flags.at(1).get<bool>();
    rep.cond3 = flags.at(2).get<bool>();
    rep.cond4 = flags.at(3).get<bool>();
    rep.nonempty = j.at("nonempty").get<bool>();
    rep.delta_r = *parse_rational(j.at("delta_r").get<std::string>());
    rep.c_w = j.at("c_w").get<int>();
    rep.e_wr = *parse_rational(j.at("e_wr").get<std::string>());
    rep.d_wr = j.at("d_wr").get<long long>();
    rep.codim = j.at("codim").get<long long>();
    rep.stabilizer_order = j.at("stabilizer_order").get<long long>();
    return rep;
}

inline std::string stratum_report_csv_header() {
    return "w_word,r_values,l,cond1,cond2,cond3,cond4,nonempty,delta_r,c_w,e_wr,d_wr,codim,"
           "stabilizer_order";
}

inline std::string stratum_report_to_csv(const StratumReport& rep) {
    std::ostringstream os;
    for (size_t i = 0; i < rep.w_word.size(); ++i) os << (i ? " " : "") << "s" << rep.w_word[i] + 1;
    if (rep.w_word.empty()) os << "id";
    os << ",";
    for (size_t i = 0; i < rep.r_values.size(); ++i)
        os << (i ? " " : "") << to_string(rep.r_values[i]);
    os << "," << rep.l << "," << rep.cond1 << "," << rep.cond2 << "," << rep.cond3 << ","
       << rep.cond4 << "," << rep.nonempty << "," << to_string(rep.delta_r) << "," << rep.c_w
       << "," << to_string(rep.e_wr) << "," << rep.d_wr << "," << rep.codim << ","
       << rep.stabilizer_order;
    return os.str();
}

inline json check_report_to_json(const CheckReport& rep) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = rep.name;
    j["pass"] = rep.pass;
    j["counted"] = rep.counted;
    j["expected"] = rep.expected;
    j["detail"] = rep.detail;
    j["witness"] = rep.witness;
    return j;
}

} // namespace rvs

#endif
