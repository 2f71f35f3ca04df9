#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "skirental/deterministic.hpp"
#include "skirental/lp.hpp"
#include "skirental/model.hpp"
#include "skirental/randomized.hpp"

namespace skirental {

struct loaded_instance {
    problem_params params;
    instance inst;
};

/// {"M": int, "B": int, "G": int, "days": [int,...]}; days must already be
/// sorted ascending.
inline loaded_instance load_instance_json(std::istream& in, const std::string& name) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(name + ": " + e.what());
    }
    for (const char* field : {"M", "B", "G", "days"})
        if (!j.contains(field))
            throw parse_error(name + ": missing field \"" + field + "\"");
    if (!j["days"].is_array()) throw parse_error(name + ": field \"days\" must be an array");
    problem_params p;
    try {
        p = problem_params::validated(j["M"].get<int>(), j["B"].get<long long>(),
                                      j["G"].get<long long>());
    } catch (const invalid_params& e) {
        throw parse_error(name + ": " + e.what());
    }
    std::vector<long long> days;
    for (std::size_t i = 0; i < j["days"].size(); ++i) {
        if (!j["days"][i].is_number_integer())
            throw parse_error(name + ": days[" + std::to_string(i) + "] is not an integer");
        days.push_back(j["days"][i].get<long long>());
    }
    try {
        return {p, instance::from_sorted(p, std::move(days))};
    } catch (const invalid_params& e) {
        throw parse_error(name + ": " + e.what());
    }
}

/// CSV with a header line "N" and one day count per row. Parameters come
/// from elsewhere (the CLI's --params flag).
inline instance load_instance_csv(std::istream& in, const problem_params& p,
                                  const std::string& name) {
    std::string line;
    int lineno = 0;
    std::vector<long long> days;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1) {
            if (line != "N")
                throw parse_error(name + ": line 1: expected header \"N\", got \"" + line + "\"");
            continue;
        }
        try {
            std::size_t pos = 0;
            long long v = std::stoll(line, &pos);
            if (pos != line.size()) throw std::invalid_argument("trailing characters");
            days.push_back(v);
        } catch (const std::exception&) {
            throw parse_error(name + ": line " + std::to_string(lineno) +
                              ": not an integer: \"" + line + "\"");
        }
    }
    if (days.empty()) throw parse_error(name + ": no day rows");
    try {
        return instance::from_sorted(p, std::move(days));
    } catch (const invalid_params& e) {
        throw parse_error(name + ": " + e.what());
    }
}

inline loaded_instance load_instance_file(const std::string& path,
                                          std::optional<problem_params> params) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open");
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
        if (!params) throw parse_error(path + ": CSV instances need --params M,B,G");
        return {*params, load_instance_csv(in, *params, path)};
    }
    return load_instance_json(in, path);
}

inline nlohmann::json to_json(const cr_report& r) {
    nlohmann::json j;
    j["schema"] = "1";
    j["objective"] = to_string(r.obj);
    j["ell"] = r.ell;
    j["revealed"] = r.revealed;
    j["ratio"] = r.ratio;
    j["witness"] = r.witness;
    if (r.full_sweep) {
        j["full_sweep"] = {{"max_ratio", r.full_sweep->max_ratio},
                           {"witness", r.full_sweep->witness},
                           {"completions", r.full_sweep->completions}};
    }
    return j;
}

inline nlohmann::json to_json(const monte_carlo_report& r) {
    return {{"schema", "1"}, {"n", r.n},         {"mean", r.mean},
            {"stderr", r.std_error}, {"exact", r.exact}, {"z_score", r.z_score}};
}

/// CSV dump of a constraint system, before and after the differencing
/// passes: phase, adversary day, one column per buy-day probability, and
/// the benchmark coefficient of the ratio variable.
inline std::string lp_system_csv(lp_system sys) {
    std::ostringstream out;
    auto block = [&](const lp_system& s, const char* phase) {
        for (std::size_t r = 0; r < s.support.size(); ++r) {
            out << phase << ',' << s.support[r];
            for (const rat& c : s.coeff[r]) out << ',' << c;
            out << ',' << s.bench[r] << '\n';
        }
    };
    out << "phase,day";
    for (long long day : sys.support) out << ",p" << day;
    out << ",bench\n";
    block(sys, "original");
    triangularize(sys);
    block(sys, "triangular");
    return out.str();
}

/// CSV dump of a density: day, mass, kind, ell, T.
inline std::string density_csv(const threshold_density& d) {
    std::ostringstream out;
    out << "day,mass,kind,ell,T\n";
    char buf[64];
    for (int i = 0; i < d.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", d.mass[i]);
        out << d.day(i) << ',' << buf << ',' << to_string(d.kind) << ',' << d.ell
            << ',' << to_double(d.threshold) << '\n';
    }
    return out.str();
}

}  // namespace skirental
