#pragma once

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "skirental/deterministic.hpp"
#include "skirental/randomized.hpp"

namespace skirental {

/// The benchmark scenario used in the comparison figures: M=10, B=10, G=60,
/// active days 1..10.
inline problem_params figure_params() { return problem_params::validated(10, 10, 60); }

inline instance figure_instance() {
    std::vector<long long> days;
    for (long long n = 1; n <= 10; ++n) days.push_back(n);
    return instance::from_sorted(figure_params(), std::move(days));
}

/// One labelled row of the 6x10 comparison grid. Deterministic rows carry
/// exact rationals; randomized rows come out of the adversary search.
struct ratio_row {
    std::string label;
    std::vector<rat> exact;      // deterministic rows
    std::vector<double> values;  // all rows
};

/// The four deterministic rows evaluate the closed forms at every state
/// (the formulas extend across non-integer-threshold states); the two
/// randomized rows run the worst-case search.
inline std::vector<ratio_row> comparison_grid(const problem_params& p,
                                              const instance& inst) {
    const int m = p.num_agents;
    std::vector<ratio_row> rows(6);
    rows[0].label = "det-sd/sd";
    rows[1].label = "det-sd/ov";
    rows[2].label = "det-ov/sd";
    rows[3].label = "det-ov/ov";
    rows[4].label = "rand-sd/sd";
    rows[5].label = "rand-ov/ov";
    for (int l = 0; l < m; ++l) {
        group_state s = group_state::prefix_of(inst, l);
        rat sd_sd = detail::cr_sd_piecewise(p, s);
        rat sd_ov = detail::cr_cross_piecewise(p, s);
        rat ov_ov = detail::cr_ov_piecewise(p, s);
        rows[0].exact.push_back(sd_sd);
        rows[1].exact.push_back(sd_ov);
        // the state-dependent ratio of the overall policy coincides with its
        // overall ratio at every state of this scenario
        rows[2].exact.push_back(ov_ov);
        rows[3].exact.push_back(ov_ov);
        rows[4].values.push_back(
            worst_case_cr_rand(p, density_kind::p_state_dependent,
                               objective::state_dependent, s)
                .ratio);
        rows[5].values.push_back(
            worst_case_cr_rand(p, density_kind::p_overall, objective::overall, s).ratio);
    }
    for (int r = 0; r < 4; ++r)
        for (const rat& v : rows[r].exact) rows[r].values.push_back(to_double(v));
    return rows;
}

/// CSV rendering, three decimals, round half to even. Deterministic rows
/// round the exact rationals; randomized rows round the search output.
inline std::string comparison_grid_csv(const problem_params& p, const instance& inst) {
    std::vector<ratio_row> rows = comparison_grid(p, inst);
    std::ostringstream out;
    out << "row";
    for (int l = 0; l < p.num_agents; ++l) out << ",ell" << l;
    out << '\n';
    for (const ratio_row& row : rows) {
        out << row.label;
        for (int l = 0; l < p.num_agents; ++l) {
            if (!row.exact.empty())
                out << ',' << format_fixed(row.exact[l], 3);
            else
                out << ',' << format_fixed(row.values[l], 3);
        }
        out << '\n';
    }
    return out.str();
}

/// Region of the three-piece overall ratio: A while the group pass is still
/// the cheaper endgame, B once individual passes win but the group pass
/// still beats paid-rent-plus-individuals, C past that.
inline char ratio_region(const problem_params& p, const group_state& s) {
    long long rem = p.num_agents - s.inactive_count;
    if (p.group_cost <= rem * p.individual_cost) return 'A';
    if (p.group_cost <= s.paid_cost() + rem * p.individual_cost) return 'B';
    return 'C';
}

/// (ell, ratio) series for one comparison subfigure: 'a' overall ratios of
/// both deterministic policies, 'b' state-dependent ratios of both, 'c' the
/// randomized policies under their own objectives.
inline std::string figure_series_csv(char subfigure) {
    problem_params p = figure_params();
    instance inst = figure_instance();
    std::vector<ratio_row> rows = comparison_grid(p, inst);
    int first, second;
    switch (subfigure) {
        case 'a': first = 1, second = 3; break;
        case 'b': first = 0, second = 2; break;
        case 'c': first = 4, second = 5; break;
        default: throw invalid_params("subfigure must be a, b, or c");
    }
    std::ostringstream out;
    out << "subfigure,series,ell,ratio,region\n";
    for (int idx : {first, second}) {
        const ratio_row& row = rows[idx];
        for (int l = 0; l < p.num_agents; ++l) {
            group_state s = group_state::prefix_of(inst, l);
            out << subfigure << ',' << row.label << ',' << l << ','
                << (row.exact.empty() ? format_fixed(row.values[l], 3)
                                      : format_fixed(row.exact[l], 3))
                << ',' << ratio_region(p, s) << '\n';
        }
    }
    return out.str();
}

}  // namespace skirental
