#pragma once

#include <string>
#include <vector>

#include "skirental/lp.hpp"
#include "skirental/model.hpp"
#include "skirental/quadrature.hpp"
#include "skirental/simplex.hpp"

namespace skirental {

/// Exhaustive comparison of fixed per-agent threshold vectors. The
/// `adaptive_symmetric` entries cover the richer family whose threshold is a
/// function of how many agents have left (one value per state); that family
/// contains the ceil(T(l)) policies.
struct dominance_report {
    rat best_symmetric_ratio = 0;
    rat best_asymmetric_ratio = 0;
    rat best_adaptive_symmetric_ratio = 0;
    std::vector<long long> symmetric_witness;
    std::vector<long long> asymmetric_witness;
    std::vector<long long> adaptive_symmetric_witness;
    bool verdict = false;  // best symmetric <= best asymmetric
    long long evaluations = 0;
};

namespace detail {

/// Cost of fixed per-agent thresholds on an ordered day assignment. Agents
/// sharing the maximal threshold pool a group purchase when still active at
/// that day and the pass undercuts their individual ones.
inline rat static_policy_cost(const problem_params& p,
                              const std::vector<long long>& thresholds,
                              const std::vector<long long>& days) {
    long long tmax = 0;
    for (long long t : thresholds) tmax = std::max(tmax, t);
    int pool = 0;
    for (std::size_t k = 0; k < days.size(); ++k)
        if (thresholds[k] == tmax && days[k] >= tmax) ++pool;
    bool group = pool > 0 && p.group_cost < static_cast<long long>(pool) * p.individual_cost;
    rat total = 0;
    for (std::size_t k = 0; k < days.size(); ++k) {
        if (days[k] < thresholds[k]) {
            total += days[k];
        } else if (thresholds[k] < tmax) {
            total += thresholds[k] - 1 + p.individual_cost;
        } else {
            total += thresholds[k] - 1;
            total += group ? rat(p.group_cost, pool) : rat(p.individual_cost);
        }
    }
    return total;
}

/// Cost of a state-indexed symmetric policy: all active agents use
/// thresholds[l] while l agents are inactive; buys fire at the first day at
/// or past the current threshold.
inline rat adaptive_policy_cost(const problem_params& p,
                                const std::vector<long long>& thresholds,
                                const std::vector<long long>& sorted_days) {
    const int m = static_cast<int>(sorted_days.size());
    int l = 0;
    long long day = 0;
    rat total = 0;
    while (l < m) {
        ++day;
        if (day >= thresholds[l]) {
            int remaining = m - l;
            total += std::min(rat(p.group_cost),
                              rat(remaining) * rat(p.individual_cost));
            return total;
        }
        for (int k = l; k < m; ++k)
            if (sorted_days[k] >= day) total += 1;
        while (l < m && sorted_days[l] == day) ++l;
    }
    return total;
}

inline long long ovopt_days(const problem_params& p, const std::vector<long long>& days) {
    long long indiv = 0;
    for (long long n : days) indiv += std::min(n, p.individual_cost);
    return std::min(p.group_cost, indiv);
}

template <typename Fn>
void for_each_tuple(int slots, long long lo, long long hi, Fn&& fn) {
    std::vector<long long> v(slots, lo);
    while (true) {
        fn(v);
        int i = slots - 1;
        while (i >= 0 && v[i] == hi) --i;
        if (i < 0) return;
        ++v[i];
        for (int j = i + 1; j < slots; ++j) v[j] = lo;
    }
}

}  // namespace detail

/// Enumerates every deterministic threshold vector in {1..horizon+1}^M and
/// each one's worst-case ratio over instances in {1..horizon}^M, then takes
/// minima over symmetric and asymmetric vectors. At l = 0 the overall and
/// state-dependent benchmarks coincide, so `obj` only picks the report
/// labeling. An incomplete enumeration is no oracle: past the node budget
/// this refuses instead of subsampling.
inline dominance_report brute_force_symmetric_dominance(
    const problem_params& p, long long horizon, objective obj,
    long long node_budget = default_node_budget()) {
    (void)obj;
    const int m = p.num_agents;
    if (m > 3) throw invalid_params("dominance brute force is sized for M <= 3");
    if (horizon < p.individual_cost)
        throw invalid_params("horizon must be at least B");

    long long policies = 1, instances = 1;
    for (int i = 0; i < m; ++i) {
        policies *= horizon + 1;
        instances *= horizon;
    }
    if (2 * policies * instances > node_budget)
        throw search_space_too_large("policy x instance grid exceeds node budget");

    dominance_report rep;
    rat best_sym = -1, best_asym = -1, best_adaptive = -1;
    long long evals = 0;

    detail::for_each_tuple(m, 1, horizon + 1, [&](const std::vector<long long>& tvec) {
        bool symmetric = true;
        for (int i = 1; i < m; ++i) symmetric &= tvec[i] == tvec[0];
        rat worst = 0;
        detail::for_each_tuple(m, 1, horizon, [&](const std::vector<long long>& days) {
            ++evals;
            rat r = detail::static_policy_cost(p, tvec, days) /
                    rat(detail::ovopt_days(p, days));
            if (r > worst) worst = r;
        });
        if (symmetric) {
            if (best_sym < 0 || worst < best_sym) {
                best_sym = worst;
                rep.symmetric_witness = tvec;
            }
        } else if (best_asym < 0 || worst < best_asym) {
            best_asym = worst;
            rep.asymmetric_witness = tvec;
        }
    });

    detail::for_each_tuple(m, 1, horizon + 1, [&](const std::vector<long long>& tvec) {
        rat worst = 0;
        // sorted instances suffice: the policy is agent-anonymous
        detail::for_each_tuple(m, 1, horizon, [&](const std::vector<long long>& days) {
            for (int i = 1; i < m; ++i)
                if (days[i] < days[i - 1]) return;
            ++evals;
            rat r = detail::adaptive_policy_cost(p, tvec, days) /
                    rat(detail::ovopt_days(p, days));
            if (r > worst) worst = r;
        });
        if (best_adaptive < 0 || worst < best_adaptive) {
            best_adaptive = worst;
            rep.adaptive_symmetric_witness = tvec;
        }
    });

    rep.best_symmetric_ratio = best_sym;
    rep.best_asymmetric_ratio = best_asym < 0 ? best_sym : best_asym;
    rep.best_adaptive_symmetric_ratio = best_adaptive;
    rep.verdict = rep.best_symmetric_ratio <= rep.best_asymmetric_ratio;
    rep.evaluations = evals;
    return rep;
}

// --- Yao-style randomized lower bound -------------------------------------

/// E[opt] under the exponential hard distribution (unit = G/M), computed by
/// quadrature on [0, 50] with the tail added analytically.
inline double yao_expected_opt(int num_agents) {
    const double m = num_agents;
    double body = integrate([&](double n) { return m * std::min(n, 1.0) * std::exp(-n); },
                            0.0, 50.0);
    return body + m * std::exp(-50.0);
}

/// E[cost] of the fixed-threshold policy T = t under the same distribution;
/// independent of t (it integrates to M).
inline double yao_expected_cost(int num_agents, double t) {
    const double m = num_agents;
    double rent = integrate([&](double n) { return m * n * std::exp(-n); }, 0.0, t);
    double buy = m * (t + 1.0) *
                 (integrate([](double n) { return std::exp(-n); }, t, 50.0) +
                  std::exp(-50.0));
    return rent + buy;
}

inline double yao_lower_bound(const problem_params& p) {
    return yao_expected_cost(p.num_agents, 1.0) / yao_expected_opt(p.num_agents);
}

// --- two-agent randomized symmetry ----------------------------------------

/// Outcome of rebuilding the two-agent mixture program and solving it with
/// the exact simplex, once over all columns and once restricted to the
/// symmetric family.
struct two_agent_symmetry_report {
    long long b = 0, g = 0, horizon = 0;
    bool condition_met = false;  // G <= 2B - 3, the elimination step's regime
    bool symmetric_support = false;
    rat full_value = 0;
    rat symmetric_value = 0;
    std::string status;  // "ok" or "condition_violated"
};

namespace detail {

struct two_agent_column {
    bool symmetric;
    long long a, b;  // symmetric: group day a, fallback individual day b
                     // asymmetric: agent 1 buys at a, agent 2 at b
};

inline rat two_agent_cost(const problem_params& p, const two_agent_column& col,
                          long long n1, long long n2) {
    if (!col.symmetric) {
        rat total = 0;
        total += n1 < col.a ? rat(n1) : rat(col.a - 1 + p.individual_cost);
        total += n2 < col.b ? rat(n2) : rat(col.b - 1 + p.individual_cost);
        return total;
    }
    long long nmin = std::min(n1, n2), nmax = std::max(n1, n2);
    if (nmin >= col.a)
        return rat(2 * (col.a - 1)) +
               std::min(rat(p.group_cost), rat(2 * p.individual_cost));
    if (nmax >= col.b) return rat(nmin + col.b - 1 + p.individual_cost);
    return rat(nmin + nmax);
}

}  // namespace detail

/// Builds the joint-policy columns (symmetric group-buy pairs plus ordered
/// asymmetric individual pairs), forms the min-ratio mixture program over
/// all day pairs, and checks whether restricting to the symmetric columns
/// costs anything. Exact arithmetic throughout, so the verdict is an
/// equality, not a tolerance.
inline two_agent_symmetry_report verify_two_agent_randomized_symmetry(
    long long b, long long g, long long horizon = 0) {
    if (!(b < g && g < 2 * b)) throw invalid_params("needs B < G < 2B");
    if (horizon <= 0) horizon = b;
    problem_params p = problem_params::validated(2, b, g);

    two_agent_symmetry_report rep;
    rep.b = b;
    rep.g = g;
    rep.horizon = horizon;
    rep.condition_met = g <= 2 * b - 3;
    rep.status = rep.condition_met ? "ok" : "condition_violated";

    std::vector<detail::two_agent_column> cols;
    cols.push_back({true, 1, 1});
    for (long long i = 2; i <= horizon; ++i)
        for (long long j = i; j <= horizon; ++j) cols.push_back({true, i, j});
    const int sym_count = static_cast<int>(cols.size());
    for (long long i = 1; i <= horizon; ++i)
        for (long long j = 1; j <= horizon; ++j)
            if (i != j) cols.push_back({false, i, j});

    auto solve = [&](int ncols) {
        lp_problem prob;
        const int n = ncols + 1;  // mixture weights + the ratio variable c
        prob.objective.assign(n, 0);
        prob.objective[ncols] = 1;
        for (long long n1 = 1; n1 <= horizon; ++n1) {
            for (long long n2 = 1; n2 <= horizon; ++n2) {
                std::vector<rat> row(n, 0);
                for (int c = 0; c < ncols; ++c)
                    row[c] = detail::two_agent_cost(p, cols[c], n1, n2);
                rat opt = std::min(rat(g), rat(std::min(n1, b) + std::min(n2, b)));
                row[ncols] = -opt;
                prob.a.push_back(std::move(row));
                prob.b.push_back(0);
                prob.relation.push_back(-1);
            }
        }
        std::vector<rat> norm(n, 0);
        for (int c = 0; c < ncols; ++c) norm[c] = 1;
        prob.a.push_back(std::move(norm));
        prob.b.push_back(1);
        prob.relation.push_back(0);
        return simplex_minimize(prob);
    };

    lp_optimum full = solve(static_cast<int>(cols.size()));
    lp_optimum sym = solve(sym_count);
    if (!full.feasible || !sym.feasible)
        throw std::logic_error("two-agent mixture program infeasible");
    rep.full_value = full.value;
    rep.symmetric_value = sym.value;
    rep.symmetric_support = sym.value == full.value;
    return rep;
}

}  // namespace skirental
