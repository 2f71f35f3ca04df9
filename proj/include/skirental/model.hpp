#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "skirental/errors.hpp"
#include "skirental/rational.hpp"

namespace skirental {

/// Problem tuple (M, B, G): M agents, individual pass B, group pass G.
/// Nontrivial only when B < G < M*B; outside that range one of the passes
/// is never worth buying.
struct problem_params {
    int num_agents = 0;       // M
    long long individual_cost = 0;  // B
    long long group_cost = 0;       // G

    static problem_params validated(int m, long long b, long long g) {
        if (m < 1) throw invalid_params("num_agents must be >= 1");
        if (b < 1) throw invalid_params("individual_cost must be >= 1");
        if (g <= b)
            throw invalid_params("group_cost must exceed individual_cost (G > B)");
        if (g >= static_cast<long long>(m) * b)
            throw invalid_params("group cost must undercut M individual passes (G < M*B)");
        return problem_params{m, b, g};
    }

    /// No bounds check. Test harnesses use this to embed degenerate cases
    /// (e.g. the single-agent problem, where B < G < M*B cannot hold).
    static problem_params unchecked(int m, long long b, long long g) {
        return problem_params{m, b, g};
    }
};

inline problem_params validate_params(int m, long long b, long long g) {
    return problem_params::validated(m, b, g);
}

/// Active-day counts, one per agent, kept sorted ascending. Agents are
/// labelled in the order their days elapse.
struct instance {
    std::vector<long long> active_days;

    static instance from_sorted(const problem_params& p, std::vector<long long> days) {
        if (static_cast<int>(days.size()) != p.num_agents)
            throw invalid_params("instance length must equal num_agents");
        for (std::size_t i = 0; i < days.size(); ++i) {
            if (days[i] < 1) throw invalid_params("active days must be >= 1");
            if (i > 0 && days[i] < days[i - 1])
                throw invalid_params("active days must be nondecreasing");
        }
        return instance{std::move(days)};
    }

    static instance from_unsorted(const problem_params& p, std::vector<long long> days) {
        std::sort(days.begin(), days.end());
        return from_sorted(p, std::move(days));
    }

    int size() const { return static_cast<int>(active_days.size()); }
};

/// Revealed state: the l agents whose days have elapsed, with their day
/// counts. N_0 := 0 when nothing is revealed yet, so day-indexed formulas
/// are defined at l = 0.
struct group_state {
    int inactive_count = 0;                // l
    std::vector<long long> revealed_days;  // first l entries of the instance

    static group_state initial() { return group_state{}; }

    static group_state of(std::vector<long long> revealed) {
        group_state s;
        s.inactive_count = static_cast<int>(revealed.size());
        for (std::size_t i = 0; i < revealed.size(); ++i) {
            if (revealed[i] < 1) throw invalid_params("revealed days must be >= 1");
            if (i > 0 && revealed[i] < revealed[i - 1])
                throw invalid_params("revealed days must be nondecreasing");
        }
        s.revealed_days = std::move(revealed);
        return s;
    }

    /// State after the first l agents of `inst` went inactive.
    static group_state prefix_of(const instance& inst, int l) {
        if (l < 0 || l > inst.size()) throw state_mismatch("prefix length out of range");
        return of({inst.active_days.begin(), inst.active_days.begin() + l});
    }

    long long last_revealed() const {  // N_l, 0 at l = 0
        return revealed_days.empty() ? 0 : revealed_days.back();
    }

    long long paid_cost() const {  // sum of revealed days
        return std::accumulate(revealed_days.begin(), revealed_days.end(), 0LL);
    }

    bool is_prefix_of(const instance& inst) const {
        if (inactive_count > inst.size()) return false;
        return std::equal(revealed_days.begin(), revealed_days.end(),
                          inst.active_days.begin());
    }
};

enum class action_kind { rent, buy_individual, buy_group, leave };

/// One agent-day decision. `participants` is the size L of the pool that a
/// buy_group action is split over.
struct action {
    action_kind kind = action_kind::leave;
    int participants = 1;

    static action rent() { return {action_kind::rent, 1}; }
    static action buy_individual() { return {action_kind::buy_individual, 1}; }
    static action buy_group(int l) { return {action_kind::buy_group, l}; }
    static action leave() { return {action_kind::leave, 1}; }
};

inline rat action_cost(const problem_params& p, const action& a) {
    switch (a.kind) {
        case action_kind::rent: return rat(1);
        case action_kind::buy_individual: return rat(p.individual_cost);
        case action_kind::buy_group: return rat(p.group_cost, a.participants);
        case action_kind::leave: return rat(0);
    }
    return rat(0);
}

struct trace_record {
    long long day = 0;
    int agent = 0;  // zero-based
    action act;
};

/// Per-agent accumulated cost plus the full day-by-day action trace.
struct cost_ledger {
    std::vector<rat> per_agent_cost;
    std::vector<trace_record> trace;

    explicit cost_ledger(int m = 0) : per_agent_cost(m, rat(0)) {}

    rat total() const {
        rat s = 0;
        for (const auto& c : per_agent_cost) s += c;
        return s;
    }

    void record(const problem_params& p, long long day, int agent, action a) {
        per_agent_cost[agent] += action_cost(p, a);
        trace.push_back({day, agent, a});
    }
};

/// Offline optimum with full knowledge: group pass, or per-agent
/// min(rent-out, individual), whichever is cheaper.
inline long long ovopt(const problem_params& p, const instance& inst) {
    long long indiv = 0;
    for (long long n : inst.active_days) indiv += std::min(p.individual_cost, n);
    return std::min(p.group_cost, indiv);
}

/// Offline optimum conditioned on the revealed prefix: the paid days are
/// charged at rent rate, the remainder re-optimized.
inline long long sdopt(const problem_params& p, const instance& inst,
                       const group_state& s) {
    if (!s.is_prefix_of(inst))
        throw state_mismatch("revealed days are not a prefix of the instance");
    long long rest = 0;
    for (int i = s.inactive_count; i < inst.size(); ++i)
        rest += std::min(inst.active_days[i], p.individual_cost);
    return s.paid_cost() + std::min(p.group_cost, rest);
}

/// Number of agents whose individually-rational offline action is to rent
/// every active day: the first l with N_{l+1} > min(G/(M-l), B), or M when
/// no agent prefers to buy.
inline int ell_star(const problem_params& p, const instance& inst) {
    for (int l = 0; l < p.num_agents; ++l) {
        rat share = std::min(rat(p.group_cost, p.num_agents - l), rat(p.individual_cost));
        if (rat(inst.active_days[l]) > share) return l;
    }
    return p.num_agents;
}

/// Per-agent cost of the individually-rational offline profile: agents up
/// to ell_star rent out their days, the rest buy at the cheaper of the
/// group share and the individual pass. Shares stay exact rationals.
inline std::vector<rat> indopt(const problem_params& p, const instance& inst) {
    int ls = ell_star(p, inst);
    std::vector<rat> out;
    out.reserve(inst.size());
    rat buy_price = ls < p.num_agents
                        ? std::min(rat(p.group_cost, p.num_agents - ls), rat(p.individual_cost))
                        : rat(p.individual_cost);
    for (int m = 0; m < inst.size(); ++m)
        out.push_back(m < ls ? rat(inst.active_days[m]) : buy_price);
    return out;
}

/// One-shot offline strategies for the equilibrium check.
enum class offline_strategy { rent_all, buy_individual, join_group };

inline const char* to_string(offline_strategy s) {
    switch (s) {
        case offline_strategy::rent_all: return "rent";
        case offline_strategy::buy_individual: return "individual";
        case offline_strategy::join_group: return "group";
    }
    return "?";
}

struct nash_deviation {
    int agent = 0;
    offline_strategy from = offline_strategy::rent_all;
    offline_strategy to = offline_strategy::rent_all;
    rat profile_cost;
    rat deviation_cost;
};

struct nash_report {
    bool is_equilibrium = true;
    std::vector<offline_strategy> profile;
    std::vector<nash_deviation> deviations;  // strictly improving deviations
};

namespace detail {
inline rat offline_cost(const problem_params& p, long long days, offline_strategy s,
                        int group_size) {
    switch (s) {
        case offline_strategy::rent_all: return rat(days);
        case offline_strategy::buy_individual: return rat(p.individual_cost);
        case offline_strategy::join_group:
            return rat(p.group_cost, std::max(group_size, 1));
    }
    return rat(0);
}
}  // namespace detail

/// Builds the offline profile implied by indopt (renters up to ell_star,
/// buyers take the group pass when the equal share undercuts B) and checks
/// every unilateral deviation. Group shares are recomputed for the deviating
/// agent: leaving shrinks the pool it pays into, joining grows it.
inline nash_report nash_verify(const problem_params& p, const instance& inst) {
    const int m = p.num_agents;
    const int ls = ell_star(p, inst);
    nash_report rep;
    bool group_chosen =
        ls < m && rat(p.group_cost, m - ls) <= rat(p.individual_cost);
    for (int i = 0; i < m; ++i) {
        if (i < ls)
            rep.profile.push_back(offline_strategy::rent_all);
        else
            rep.profile.push_back(group_chosen ? offline_strategy::join_group
                                               : offline_strategy::buy_individual);
    }
    int group_size = group_chosen ? m - ls : 0;

    for (int i = 0; i < m; ++i) {
        long long days = inst.active_days[i];
        offline_strategy cur = rep.profile[i];
        rat cur_cost = detail::offline_cost(p, days, cur, group_size);
        for (offline_strategy alt : {offline_strategy::rent_all,
                                     offline_strategy::buy_individual,
                                     offline_strategy::join_group}) {
            if (alt == cur) continue;
            // pool size as seen by the deviator
            int pool = group_size;
            if (cur == offline_strategy::join_group) --pool;
            if (alt == offline_strategy::join_group) ++pool;
            rat alt_cost = detail::offline_cost(p, days, alt, pool);
            if (alt_cost < cur_cost) {
                rep.is_equilibrium = false;
                rep.deviations.push_back({i, cur, alt, cur_cost, alt_cost});
            }
        }
    }
    return rep;
}

enum class objective { overall, state_dependent, individual_rational };

inline const char* to_string(objective o) {
    switch (o) {
        case objective::overall: return "ov";
        case objective::state_dependent: return "sd";
        case objective::individual_rational: return "ind";
    }
    return "?";
}

}  // namespace skirental
