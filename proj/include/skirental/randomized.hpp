#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "skirental/deterministic.hpp"
#include "skirental/model.hpp"

namespace skirental {

enum class density_kind { p_overall, p_state_dependent, q_individual, homogeneous };

inline const char* to_string(density_kind k) {
    switch (k) {
        case density_kind::p_overall: return "p-ov";
        case density_kind::p_state_dependent: return "p-sd";
        case density_kind::q_individual: return "q-ind";
        case density_kind::homogeneous: return "homog";
    }
    return "?";
}

/// Discrete distribution over candidate buy days {N_l+1, ..., ceil(T)}.
/// For non-integer T the closed forms are evaluated at the exact real T and
/// the masses renormalized; the deficit that was divided out is kept for
/// reporting.
struct threshold_density {
    density_kind kind = density_kind::p_state_dependent;
    int ell = 0;
    long long first_day = 1;
    std::vector<double> mass;
    rat threshold = 0;        // the real T the formulas were evaluated at
    double normalizer = 1.0;  // g (or h) from the matching ratio constant
    double renorm_deficit = 0.0;  // sum(mass) - 1 before renormalization
    bool renormalized = false;

    int size() const { return static_cast<int>(mass.size()); }
    long long day(int i) const { return first_day + i; }
    long long last_day() const { return first_day + size() - 1; }
};

/// Ratio constant g for the group densities.
inline double norm_g(const problem_params& p, const group_state& s, const rat& t) {
    if (t <= 1) throw degenerate_threshold("norm_g needs T > 1");
    const double T = to_double(t);
    const double nl = static_cast<double>(s.last_revealed());
    const double rem = p.num_agents - s.inactive_count;
    const double paid = static_cast<double>(s.paid_cost());
    const double K = paid + rem * (nl + T);
    const double A = std::pow(1.0 - 1.0 / T, T - nl - 1.0);
    const double denom = 1.0 - rem * (T - 1.0) / K * A;
    if (!(denom > 0)) throw degenerate_threshold("norm_g denominator nonpositive");
    return 1.0 / denom;
}

/// Ratio constant h for the individual-rational density. Depends only on
/// the last revealed day and T.
inline double norm_h(const group_state& s, const rat& t) {
    if (t <= 1) throw degenerate_threshold("norm_h needs T > 1");
    const double T = to_double(t);
    const double nl = static_cast<double>(s.last_revealed());
    const double A = std::pow(1.0 - 1.0 / T, T - nl - 1.0);
    const double denom = (T * T + nl) / (T * (T + nl)) - (T - 1.0) / (T + nl) * A;
    if (!(denom > 0)) throw degenerate_threshold("norm_h denominator nonpositive");
    return 1.0 / denom;
}

namespace detail {

inline threshold_density finalize_density(threshold_density d) {
    double sum = 0.0, comp = 0.0;
    for (double x : d.mass) {  // Kahan
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    d.renorm_deficit = sum - 1.0;
    if (std::fabs(d.renorm_deficit) > 1e-9) {
        for (double& x : d.mass) x /= sum;
        d.renormalized = true;
    }
    return d;
}

}  // namespace detail

inline threshold_density density_p(const problem_params& p, const group_state& s,
                                   const rat& t, density_kind kind) {
    const long long nl = s.last_revealed();
    if (t <= nl) throw degenerate_threshold("density support is empty (T <= N_l)");
    threshold_density d;
    d.kind = kind;
    d.ell = s.inactive_count;
    d.first_day = nl + 1;
    d.threshold = t;
    const long long hi = to_ll(ceil_rat(t));
    if (hi <= nl + 1) {
        d.mass = {1.0};
        return d;
    }
    const double T = to_double(t);
    const double rem = p.num_agents - s.inactive_count;
    const double paid = static_cast<double>(s.paid_cost());
    const double g = norm_g(p, s, t);
    d.normalizer = g;
    const double K = paid + rem * (nl + T);
    for (long long day = nl + 1; day <= hi; ++day) {
        double m;
        if (day == nl + 1)
            m = (paid + rem * (nl + 1)) * g / K * std::pow(1.0 - 1.0 / T, T - day);
        else
            m = g / T * std::pow(1.0 - 1.0 / T, T - day);
        d.mass.push_back(m);
    }
    return detail::finalize_density(std::move(d));
}

/// Individual-rational density; depends only on the last revealed day and T
/// (the params stay in the signature for symmetry with density_p). The first
/// branch has no validity guarantee; when it evaluates negative the state is
/// reported rather than patched.
inline threshold_density density_q(const problem_params& /*p*/, const group_state& s,
                                   const rat& t) {
    const long long nl = s.last_revealed();
    if (t <= nl) throw degenerate_threshold("density support is empty (T <= N_l)");
    threshold_density d;
    d.kind = density_kind::q_individual;
    d.ell = s.inactive_count;
    d.first_day = nl + 1;
    d.threshold = t;
    const long long hi = to_ll(ceil_rat(t));
    if (hi <= nl + 1) {
        d.mass = {1.0};
        return d;
    }
    const double T = to_double(t);
    const double h = norm_h(s, t);
    d.normalizer = h;
    const double nld = static_cast<double>(nl);
    for (long long day = nl + 1; day <= hi; ++day) {
        double m;
        if (day == nl + 1)
            m = h / T *
                ((nld + 1.0) * (T - 1.0) / (nld + T) * std::pow(1.0 - 1.0 / T, T - nld - 2.0) -
                 nld * (T - 1.0) / (nld + T));
        else
            m = h / T * std::pow(1.0 - 1.0 / T, T - day);
        if (m < -1e-12)
            throw negative_mass("individual-rational density has a negative first branch at N_l=" +
                                std::to_string(nl) + ", T=" + std::to_string(T));
        d.mass.push_back(m);
    }
    return detail::finalize_density(std::move(d));
}

/// The day-one distribution for identical agents: density_p at the initial
/// state with T = G/M.
inline threshold_density homogeneous_density(const problem_params& p) {
    return density_p(p, group_state::initial(), rat(p.group_cost, p.num_agents),
                     density_kind::homogeneous);
}

inline rat density_threshold(density_kind kind, const problem_params& p,
                             const group_state& s) {
    switch (kind) {
        case density_kind::p_overall: return threshold_ov(p, s);
        case density_kind::p_state_dependent:
        case density_kind::q_individual: return threshold_sd(p, s);
        case density_kind::homogeneous: return rat(p.group_cost, p.num_agents);
    }
    return rat(0);
}

inline threshold_density density_for(density_kind kind, const problem_params& p,
                                     const group_state& s) {
    rat t = density_threshold(kind, p, s);
    if (kind == density_kind::q_individual) return density_q(p, s, t);
    return density_p(p, s, t, kind);
}

/// Inverse-CDF draw. Uniform bits come straight from the engine (53-bit
/// mantissa trick) so a fixed seed reproduces the same days on any platform.
inline long long sample_threshold(const threshold_density& d, std::mt19937_64& rng) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double acc = 0.0;
    for (int i = 0; i < d.size(); ++i) {
        acc += d.mass[i];
        if (u < acc) return d.day(i);
    }
    return d.last_day();
}

/// One sampled run: draw a buy day at the start, rent until it, buy the
/// cheaper of group and individual passes for the remaining agents, and
/// redraw whenever agents go inactive first. The homogeneous kind keeps its
/// initial draw. Per-run engines derive from a master seed as seed + run
/// index.
inline cost_ledger run_randomized(const problem_params& p, const instance& inst,
                                  density_kind kind, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int m = p.num_agents;
    cost_ledger ledger(m);
    int l = 0;
    group_state state = group_state::initial();
    long long buy_day = sample_threshold(density_for(kind, p, state), rng);
    long long day = 0;
    while (l < m) {
        ++day;
        if (day >= buy_day) {
            int remaining = m - l;
            bool group = p.group_cost < static_cast<long long>(remaining) * p.individual_cost;
            for (int a = 0; a < m; ++a) {
                if (a < l)
                    ledger.record(p, day, a, action::leave());
                else
                    ledger.record(p, day, a,
                                  group ? action::buy_group(remaining)
                                        : action::buy_individual());
            }
            return ledger;
        }
        for (int a = 0; a < m; ++a)
            ledger.record(p, day, a, a < l ? action::leave() : action::rent());
        int k = 0;
        while (l + k < m && inst.active_days[l + k] == day) ++k;
        if (k > 0) {
            l += k;
            if (l < m && kind != density_kind::homogeneous) {
                state = group_state::prefix_of(inst, l);
                buy_day = sample_threshold(density_for(kind, p, state), rng);
            }
        }
    }
    return ledger;
}

/// How a group purchase is charged when evaluating expectations. `ledger`
/// is what the run engine actually spends (pass costs G). `group_residual`
/// prices it at min(G - revealed rent, remaining * B), the equivalent cost
/// the overall objective's ratio constants are defined under; revealed rent
/// counts once as irrevocable loss and is netted out of the pass.
enum class cost_accounting { ledger, group_residual };

namespace detail {

inline double buy_cost(const problem_params& p, const group_state& s,
                       cost_accounting acc) {
    const long long rem = p.num_agents - s.inactive_count;
    const long long indiv = rem * p.individual_cost;
    if (acc == cost_accounting::group_residual)
        return static_cast<double>(std::min(p.group_cost - s.paid_cost(), indiv));
    return static_cast<double>(std::min(p.group_cost, indiv));
}

inline double expected_future(const problem_params& p, const instance& inst, int l,
                              density_kind kind, cost_accounting acc) {
    const int m = p.num_agents;
    if (l >= m) return 0.0;
    group_state state = group_state::prefix_of(inst, l);
    threshold_density den = density_for(kind, p, state);
    const long long nl = state.last_revealed();
    const double rem = m - l;
    const long long d = inst.active_days[l];
    int k = 1;
    while (l + k < m && inst.active_days[l + k] == d) ++k;
    double tail = -1.0;
    double e = 0.0, comp = 0.0;
    for (int i = 0; i < den.size(); ++i) {
        long long tau = den.day(i);
        double branch;
        if (tau <= d) {
            branch = rem * static_cast<double>(tau - 1 - nl) + buy_cost(p, state, acc);
        } else {
            if (tail < 0)
                tail = rem * static_cast<double>(d - nl) +
                       expected_future(p, inst, l + k, kind, acc);
            branch = tail;
        }
        double y = den.mass[i] * branch - comp;
        double t = e + y;
        comp = (t - e) - y;
        e = t;
    }
    return e;
}

/// Expected cost of one fixed sampled day over the whole instance (the
/// homogeneous policy never redraws).
inline double fixed_day_cost(const problem_params& p, const instance& inst,
                             long long tau) {
    long long total = 0;
    long long actives = 0;
    for (long long n : inst.active_days) {
        if (n >= tau)
            ++actives;
        else
            total += n;
    }
    if (actives == 0) return static_cast<double>(total);
    long long buy = std::min(p.group_cost, actives * p.individual_cost);
    return static_cast<double>(total + actives * (tau - 1) + buy);
}

}  // namespace detail

/// Expectation of the run cost, starting from the state where the first
/// `start_ell` agents of the instance have gone inactive (everyone rented up
/// to that point). Probability-weighted recursion over the sampled days,
/// branching on whether the next inactivation precedes the draw.
inline double expected_cost(const problem_params& p, const instance& inst,
                            int start_ell, density_kind kind,
                            cost_accounting acc = cost_accounting::ledger) {
    group_state s = group_state::prefix_of(inst, start_ell);
    double paid = static_cast<double>(s.paid_cost()) +
                  static_cast<double>(p.num_agents - start_ell) *
                      static_cast<double>(s.last_revealed());
    if (kind == density_kind::homogeneous) {
        if (start_ell != 0) throw invalid_params("homogeneous policy starts at l = 0");
        threshold_density den = homogeneous_density(p);
        double e = 0.0;
        for (int i = 0; i < den.size(); ++i)
            e += den.mass[i] * detail::fixed_day_cost(p, inst, den.day(i));
        return e;
    }
    return paid + detail::expected_future(p, inst, start_ell, kind, acc);
}

inline double expected_cost_exact(const problem_params& p, const instance& inst,
                                  density_kind kind) {
    return expected_cost(p, inst, 0, kind, cost_accounting::ledger);
}

/// Expected cost borne by the first still-active agent alone (its rent up to
/// now, future rent, and its share of whichever pass is bought).
inline double expected_agent_cost(const problem_params& p, const instance& inst,
                                  int start_ell, density_kind kind) {
    struct walker {
        const problem_params& p;
        const instance& inst;
        density_kind kind;
        double rec(int l, long long agent_day) {
            group_state state = group_state::prefix_of(inst, l);
            threshold_density den = density_for(kind, p, state);
            const long long nl = state.last_revealed();
            const int rem = p.num_agents - l;
            const long long d = inst.active_days[l];
            int k = 1;
            while (l + k < p.num_agents && inst.active_days[l + k] == d) ++k;
            double share = to_double(std::min(rat(p.group_cost, rem),
                                              rat(p.individual_cost)));
            double tail = -1.0;
            double e = 0.0;
            for (int i = 0; i < den.size(); ++i) {
                long long tau = den.day(i);
                if (tau <= d) {
                    e += den.mass[i] * (static_cast<double>(tau - 1 - nl) + share);
                } else {
                    if (tail < 0) {
                        tail = static_cast<double>(d - nl);
                        if (agent_day > d) tail += rec(l + k, agent_day);
                    }
                    e += den.mass[i] * tail;
                }
            }
            return e;
        }
    };
    if (start_ell >= p.num_agents) throw invalid_params("no active agents left");
    group_state s = group_state::prefix_of(inst, start_ell);
    walker w{p, inst, kind};
    return static_cast<double>(s.last_revealed()) +
           w.rec(start_ell, inst.active_days[start_ell]);
}

/// Worst-case ratio of a randomized policy from a revealed state. The
/// headline value maximizes over identical completions; a full
/// sorted-completion sweep (honest redraw semantics) is attached when at
/// most four agents remain. Overall-objective ratios use the
/// group_residual accounting; see cost_accounting.
inline cr_report worst_case_cr_rand(const problem_params& p, density_kind kind,
                                    objective obj, const group_state& s,
                                    long long day_cap = 0,
                                    long long node_budget = default_node_budget()) {
    const int remaining = p.num_agents - s.inactive_count;
    if (remaining < 1) throw invalid_params("no active agents left");
    if (day_cap <= 0) day_cap = 2 * p.individual_cost + s.last_revealed();
    const long long lo = s.last_revealed() + 1;
    const cost_accounting acc = obj == objective::overall
                                    ? cost_accounting::group_residual
                                    : cost_accounting::ledger;

    cr_report rep;
    rep.obj = obj;
    rep.ell = s.inactive_count;
    rep.revealed = s.revealed_days;

    auto ratio_of = [&](const std::vector<long long>& days) {
        instance inst{days};
        if (obj == objective::individual_rational) {
            double e = expected_agent_cost(p, inst, s.inactive_count, kind);
            rat opt_m = std::min(rat(inst.active_days[s.inactive_count]),
                                 threshold_sd(p, s));
            return e / to_double(opt_m);
        }
        double e = expected_cost(p, inst, s.inactive_count, kind, acc);
        return e / static_cast<double>(detail::benchmark(p, inst, s, obj));
    };

    double best = -1.0;
    for (long long n = lo; n <= day_cap; ++n) {
        std::vector<long long> days = s.revealed_days;
        days.insert(days.end(), remaining, n);
        double r = ratio_of(days);
        if (r > best) {
            best = r;
            rep.witness = days;
        }
    }
    rep.ratio = best;

    if (remaining <= 4 && obj != objective::individual_rational) {
        if (detail::count_sorted_completions(remaining, day_cap - lo + 1) > node_budget)
            throw search_space_too_large("sorted completion space exceeds node budget");
        cr_report::sweep_result sweep;
        double sweep_best = -1.0;
        sweep.completions = detail::for_each_sorted_completion(
            s.revealed_days, remaining, lo, day_cap,
            [&](const std::vector<long long>& days) {
                double r = ratio_of(days);
                if (r > sweep_best) {
                    sweep_best = r;
                    sweep.witness = days;
                }
            });
        sweep.max_ratio = sweep_best;
        rep.full_sweep = sweep;
    }
    return rep;
}

struct monte_carlo_report {
    long long n = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double exact = 0.0;
    double z_score = 0.0;
};

/// Seeded Monte Carlo estimate of the run cost against the exact
/// expectation. Run i uses engine seed `seed + i`.
inline monte_carlo_report monte_carlo(const problem_params& p, const instance& inst,
                                      density_kind kind, long long n,
                                      std::uint64_t seed) {
    monte_carlo_report rep;
    rep.n = n;
    double mean = 0.0, m2 = 0.0;
    for (long long i = 0; i < n; ++i) {
        double x = to_double(run_randomized(p, inst, kind, seed + static_cast<std::uint64_t>(i)).total());
        double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
    }
    rep.mean = mean;
    double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    rep.std_error = std::sqrt(var / static_cast<double>(n));
    rep.exact = expected_cost_exact(p, inst, kind);
    rep.z_score = rep.std_error > 0 ? (rep.mean - rep.exact) / rep.std_error : 0.0;
    return rep;
}

}  // namespace skirental
