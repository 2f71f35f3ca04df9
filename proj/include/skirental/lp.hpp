#pragma once

#include <vector>

#include "skirental/deterministic.hpp"
#include "skirental/model.hpp"

namespace skirental {

enum class lp_kind { overall, state_dependent, individual_rational };

/// The tight constraint system a state's optimal density solves: one row per
/// adversary day N in the support, one column per buy-day probability.
/// Row entries are the (paid-cost-folded) policy cost pieces; `bench` holds
/// the benchmark cost multiplying the ratio variable c. Helper constants:
/// d_const = sum N_n + (M-l) N_l, h_const = (M-l) T(l).
struct lp_system {
    std::vector<long long> support;
    std::vector<std::vector<rat>> coeff;
    std::vector<rat> bench;
    rat d_const = 0;
    rat h_const = 0;
    rat threshold = 0;
    lp_kind kind = lp_kind::state_dependent;
};

inline lp_system build_state_lp(const problem_params& p, const group_state& s,
                                lp_kind kind) {
    rat t = kind == lp_kind::overall ? threshold_ov(p, s) : threshold_sd(p, s);
    if (!is_integer(t)) throw non_integer_threshold("state LP needs an integer threshold");
    const long long T = to_ll(ceil_rat(t));
    const long long nl = s.last_revealed();
    if (T <= nl) throw degenerate_threshold("LP support is empty (T <= N_l)");
    const long long rem = p.num_agents - s.inactive_count;
    const long long paid = s.paid_cost();

    lp_system sys;
    sys.kind = kind;
    sys.threshold = t;
    sys.d_const = rat(paid + rem * nl);
    sys.h_const = rat(rem) * t;
    for (long long day = nl + 1; day <= T; ++day) sys.support.push_back(day);

    const int n = static_cast<int>(sys.support.size());
    sys.coeff.assign(n, std::vector<rat>(n, 0));
    sys.bench.assign(n, 0);
    for (int r = 0; r < n; ++r) {
        const long long N = sys.support[r];
        for (int c = 0; c < n; ++c) {
            const long long tau = sys.support[c];
            rat entry;
            if (kind == lp_kind::individual_rational) {
                // per-agent: own rent plus the equal share t of the buy
                entry = tau <= N ? rat(tau - 1 - nl) + t : rat(N - nl);
                entry += nl;  // rent already paid by this agent
            } else {
                entry = tau <= N ? rat(rem * (tau - 1 - nl)) + sys.h_const
                                 : rat(rem * (N - nl));
                entry += sys.d_const;  // folds through sum(p) = 1
            }
            sys.coeff[r][c] = entry;
        }
        if (kind == lp_kind::individual_rational) {
            sys.bench[r] = std::min(rat(N), t);
        } else {
            std::vector<long long> days = s.revealed_days;
            days.insert(days.end(), rem, N);
            instance inst{days};
            sys.bench[r] = kind == lp_kind::overall ? rat(ovopt(p, inst))
                                                    : rat(sdopt(p, inst, s));
        }
    }
    return sys;
}

/// The two row-differencing passes: subtract each row's predecessor, then
/// each row's successor, leaving an upper-bidiagonal system.
inline void triangularize(lp_system& sys) {
    const int n = static_cast<int>(sys.support.size());
    for (int i = n - 1; i >= 1; --i) {
        for (int j = 0; j < n; ++j) sys.coeff[i][j] -= sys.coeff[i - 1][j];
        sys.bench[i] -= sys.bench[i - 1];
    }
    for (int i = 0; i < n - 1; ++i) {
        for (int j = 0; j < n; ++j) sys.coeff[i][j] -= sys.coeff[i + 1][j];
        sys.bench[i] -= sys.bench[i + 1];
    }
}

inline bool is_upper_triangular(const lp_system& sys) {
    const int n = static_cast<int>(sys.support.size());
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (sys.coeff[i][j] != 0) return false;
    return true;
}

struct lp_solution {
    std::vector<long long> support;
    std::vector<rat> mass;
    rat ratio_constant = 0;
};

/// Back-substitute the triangularized system with the normalization
/// sum(mass) = 1. Every mass is proportional to c, so the normalization
/// pins both.
inline lp_solution solve_lp(lp_system sys) {
    triangularize(sys);
    if (!is_upper_triangular(sys)) throw std::logic_error("LP did not triangularize");
    const int n = static_cast<int>(sys.support.size());
    std::vector<rat> beta(n, 0);  // mass_i = beta_i * c
    for (int i = n - 1; i >= 0; --i) {
        rat acc = sys.bench[i];
        for (int j = i + 1; j < n; ++j) acc -= sys.coeff[i][j] * beta[j];
        beta[i] = acc / sys.coeff[i][i];
    }
    rat total = 0;
    for (const rat& b : beta) total += b;
    lp_solution sol;
    sol.support = sys.support;
    sol.ratio_constant = 1 / total;
    for (rat& b : beta) sol.mass.push_back(b * sol.ratio_constant);
    return sol;
}

inline lp_solution solve_state_lp(const problem_params& p, const group_state& s,
                                  lp_kind kind) {
    return solve_lp(build_state_lp(p, s, kind));
}

/// The all-agents-active system with T = G/M (valid: G < M*B forces
/// G/M < B, so the threshold never clamps).
inline lp_solution solve_homogeneous_lp(const problem_params& p) {
    if (p.group_cost % p.num_agents != 0)
        throw non_integer_threshold("homogeneous LP needs G/M integer");
    return solve_state_lp(p, group_state::initial(), lp_kind::state_dependent);
}

}  // namespace skirental
