#pragma once

#include <vector>

#include "skirental/rational.hpp"

namespace skirental {

/// Minimal dense exact simplex over rationals, two-phase with Bland's rule.
/// Sized for the small policy-mixture programs here (tens of variables);
/// no scaling, no sparsity.
///
/// minimize obj . x   s.t.  a[i] . x <= b[i]  (relation[i] = -1)
///                          a[i] . x  = b[i]  (relation[i] = 0)
///                          x >= 0, all b[i] >= 0.
struct lp_problem {
    std::vector<std::vector<rat>> a;
    std::vector<rat> b;
    std::vector<int> relation;
    std::vector<rat> objective;
};

struct lp_optimum {
    bool feasible = false;
    rat value = 0;
    std::vector<rat> x;
};

inline lp_optimum simplex_minimize(const lp_problem& prob) {
    const int m = static_cast<int>(prob.a.size());
    const int n = static_cast<int>(prob.objective.size());
    int slacks = 0, artificials = 0;
    for (int r : prob.relation) (r < 0 ? slacks : artificials) += 1;
    // <= rows also get an artificial only if needed; with b >= 0 the slack
    // serves as the initial basic variable.
    const int total = n + slacks + artificials;
    std::vector<std::vector<rat>> t(m, std::vector<rat>(total + 1, 0));
    std::vector<int> basis(m, -1);
    int si = 0, ai = 0;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = prob.a[i][j];
        t[i][total] = prob.b[i];
        if (prob.relation[i] < 0) {
            t[i][n + si] = 1;
            basis[i] = n + si;
            ++si;
        } else {
            t[i][n + slacks + ai] = 1;
            basis[i] = n + slacks + ai;
            ++ai;
        }
    }

    auto pivot = [&](int row, int col) {
        rat pv = t[row][col];
        for (int j = 0; j <= total; ++j) t[row][j] /= pv;
        for (int i = 0; i < m; ++i) {
            if (i == row || t[i][col] == 0) continue;
            rat f = t[i][col];
            for (int j = 0; j <= total; ++j) t[i][j] -= f * t[row][j];
        }
        basis[row] = col;
    };

    // Runs simplex on the cost vector `cost`, considering only the first
    // `cols` columns for entering (phase 2 must not readmit artificials).
    // Bland's rule: smallest-index entering/leaving.
    auto run = [&](const std::vector<rat>& cost, int cols) {
        while (true) {
            // reduced costs: cost_j - cost_B . column_j
            int enter = -1;
            for (int j = 0; j < cols && enter < 0; ++j) {
                rat red = cost[j];
                for (int i = 0; i < m; ++i)
                    if (cost[basis[i]] != 0) red -= cost[basis[i]] * t[i][j];
                if (red < 0) enter = j;
            }
            if (enter < 0) break;
            int leave = -1;
            rat best_ratio = 0;
            for (int i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                rat ratio = t[i][total] / t[i][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter);
        }
        return true;
    };

    lp_optimum out;
    if (artificials > 0) {
        std::vector<rat> phase1(total, 0);
        for (int j = n + slacks; j < total; ++j) phase1[j] = 1;
        if (!run(phase1, total)) return out;
        rat infeas = 0;
        for (int i = 0; i < m; ++i)
            if (basis[i] >= n + slacks) infeas += t[i][total];
        if (infeas != 0) return out;
        // drive remaining artificials out of the basis where possible
        for (int i = 0; i < m; ++i) {
            if (basis[i] < n + slacks) continue;
            for (int j = 0; j < n + slacks; ++j) {
                if (t[i][j] != 0) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }
    std::vector<rat> phase2(total, 0);
    for (int j = 0; j < n; ++j) phase2[j] = prob.objective[j];
    if (!run(phase2, n + slacks)) return out;  // unbounded below

    out.feasible = true;
    out.x.assign(n, 0);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) out.x[basis[i]] = t[i][total];
    for (int j = 0; j < n; ++j) out.value += prob.objective[j] * out.x[j];
    return out;
}

}  // namespace skirental
