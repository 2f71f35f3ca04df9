#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "skirental/lp.hpp"
#include "skirental/randomized.hpp"
#include "skirental/simplex.hpp"

using namespace skirental;

TEST_CASE("homogeneous LP reproduces the geometric density") {
    SECTION("(M=10, G=60)") {
        auto p = problem_params::validated(10, 10, 60);
        auto sol = solve_homogeneous_lp(p);
        REQUIRE(sol.mass.size() == 6);
        CHECK(sol.ratio_constant == rat(46656, 31031));  // 1/(1-(5/6)^6)
        // mass_t proportional to (1/6)(5/6)^(6-t), scaled by the constant
        for (int t = 1; t <= 6; ++t) {
            rat expected = sol.ratio_constant * rat(1, 6);
            for (int k = 0; k < 6 - t; ++k) expected *= rat(5, 6);
            CHECK(sol.mass[t - 1] == expected);
        }
    }
    SECTION("(M=2, G=4)") {
        auto p = problem_params::validated(2, 3, 4);
        auto sol = solve_homogeneous_lp(p);
        REQUIRE(sol.mass.size() == 2);
        CHECK(sol.ratio_constant == rat(4, 3));  // 1/(1 - 1/4)
        CHECK(sol.mass[0] == rat(4, 3) * rat(1, 2) * rat(1, 2));
        CHECK(sol.mass[1] == rat(4, 3) * rat(1, 2));
    }
    SECTION("G/M = 1 collapses to an immediate buy") {
        auto p = problem_params::unchecked(4, 2, 4);
        auto sol = solve_homogeneous_lp(p);
        REQUIRE(sol.mass.size() == 1);
        CHECK(sol.mass[0] == 1);
        CHECK(sol.ratio_constant == 1);
    }
    SECTION("non-divisible G/M is rejected") {
        CHECK_THROWS_AS(solve_homogeneous_lp(problem_params::validated(3, 4, 7)),
                        non_integer_threshold);
    }
}

TEST_CASE("triangularization leaves exact zeros below the diagonal") {
    auto p = problem_params::validated(10, 10, 60);
    instance fig{{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}};
    for (int l : {0, 5, 7, 8}) {
        group_state s = group_state::prefix_of(fig, l);
        for (lp_kind kind : {lp_kind::state_dependent, lp_kind::individual_rational}) {
            auto sys = build_state_lp(p, s, kind);
            triangularize(sys);
            CHECK(is_upper_triangular(sys));
        }
    }
}

TEST_CASE("state LP equals the closed-form density and constant") {
    instance fig{{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}};
    auto p = problem_params::validated(10, 10, 60);

    SECTION("state-dependent kinds across the benchmark scenario") {
        for (int l : {0, 4, 5, 6, 7, 8, 9}) {
            group_state s = group_state::prefix_of(fig, l);
            auto sol = solve_state_lp(p, s, lp_kind::state_dependent);
            auto den = density_p(p, s, threshold_sd(p, s), density_kind::p_state_dependent);
            double g = norm_g(p, s, threshold_sd(p, s));
            REQUIRE(static_cast<int>(sol.mass.size()) == den.size());
            CHECK(std::fabs(to_double(sol.ratio_constant) - g) < 1e-9);
            for (std::size_t i = 0; i < sol.mass.size(); ++i)
                CHECK(std::fabs(to_double(sol.mass[i]) - den.mass[i]) < 1e-9);
        }
    }
    SECTION("overall kind at its integer-threshold states") {
        for (int l : {0, 5, 7, 8, 9}) {
            group_state s = group_state::prefix_of(fig, l);
            auto sol = solve_state_lp(p, s, lp_kind::overall);
            auto den = density_p(p, s, threshold_ov(p, s), density_kind::p_overall);
            double g = norm_g(p, s, threshold_ov(p, s));
            CHECK(std::fabs(to_double(sol.ratio_constant) - g) < 1e-9);
            for (std::size_t i = 0; i < sol.mass.size(); ++i)
                CHECK(std::fabs(to_double(sol.mass[i]) - den.mass[i]) < 1e-9);
        }
    }
    SECTION("individual kind, single remaining agent, classical solution") {
        auto p1 = problem_params::unchecked(1, 4, 9);
        auto sol = solve_state_lp(p1, group_state::initial(), lp_kind::individual_rational);
        auto den = density_q(p1, group_state::initial(), rat(4));
        CHECK(std::fabs(to_double(sol.ratio_constant) -
                        1.0 / (1.0 - std::pow(0.75, 4.0))) < 1e-12);
        for (std::size_t i = 0; i < sol.mass.size(); ++i)
            CHECK(std::fabs(to_double(sol.mass[i]) - den.mass[i]) < 1e-9);
    }
    SECTION("individual kind with revealed history") {
        // With revealed days the printed individual-rational density is not
        // the solution of its own constraint system (its constant can exceed
        // 2 and its first branch can go negative); the system's solution is
        //   c   = 1 / (1 - (T-1)/(N_l+T) * (1-1/T)^(T-N_l-1))
        //   q_1 = (N_l+1) c (1-1/T)^(T-N_l-1) / (N_l+T),  geometric tail c/T.
        // The LP must reproduce that, agreeing with density_q only in the
        // tail's geometric ratio.
        auto pr = problem_params::validated(10, 10, 60);
        group_state s = group_state::prefix_of(fig, 8);  // N_l = 8, T = 10
        auto sol = solve_state_lp(pr, s, lp_kind::individual_rational);
        REQUIRE(sol.mass.size() == 2);
        CHECK(sol.ratio_constant == rat(20, 11));
        CHECK(sol.mass[0] == rat(9, 11));
        CHECK(sol.mass[1] == rat(2, 11));
        auto den = density_q(pr, s, threshold_sd(pr, s));
        REQUIRE(den.size() == 2);
        CHECK(std::fabs(den.mass[0] / den.mass[1] -
                        to_double(sol.mass[0] / sol.mass[1])) > 1e-3);

        // all constraints of the original system hold with equality
        auto sys = build_state_lp(pr, s, lp_kind::individual_rational);
        for (std::size_t r = 0; r < sys.support.size(); ++r) {
            rat lhs = 0;
            for (std::size_t c = 0; c < sys.support.size(); ++c)
                lhs += sys.coeff[r][c] * sol.mass[c];
            CHECK(lhs == sys.bench[r] * sol.ratio_constant);
        }
    }
}

TEST_CASE("LP/closed-form equivalence across a parameter sweep") {
    int checked = 0;
    for (int m = 2; m <= 12; m += 2) {
        for (long long b = 3; b <= 12; b += 3) {
            for (long long g = b + 1; g < m * b && g <= 100; ++g) {
                auto p = problem_params::validated(m, b, g);
                for (int l = 0; l < std::min(m, 4); ++l) {
                    std::vector<long long> revealed;
                    for (int i = 0; i < l; ++i) revealed.push_back(i + 1);
                    group_state s = group_state::of(revealed);
                    rat t = threshold_sd(p, s);
                    if (!is_integer(t) || t <= s.last_revealed() + 1) continue;
                    auto sol = solve_state_lp(p, s, lp_kind::state_dependent);
                    auto den = density_p(p, s, t, density_kind::p_state_dependent);
                    CHECK(std::fabs(to_double(sol.ratio_constant) - norm_g(p, s, t)) < 1e-9);
                    for (std::size_t i = 0; i < sol.mass.size(); ++i)
                        CHECK(std::fabs(to_double(sol.mass[i]) - den.mass[i]) < 1e-9);
                    ++checked;
                }
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("exact simplex solves the classical two-day program") {
    // classical randomized ski rental, B = 2: masses (1/3, 2/3), ratio 4/3
    lp_problem prob;
    prob.objective = {0, 0, 1};
    prob.a.push_back({rat(2), rat(1), rat(-1)});  // N=1: B p1 + p2 <= c
    prob.b.push_back(0);
    prob.relation.push_back(-1);
    prob.a.push_back({rat(2), rat(3), rat(-2)});  // N>=2: B p1 + (1+B) p2 <= 2c
    prob.b.push_back(0);
    prob.relation.push_back(-1);
    prob.a.push_back({rat(1), rat(1), rat(0)});
    prob.b.push_back(1);
    prob.relation.push_back(0);
    auto opt = simplex_minimize(prob);
    REQUIRE(opt.feasible);
    CHECK(opt.value == rat(4, 3));
    CHECK(opt.x[0] == rat(1, 3));
    CHECK(opt.x[1] == rat(2, 3));
}

TEST_CASE("exact simplex detects infeasibility") {
    lp_problem prob;
    prob.objective = {1};
    prob.a.push_back({rat(1)});
    prob.b.push_back(2);
    prob.relation.push_back(0);
    prob.a.push_back({rat(1)});
    prob.b.push_back(1);
    prob.relation.push_back(0);
    CHECK_FALSE(simplex_minimize(prob).feasible);
}
