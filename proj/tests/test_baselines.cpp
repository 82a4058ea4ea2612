#include "doctest.h"

#include "preho/baselines.hpp"
#include "preho/commands.hpp"
#include "preho/errors.hpp"
#include "test_support.hpp"

using namespace preho;
using test::make_problem;
using test::random_problem;

TEST_CASE("LSS with a single visible satellite never hands over") {
    const auto p = make_problem({{{{5, 3.0}}, {{5, 30.0}}, {{5, 1.0}}, {{5, 9.0}}}});
    const auto plan = run_lss(p);
    CHECK(plan.serving[0] == std::vector<int>{5, 5, 5, 5});
}

TEST_CASE("LSS ping-pongs when the stronger satellite alternates") {
    // SINR of sat 0 / sat 1 alternates 20/10 and 10/20: ratio 2 >= 1.5.
    std::vector<std::vector<std::map<int, double>>> links(1);
    for (int t = 0; t < 6; ++t) links[0].push_back(t % 2 ? std::map<int, double>{{0, 10.0}, {1, 20.0}}
                                                         : std::map<int, double>{{0, 20.0}, {1, 10.0}});
    const auto p = make_problem(links);
    const auto plan = run_lss(p);
    CHECK(plan.serving[0] == std::vector<int>{0, 1, 0, 1, 0, 1});
    CHECK(plan.total_handovers() == 5);

    // Below the trigger ratio the UE stays.
    CHECK(run_lss(p, 2.5).total_handovers() == 0);
    CHECK_THROWS_AS(run_lss(p, 1.0), ValidationError);
}

TEST_CASE("LST hand trace") {
    // Sat 0 visible over slots 0..2, sat 1 over 1..5.
    std::vector<std::vector<std::map<int, double>>> links(1, std::vector<std::map<int, double>>(6));
    for (int t = 0; t <= 2; ++t) links[0][t][0] = 10.0;
    for (int t = 1; t <= 5; ++t) links[0][t][1] = 10.0;
    const auto p = make_problem(links);
    const auto plan = run_lst(p);
    CHECK(plan.serving[0] == std::vector<int>{0, 0, 0, 1, 1, 1});
    CHECK(plan.total_handovers() == 1);
    CHECK(remaining_visibility(p.vis, 0, 0, 0) == 3);
    CHECK(remaining_visibility(p.vis, 0, 1, 1) == 5);
    CHECK(remaining_visibility(p.vis, 0, 0, 1) == 0);
}

TEST_CASE("LST picks the longest remaining visibility whenever it (re)selects") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto p = random_problem(seed, 3, 4, 10);
        const auto plan = run_lst(p);
        for (int i = 0; i < p.num_ues(); ++i)
            for (int t = 0; t < p.num_slots(); ++t) {
                const int cur = plan.serving[i][t];
                if (t > 0 && cur == plan.serving[i][t - 1]) continue;
                if (t > 0) CHECK_FALSE(p.vis.contains(i, t, plan.serving[i][t - 1]));
                for (const auto& v : p.vis.at(i, t))
                    CHECK(remaining_visibility(p.vis, i, t, cur) >= remaining_visibility(p.vis, i, t, v.sat_id));
            }
    }
}

TEST_CASE("Greedy examples") {
    SUBCASE("stays when switching only pays the handover") {
        const auto p = make_problem({{{{0, 10.0}, {1, 10.0}}, {{0, 10.0}, {1, 10.0}}}});
        CHECK(run_greedy(p).serving[0] == std::vector<int>{0, 0});
    }
    SUBCASE("moves off a crowded satellite when utility outweighs the handover") {
        // Two UEs share sat 0 initially; with gamma large, UE 1 leaves for sat 1.
        const auto p = make_problem({{{{0, 10.0}}, {{0, 10.0}}}, {{{0, 10.0}}, {{0, 10.0}, {1, 4.0}}}}, 5.0);
        const auto plan = run_greedy(p);
        CHECK(plan.serving[1] == std::vector<int>{0, 1});
        // Utility goes from 2 log 5 to log 10 + log 4; 5 * log 1.6 > 1.
    }
}

TEST_CASE("baseline plans are feasible") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto p = random_problem(seed, 4, 5, 8);
        for (auto kind : {Baseline::lss, Baseline::lst, Baseline::greedy})
            CHECK_NOTHROW(check_feasible(p, run_baseline({kind}, p)));
    }
    Problem gap = make_problem({{{{0, 1.0}}, {{0, 1.0}}}});
    gap.vis.at(0, 1).clear();
    gap.rates.at(0, 1).clear();
    CHECK_THROWS_AS(run_lss(gap), InfeasibleError);
    CHECK_THROWS_AS(run_greedy(gap), InfeasibleError);
}

TEST_CASE("desk scenario: directional comparisons") {
    const auto pipe = Pipeline::build(load_scenario(test::scenario_path("desk.json")));
    const auto preho = run_algorithm(pipe, Algorithm::preho);
    const auto lss = run_algorithm(pipe, Algorithm::lss);
    const auto lst = run_algorithm(pipe, Algorithm::lst);
    const auto greedy = run_algorithm(pipe, Algorithm::greedy);
    CHECK(preho.objective.objective <= lst.objective.objective);
    CHECK(preho.objective.objective <= greedy.objective.objective);
    CHECK(preho.objective.objective <= lss.objective.objective);
    CHECK(lss.objective.n_ho >= lst.objective.n_ho);
    CHECK(lst.objective.objective <= lss.objective.objective);
}
