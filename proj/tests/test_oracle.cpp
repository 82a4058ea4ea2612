#include <cmath>

#include "doctest.h"

#include "preho/errors.hpp"
#include "preho/oracle.hpp"
#include "test_support.hpp"

using namespace preho;
using test::make_problem;
using test::random_problem;

namespace {

// Optimizes against the negated utility weight: prefers the worst links.
UeOptimization inverted(const Problem& p, int ue, const AssociationPlan& base) {
    Problem q = p;
    q.gamma = -p.gamma;
    auto r = optimize_ue(q, ue, base);
    r.objective = evaluate_plan(p, r.plan);
    return r;
}

}  // namespace

TEST_CASE("brute_force_ue examples") {
    SUBCASE("single sat") {
        const auto p = make_problem({{{{2, 5.0}}, {{2, 5.0}}, {{2, 5.0}}}});
        AssociationPlan base(1, 3);
        base.serving[0] = {2, 2, 2};
        const auto r = brute_force_ue(p, 0, base);
        CHECK(r.enumerated == 1);
        CHECK(r.sequence == std::vector<int>{2, 2, 2});
        CHECK(r.objective == doctest::Approx(-2e-3 * 3 * std::log(5.0)));
    }
    SUBCASE("M=2, T=3 enumerates 8 sequences") {
        const std::map<int, double> both{{0, 5.0}, {1, 9.0}};
        const auto p = make_problem({{both, both, both}});
        AssociationPlan base(1, 3);
        base.serving[0] = {0, 0, 0};
        const auto r = brute_force_ue(p, 0, base);
        CHECK(r.enumerated == 8);
        CHECK(r.sequence == std::vector<int>{1, 1, 1});
        CHECK(r.optima.size() == 1);
    }
    SUBCASE("ties are normalized") {
        const std::map<int, double> both{{0, 5.0}, {1, 5.0}};
        const auto p = make_problem({{both, both}});
        AssociationPlan base(1, 2);
        base.serving[0] = {1, 1};
        const auto r = brute_force_ue(p, 0, base);
        CHECK(r.optima.size() == 2);
        CHECK(r.sequence == std::vector<int>{0, 0});
    }
    SUBCASE("cap") {
        const auto p = random_problem(3, 1, 4, 12, 2e-3, 1.0, 1.0);
        AssociationPlan base = test::random_feasible_plan(p, 1);
        CHECK_THROWS_AS(brute_force_ue(p, 0, base, 1000), DomainError);
    }
}

TEST_CASE("brute_force_alloc examples") {
    UtilitySpec log;
    CHECK(brute_force_alloc(log, {{4, 7.0}}, 1e-3).shares.at(4) == 1.0);

    const auto two = brute_force_alloc(log, {{0, 2.0}, {1, 50.0}}, 1e-3);
    CHECK(two.shares.at(0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(two.shares.at(1) == doctest::Approx(0.5).epsilon(1e-9));

    UtilitySpec half;
    half.alpha = 0.5;
    // Shares proportional to D^{(1-a)/a} = D: (1, 3) -> (0.25, 0.75).
    const auto h = brute_force_alloc(half, {{0, 1.0}, {1, 3.0}}, 1e-3);
    CHECK(h.shares.at(0) == doctest::Approx(0.25).epsilon(2e-3));
    CHECK(h.shares.at(1) == doctest::Approx(0.75).epsilon(2e-3));

    const auto three = brute_force_alloc(log, {{0, 1.0}, {1, 2.0}, {2, 3.0}}, 1e-2);
    for (const auto& [ue, y] : three.shares) CHECK(std::abs(y - 1.0 / 3.0) <= 1e-2);

    CHECK_THROWS_AS(brute_force_alloc(log, {{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}}, 0.1), DomainError);
}

TEST_CASE("oracle check passes on random tiny instances") {
    int ue_checks = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const int n = 1 + static_cast<int>(seed % 3), M = 2 + static_cast<int>(seed % 3), T = 3 + static_cast<int>(seed % 4);
        const double alpha = seed % 7 == 0 ? 0.5 : (seed % 5 == 0 ? 2.0 : 1.0);
        const auto p = random_problem(seed, n, M, T, seed % 2 ? 0.05 : 2e-3, alpha);
        const auto report = run_oracle_check(p);
        INFO("seed " << seed << ": " << (report.failures.empty() ? "" : report.failures.front()));
        CHECK(report.passed());
        CHECK(report.ue_checks == n);
        CHECK(report.alloc_checks > 0);
        ue_checks += report.ue_checks;
    }
    CHECK(ue_checks >= 50);
}

TEST_CASE("a corrupted optimizer is caught with a counterexample") {
    const std::map<int, double> both{{0, 2.0}, {1, 40.0}};
    const auto p = make_problem({{both, both, both}});
    OracleOptions opts;
    opts.optimizer = inverted;
    const auto report = run_oracle_check(p, opts);
    CHECK_FALSE(report.passed());
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures.front().find("ue 0") != std::string::npos);
    CHECK(report.failures.front().find("[1,1,1]") != std::string::npos);
}
