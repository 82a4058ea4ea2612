#include <cmath>
#include <sstream>

#include "doctest.h"

#include "preho/commands.hpp"
#include "preho/errors.hpp"
#include "preho/protosim.hpp"
#include "test_support.hpp"

using namespace preho;

namespace {

LatencyParams zero_params() {
    LatencyParams p;
    p.gs_cn_ms = p.proc_ms = p.rach_ms = p.isl_hop_ms = p.ue_sync_ms = 0.0;
    return p;
}

LegDelays typical_legs() {
    LegDelays l;
    l.ue_src_ms = 2.2;
    l.ue_tgt_ms = 2.6;
    l.src_gs_ms = 3.1;
    l.tgt_gs_ms = 4.0;
    l.xn_hops = 2;
    return l;
}

ConstellationSpec walker(int planes, int per_plane) {
    ConstellationSpec c;
    c.walker.num_planes = planes;
    c.walker.sats_per_plane = per_plane;
    return c;
}

bool has_step(const HandoverTimeline& tl, const std::string& name) {
    for (const auto& s : tl.steps)
        if (s.name == name) return true;
    return false;
}

}  // namespace

TEST_CASE("zero delays give zero latency for every mechanism") {
    for (auto m : kAllMechanisms) {
        const auto tl = build_timeline(m, LegDelays{}, zero_params());
        CHECK(tl.total_ms == 0.0);
        CHECK(tl.hit_ms == 0.0);
        CHECK(tl.prep_ms == 0.0);
    }
}

TEST_CASE("timeline structure") {
    const LatencyParams lp;
    const auto legs = typical_legs();
    for (auto m : kAllMechanisms) {
        const auto tl = build_timeline(m, legs, lp);
        CHECK(tl.total_ms == doctest::Approx(tl.hit_ms + tl.dst_ms));
        double sum = 0.0;
        for (const auto& s : tl.steps) sum += s.delay_ms;
        CHECK(sum == doctest::Approx(tl.prep_ms + tl.hit_ms + tl.dst_ms));
    }
    const auto pre = build_timeline(Mechanism::preho, legs, lp);
    CHECK_FALSE(has_step(pre, "RandomAccess"));
    CHECK_FALSE(has_step(pre, "MeasurementReport"));
    CHECK(pre.dst_ms == 0.0);
    CHECK(pre.prep_ms == 0.0);

    const auto bho = build_timeline(Mechanism::bho, legs, lp);
    CHECK(bho.hit_ms - pre.hit_ms >= 21.0);
    CHECK(bho.hit_ms - pre.hit_ms == doctest::Approx(lp.rach_ms + 2 * legs.ue_tgt_ms));

    const auto a = build_timeline(Mechanism::bho_a, legs, lp);
    CHECK(a.dst_ms == 0.0);
    CHECK(has_step(a, "XnHandoverRequest"));
    CHECK_FALSE(has_step(bho, "XnHandoverRequest"));
    CHECK(a.total_ms < bho.total_ms);

    // BHO-GS drops the core-network legs of path switch.
    const auto gs = build_timeline(Mechanism::bho_gs, legs, lp);
    CHECK(bho.dst_ms - gs.dst_ms == doctest::Approx(4 * lp.gs_cn_ms));
    CHECK(pre.total_ms < a.total_ms);
    CHECK(a.total_ms <= gs.total_ms);
    CHECK(gs.total_ms < bho.total_ms);
}

TEST_CASE("latency is monotone in every delay parameter") {
    const auto legs = typical_legs();
    const LatencyParams base;
    double LatencyParams::*fields[] = {&LatencyParams::gs_cn_ms, &LatencyParams::proc_ms, &LatencyParams::rach_ms,
                                       &LatencyParams::isl_hop_ms, &LatencyParams::ue_sync_ms};
    for (auto f : fields) {
        LatencyParams more = base;
        more.*f += 5.0;
        for (auto m : kAllMechanisms) {
            const auto a = build_timeline(m, legs, base), b = build_timeline(m, legs, more);
            CHECK(b.total_ms >= a.total_ms);
            CHECK(b.prep_ms >= a.prep_ms);
        }
    }
    double LegDelays::*leg_fields[] = {&LegDelays::ue_src_ms, &LegDelays::ue_tgt_ms, &LegDelays::src_gs_ms,
                                       &LegDelays::tgt_gs_ms};
    for (auto f : leg_fields) {
        LegDelays more = legs;
        more.*f += 1.0;
        for (auto m : kAllMechanisms) {
            const auto a = build_timeline(m, legs, base), b = build_timeline(m, more, base);
            CHECK(b.total_ms + b.prep_ms >= a.total_ms + a.prep_ms);
        }
    }
}

TEST_CASE("BHO-A beats BHO whenever the core network is not free") {
    LatencyParams lp;
    for (double cn : {0.5, 10.0, 47.0}) {
        lp.gs_cn_ms = cn;
        CHECK(build_timeline(Mechanism::bho_a, typical_legs(), lp).total_ms <
              build_timeline(Mechanism::bho, typical_legs(), lp).total_ms);
    }
}

TEST_CASE("xn_hops on the torus") {
    const auto c = walker(10, 10);
    CHECK(xn_hops(3, 3, c, XnStrategy::similar_direction) == 0);
    CHECK(xn_hops(3, 4, c, XnStrategy::similar_direction) == 1);
    CHECK(xn_hops(0, 9, c, XnStrategy::similar_direction) == 1);  // wraps in-plane
    CHECK(xn_hops(0, 90, c, XnStrategy::similar_direction) == 1);  // wraps across planes
    // Planes 2 apart and in-plane index 3 apart.
    CHECK(xn_hops(1 * 10 + 2, 3 * 10 + 5, c, XnStrategy::similar_direction) == 5);
    CHECK(xn_hops(35, 12, c, XnStrategy::similar_direction) == xn_hops(12, 35, c, XnStrategy::similar_direction));

    int same = -1, opposite = -1;
    for (int s = 1; s < 10; ++s) {
        if (motion_direction(c, 0, 0.0) == motion_direction(c, s, 0.0)) same = s;
        else opposite = s;
    }
    REQUIRE(same > 0);
    REQUIRE(opposite > 0);
    const int base_opp = xn_hops(0, opposite, c, XnStrategy::similar_direction);
    CHECK(xn_hops(0, opposite, c, XnStrategy::all_direction, 10) == base_opp + 10);
    CHECK(xn_hops(0, same, c, XnStrategy::all_direction, 10) == xn_hops(0, same, c, XnStrategy::similar_direction));

    ConstellationSpec table;
    table.kind = ConstellationKind::position_table;
    CHECK_THROWS_AS(xn_hops(0, 1, table, XnStrategy::similar_direction), DomainError);
    CHECK_THROWS_AS(xn_hops(0, 100, c, XnStrategy::similar_direction), DomainError);
}

TEST_CASE("mechanism names") {
    for (auto m : kAllMechanisms) CHECK(parse_mechanism(to_string(m)) == m);
    CHECK(parse_mechanism("bho-gs") == Mechanism::bho_gs);
    CHECK_THROWS_AS(parse_mechanism("xho"), ValidationError);
}

TEST_CASE("latency distributions") {
    const auto pipe = Pipeline::build(load_scenario(test::scenario_path("desk.json")));
    const auto ctx = LatencyContext::from(pipe.scenario, pipe.sats);
    const int T = pipe.problem.num_slots();

    SUBCASE("no handover: flagged empty, NaN mean") {
        AssociationPlan stay = run_lst(pipe.problem);
        for (auto& row : stay.serving) row.assign(T, row.front());
        const auto d = latency_cdf(stay, Mechanism::bho, ctx);
        CHECK(d.empty);
        CHECK(std::isnan(d.mean));
        CHECK(std::isnan(d.quantile(0.5)));
        std::stringstream ss;
        write_latency_csv(d, ss);
        CHECK(ss.str() == "mechanism,total_ms\n");
    }

    SUBCASE("single event and duplicated event") {
        const auto plan = run_lst(pipe.problem);
        int ue = -1, slot = -1;
        for (int i = 0; i < plan.num_ues() && ue < 0; ++i)
            for (int t = 1; t < T; ++t)
                if (plan.serving[i][t] != plan.serving[i][t - 1]) {
                    ue = i;
                    slot = t;
                    break;
                }
        REQUIRE(ue >= 0);
        AssociationPlan one(pipe.problem.num_ues(), T);
        for (int t = 0; t < T; ++t) one.serving[ue][t] = t < slot ? plan.serving[ue][slot - 1] : plan.serving[ue][slot];
        for (int i = 0; i < one.num_ues(); ++i)
            if (i != ue) one.serving[i].assign(T, 0);

        const auto expect = simulate_handover(Mechanism::bho, ue, plan.serving[ue][slot - 1], plan.serving[ue][slot], slot, ctx);
        auto d = latency_cdf(one, Mechanism::bho, ctx);
        REQUIRE(d.totals.size() == 1);
        CHECK(d.totals[0] == doctest::Approx(expect.total_ms));
        CHECK(d.quantile(0.0) == d.totals[0]);
        CHECK(d.quantile(1.0) == d.totals[0]);

        AssociationPlan two = one;
        two.serving.push_back(one.serving[ue]);
        LatencyContext ctx2 = ctx;
        ctx2.ues.push_back(ctx.ues[ue]);
        d = latency_cdf(two, Mechanism::bho, ctx2);
        REQUIRE(d.totals.size() == 2);
        CHECK(d.totals[0] == d.totals[1]);
        CHECK(d.mean == doctest::Approx(expect.total_ms));
    }

    SUBCASE("desk ratio and ordering") {
        const auto run = run_algorithm(pipe, Algorithm::preho);
        std::map<Mechanism, LatencyDistribution> d;
        for (auto m : kAllMechanisms) {
            d[m] = latency_cdf(run.plan, m, ctx);
            CHECK(static_cast<long>(d[m].totals.size()) == run.objective.n_ho);
            CHECK(std::is_sorted(d[m].totals.begin(), d[m].totals.end()));
        }
        const double ratio = d[Mechanism::bho].mean / d[Mechanism::preho].mean;
        CHECK(ratio >= 8.0);
        CHECK(ratio <= 16.0);
        CHECK(d[Mechanism::preho].mean < d[Mechanism::bho_a].mean);
        CHECK(d[Mechanism::bho_a].mean <= d[Mechanism::bho_gs].mean);
        CHECK(d[Mechanism::bho_gs].mean < d[Mechanism::bho].mean);
        CHECK(d[Mechanism::bho].mean_hit() - d[Mechanism::preho].mean_hit() >= 21.0);
    }
}

TEST_CASE("nearest ground station") {
    auto s = load_scenario(test::scenario_path("tiny.json"));
    const auto pipe = Pipeline::build(s);
    auto ctx = LatencyContext::from(pipe.scenario, pipe.sats);
    const double ms = ctx.nearest_gs_ms(0, 0);
    CHECK(ms > 0.0);
    ctx.ground_stations.clear();
    CHECK_THROWS_AS(ctx.nearest_gs_ms(0, 0), InfeasibleError);
}
