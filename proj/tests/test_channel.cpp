#include <cmath>
#include <sstream>

#include "doctest.h"

#include "preho/channel.hpp"
#include "test_support.hpp"

using namespace preho;

namespace {

LinkContext zenith_link(double alt_km) {
    LinkContext l;
    l.ue_pos = {6371.0, 0.0, 0.0};
    l.sat_pos = {6371.0 + alt_km, 0.0, 0.0};
    l.elevation_deg = 90.0;
    return l;
}

struct Pipe {
    Scenario s;
    SatelliteTable sats;
    VisibilityMap vis;
};

Pipe desk(double sigma, std::uint64_t seed, double dt = 10.0) {
    Pipe p;
    p.s = load_scenario(test::scenario_path("desk.json"));
    p.s.channel.shadowing_sigma_db = sigma;
    p.s.channel.seed = seed;
    p.s.time_grid.slot_duration_s = dt;
    p.sats = propagate(p.s.constellation, p.s.time_grid);
    p.vis = build_visibility(p.s, p.sats);
    return p;
}

}  // namespace

TEST_CASE("Shannon examples in megabits") {
    CHECK(dmax_mb(1.0, 20e6, 3.0) == 60.0);
    CHECK(dmax_mb(3.0, 20e6, 3.0) == 120.0);
}

TEST_CASE("hand link budget at zenith, 550 km") {
    const ChannelParams cp;
    const FreeSpaceLinkBudget model(cp);
    // 20 log10(4 pi d f / c) with d = 550 km, f = 2 GHz.
    const double fspl = 20.0 * std::log10(4.0 * 3.14159265358979323846 * 550e3 * 2e9 / 299792458.0);
    CHECK(free_space_path_loss_db(550.0, 2e9) == doctest::Approx(fspl).epsilon(1e-12));
    // EIRP + G/T - FSPL - k - 10 log10 B - margin, k = -228.6 dBW/K/Hz
    const double k_db = 10.0 * std::log10(1.380649e-23);
    const double hand = 40.0 + (-25.0) - fspl - k_db - 10.0 * std::log10(20e6) - 7.31;
    CHECK(model.sinr_db(zenith_link(550.0)) == doctest::Approx(hand).epsilon(1e-12));
    CHECK(std::abs(hand - 10.0) < 0.05);
    const double d = dmax_mb(model.sinr_linear(zenith_link(550.0)), 20e6, 3.0);
    CHECK(d == doctest::Approx(3.0 * 20.0 * std::log2(1.0 + std::pow(10.0, hand / 10.0))).epsilon(1e-12));
}

TEST_CASE("rates are aligned with visibility and positive") {
    const auto p = desk(0.0, 1);
    const auto r = compute_rates(p.s, p.sats, p.vis);
    for (int i = 0; i < p.vis.num_ues(); ++i)
        for (int t = 0; t < p.vis.num_slots(); ++t) {
            REQUIRE(r.at(i, t).size() == p.vis.at(i, t).size());
            for (const auto& l : r.at(i, t)) {
                CHECK(l.sinr_linear > 0.0);
                CHECK(l.dmax_mb == dmax_mb(l.sinr_linear, 20e6, 10.0));
            }
        }
}

TEST_CASE("without shadowing, rate grows with elevation and ignores the seed") {
    const auto a = desk(0.0, 1), b = desk(0.0, 999);
    const auto ra = compute_rates(a.s, a.sats, a.vis), rb = compute_rates(b.s, b.sats, b.vis);
    CHECK(ra == rb);
    for (int i = 0; i < a.vis.num_ues(); ++i)
        for (int t = 0; t < a.vis.num_slots(); ++t) {
            const auto& v = a.vis.at(i, t);
            for (std::size_t x = 0; x < v.size(); ++x)
                for (std::size_t y = 0; y < v.size(); ++y)
                    if (v[x].elevation_deg > v[y].elevation_deg) CHECK(ra.at(i, t)[x].dmax_mb > ra.at(i, t)[y].dmax_mb);
        }
}

TEST_CASE("doubling the slot length doubles every dmax") {
    // Same positions: the time grid below differs only in slot length, so
    // compare links at slot 0 where geometry is identical.
    const auto a = desk(0.0, 1, 10.0), b = desk(0.0, 1, 20.0);
    const auto ra = compute_rates(a.s, a.sats, a.vis), rb = compute_rates(b.s, b.sats, b.vis);
    for (int i = 0; i < a.vis.num_ues(); ++i) {
        REQUIRE(a.vis.at(i, 0) == b.vis.at(i, 0));
        for (std::size_t k = 0; k < ra.at(i, 0).size(); ++k)
            CHECK(rb.at(i, 0)[k].dmax_mb == doctest::Approx(2.0 * ra.at(i, 0)[k].dmax_mb).epsilon(1e-14));
    }
}

TEST_CASE("shadowing is seeded per link and deterministic") {
    ChannelParams cp;
    cp.shadowing_sigma_db = 6.0;
    cp.seed = 17;
    const FreeSpaceLinkBudget m(cp);
    CHECK(m.shadowing_db(1, 2, 3) == m.shadowing_db(1, 2, 3));
    CHECK(m.shadowing_db(1, 2, 3) != m.shadowing_db(1, 2, 4));
    cp.seed = 18;
    CHECK(FreeSpaceLinkBudget(cp).shadowing_db(1, 2, 3) != m.shadowing_db(1, 2, 3));

    const auto a = desk(6.0, 5), b = desk(6.0, 5), c = desk(6.0, 6);
    CHECK(compute_rates(a.s, a.sats, a.vis) == compute_rates(b.s, b.sats, b.vis));
    CHECK_FALSE(compute_rates(a.s, a.sats, a.vis) == compute_rates(c.s, c.sats, c.vis));

    // Sample moments over many links.
    double sum = 0, sq = 0;
    const int n = 20000;
    for (int k = 0; k < n; ++k) {
        const double x = m.shadowing_db(k, 0, 0);
        sum += x;
        sq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.15);
    CHECK(std::abs(std::sqrt(sq / n) - 6.0) < 0.15);
}

TEST_CASE("per-satellite bandwidth override") {
    ChannelParams cp;
    cp.bandwidth_override_hz[4] = 10e6;
    CHECK(cp.bandwidth_for(4) == 10e6);
    CHECK(cp.bandwidth_for(5) == 20e6);
}

TEST_CASE("rates CSV export") {
    const auto p = desk(0.0, 1);
    const auto r = compute_rates(p.s, p.sats, p.vis);
    std::ostringstream out;
    write_rates_csv(p.vis, r, out);
    CHECK(out.str().rfind("ue,slot,sat_id,sinr_db,dmax_mb\n", 0) == 0);
}
