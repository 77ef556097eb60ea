#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "isq/metrics.hpp"
#include "isq/rng.hpp"
#include "isq/sampling.hpp"
#include "oracle.hpp"

using namespace isq;

namespace {

Trajectory example_trajectory() {
    std::vector<double> arrivals{1, 2, 10};
    std::vector<double> departures{4, 2.5, 11};
    return build_trajectory(merge_events(arrivals, departures));
}

} // namespace

TEST_CASE("occupancy of the six-event example") {
    OccupancyStats stats = occupancy(example_trajectory());
    CHECK(stats.per_state.at(0).visits == 1);
    CHECK(stats.per_state.at(0).total_sojourn == doctest::Approx(6.0));
    CHECK(stats.per_state.at(1).visits == 3);
    CHECK(stats.per_state.at(1).total_sojourn == doctest::Approx(3.5));
    CHECK(stats.per_state.at(2).visits == 1);
    CHECK(stats.per_state.at(2).total_sojourn == doctest::Approx(0.5));
    CHECK(stats.time_weighted_pmf.at(0) == doctest::Approx(0.6));
    CHECK(stats.time_weighted_pmf.at(1) == doctest::Approx(0.35));
    CHECK(stats.time_weighted_pmf.at(2) == doctest::Approx(0.05));
    CHECK(stats.mean_in_system == doctest::Approx(0.45));

    double total = 0.0;
    for (const auto& [state, p] : stats.time_weighted_pmf) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("single-customer occupancy") {
    Trajectory traj =
        build_trajectory(merge_events(std::vector<double>{0.0}, std::vector<double>{5.0}));
    OccupancyStats stats = occupancy(traj);
    CHECK(stats.time_weighted_pmf.at(1) == doctest::Approx(1.0));
    CHECK(stats.mean_in_system == doctest::Approx(1.0));
}

TEST_CASE("busy periods of the six-event example") {
    auto [records, idle] = segment_busy_periods(example_trajectory());
    REQUIRE(records.size() == 2);
    CHECK(records[0].length == doctest::Approx(3.0));
    CHECK(records[0].customers_served == 2);
    CHECK(records[0].max_simultaneous == 2);
    CHECK_FALSE(records[0].censored);
    CHECK(records[1].length == doctest::Approx(1.0));
    CHECK(records[1].customers_served == 1);
    CHECK(records[1].max_simultaneous == 1);
    CHECK_FALSE(records[1].censored);
    CHECK(idle.count == 1);
    CHECK(idle.total == doctest::Approx(6.0));
    CHECK(mean_busy_period(records) == doctest::Approx(2.0));
}

TEST_CASE("single customer gives one busy period and no idle") {
    Trajectory traj =
        build_trajectory(merge_events(std::vector<double>{0.0}, std::vector<double>{5.0}));
    auto [records, idle] = segment_busy_periods(traj);
    REQUIRE(records.size() == 1);
    CHECK(records[0].length == doctest::Approx(5.0));
    CHECK(records[0].customers_served == 1);
    CHECK(records[0].max_simultaneous == 1);
    CHECK(idle.count == 0);
}

TEST_CASE("busy period count equals interior zero visits plus one") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> arr(0.0, 30.0);
    std::uniform_real_distribution<double> svc(0.1, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 19);
        std::vector<double> arrivals, services;
        for (int i = 0; i < n; ++i) arrivals.push_back(arr(rng));
        std::sort(arrivals.begin(), arrivals.end());
        for (int i = 0; i < n; ++i) services.push_back(svc(rng));
        Trajectory traj = build_trajectory(
            merge_events(arrivals, build_departures(arrivals, services)));
        OccupancyStats stats = occupancy(traj);
        auto [records, idle] = segment_busy_periods(traj);
        const std::uint64_t zero_visits =
            stats.per_state.count(0) ? stats.per_state.at(0).visits : 0;
        CHECK(records.size() == zero_visits + 1);
        CHECK(records.size() == idle.count + 1);
    }
}

TEST_CASE("mean_busy_period rejects empty input") {
    CHECK_THROWS_AS(mean_busy_period(std::vector<BusyPeriodRecord>{}),
                    std::invalid_argument);
}

TEST_CASE("all metrics match the brute-force oracle on random instances") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> arr(0.0, 15.0);
    std::uniform_real_distribution<double> svc(0.05, 4.0);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 20);
        std::vector<double> arrivals, services;
        for (int i = 0; i < n; ++i) arrivals.push_back(arr(rng));
        std::sort(arrivals.begin(), arrivals.end());
        for (int i = 0; i < n; ++i) services.push_back(svc(rng));
        auto departures = build_departures(arrivals, services);
        Trajectory traj = build_trajectory(merge_events(arrivals, departures));
        OccupancyStats stats = occupancy(traj);
        auto [records, idle] = segment_busy_periods(traj);
        auto oracle = isq::testing::brute_force(arrivals, departures);

        for (const auto& [state, so] : stats.per_state) {
            CHECK(so.visits == oracle.visits.at(state));
            CHECK(so.total_sojourn ==
                  doctest::Approx(oracle.total_sojourn.at(state)).epsilon(1e-12));
        }
        REQUIRE(records.size() == oracle.busy.size());
        std::uint64_t total_served = 0;
        for (std::size_t i = 0; i < records.size(); ++i) {
            CHECK(records[i].customers_served == oracle.busy[i].customers_served);
            CHECK(records[i].max_simultaneous == oracle.busy[i].max_simultaneous);
            CHECK(records[i].length ==
                  doctest::Approx(oracle.busy[i].length).epsilon(1e-12));
            CHECK(records[i].max_simultaneous <=
                  static_cast<int>(records[i].customers_served));
            total_served += records[i].customers_served;
        }
        CHECK(total_served == static_cast<std::uint64_t>(n));
        CHECK(idle.count == oracle.idle_count);
        CHECK(idle.total == doctest::Approx(oracle.idle_total).epsilon(1e-12));

        // partition identity: busy + idle = observation window
        double busy_total = 0.0;
        for (const auto& r : records) busy_total += r.length;
        CHECK(busy_total + idle.total ==
              doctest::Approx(traj.window()).epsilon(1e-9));
    }
}

TEST_CASE("poisson-arrival idle periods are exponential with the arrival mean") {
    SeedPlan plan;
    plan.e_seed = 1111;
    plan.g_seed = 2222;
    UniformStream e = plan.stream(SeedPlan::Role::E, 0);
    UniformStream g = plan.stream(SeedPlan::Role::G, 0);
    ArrivalLaw law{ArrivalKind::Exponential, 0.996};
    ServiceLaw svc{ServiceKind::Exponential, 4.0};
    auto gaps = generate_interarrivals(law, 25000, e, nullptr);
    std::vector<double> arrivals(gaps.size());
    double t = 0;
    for (std::size_t i = 0; i < gaps.size(); ++i) arrivals[i] = (t += gaps[i]);
    auto services = generate_services(svc, 25000, g, nullptr);
    Trajectory traj =
        build_trajectory(merge_events(arrivals, build_departures(arrivals, services)));
    auto [records, idle] = segment_busy_periods(traj);
    REQUIRE(idle.count > 10);
    const double se = 0.996 / std::sqrt(static_cast<double>(idle.count));
    CHECK(std::abs(idle.mean - 0.996) < 3.0 * se);
}

TEST_CASE("histogram partitions the data") {
    std::vector<double> values{1.0, 1.0, 2.4};
    auto bins = histogram(values, 1.0);
    REQUIRE(bins.size() == 2);
    CHECK(bins[0].bin_start == doctest::Approx(1.0));
    CHECK(bins[0].count == 2);
    CHECK(bins[1].bin_start == doctest::Approx(2.0));
    CHECK(bins[1].count == 1);

    CHECK(histogram(std::vector<double>{}, 1.0).empty());
    CHECK_THROWS_AS(histogram(std::vector<double>{0.5}, 0.0), std::invalid_argument);

    std::mt19937 rng(55);
    std::uniform_real_distribution<double> val(-5.0, 20.0);
    std::vector<double> data;
    for (int i = 0; i < 1000; ++i) data.push_back(val(rng));
    std::uint64_t total = 0;
    for (const auto& b : histogram(data, 0.7)) total += b.count;
    CHECK(total == data.size());
}
