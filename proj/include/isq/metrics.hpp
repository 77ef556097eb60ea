#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "isq/trajectory.hpp"

namespace isq {

struct StateOccupancy {
    std::uint64_t visits = 0;
    double total_sojourn = 0.0;
    double mean_sojourn = 0.0;
};

// Per-state visit counts and sojourn times over the observation window
// [first arrival, last departure]. The closing zero-duration segment is
// not counted as a visit.
struct OccupancyStats {
    std::map<int, StateOccupancy> per_state;
    std::map<int, double> time_weighted_pmf;
    double mean_in_system = 0.0;
    double total_time = 0.0;
};

struct BusyPeriodRecord {
    std::size_t index = 0;
    double start = 0.0;
    double length = 0.0;                 // busy period length
    std::uint64_t customers_served = 0;  // Y
    int max_simultaneous = 0;            // X
    bool censored = false;
};

struct IdleStats {
    std::uint64_t count = 0;
    double total = 0.0;
    double mean = 0.0;
};

OccupancyStats occupancy(const Trajectory& traj);

// Busy periods are the maximal intervals with state >= 1, delimited by
// state-0 segments. With complete input the final busy period ends at the
// last departure and is not censored.
std::pair<std::vector<BusyPeriodRecord>, IdleStats>
segment_busy_periods(const Trajectory& traj);

double mean_busy_period(std::span<const BusyPeriodRecord> records);

struct HistogramBin {
    double bin_start;
    std::uint64_t count;
};

std::vector<HistogramBin> histogram(std::span<const double> values, double bin_width);

} // namespace isq
