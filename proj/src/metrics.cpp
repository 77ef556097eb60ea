#include "isq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isq {

OccupancyStats occupancy(const Trajectory& traj) {
    if (traj.segments.empty()) {
        throw std::invalid_argument("occupancy of an empty trajectory");
    }
    OccupancyStats stats;
    // The final segment closes the window at state 0 with zero duration
    // and is not a visit.
    for (std::size_t i = 0; i + 1 < traj.segments.size(); ++i) {
        const Segment& seg = traj.segments[i];
        StateOccupancy& so = stats.per_state[seg.state];
        so.visits += 1;
        so.total_sojourn += seg.duration;
        stats.total_time += seg.duration;
    }
    for (auto& [state, so] : stats.per_state) {
        if (so.visits > 0) so.mean_sojourn = so.total_sojourn / so.visits;
        const double p = so.total_sojourn / stats.total_time;
        stats.time_weighted_pmf[state] = p;
        stats.mean_in_system += state * p;
    }
    return stats;
}

std::pair<std::vector<BusyPeriodRecord>, IdleStats>
segment_busy_periods(const Trajectory& traj) {
    std::vector<BusyPeriodRecord> records;
    IdleStats idle;
    if (traj.segments.empty()) return {records, idle};

    BusyPeriodRecord current;
    bool in_busy = false;
    int prev_state = 0;
    for (std::size_t i = 0; i < traj.segments.size(); ++i) {
        const Segment& seg = traj.segments[i];
        const bool is_last = (i + 1 == traj.segments.size());
        if (seg.state == 0) {
            if (in_busy) {
                current.index = records.size();
                records.push_back(current);
                in_busy = false;
            }
            if (!is_last) {
                idle.count += 1;
                idle.total += seg.duration;
            }
        } else {
            if (!in_busy) {
                in_busy = true;
                current = BusyPeriodRecord{};
                current.start = seg.start;
            }
            if (seg.state > prev_state) current.customers_served += 1;
            current.max_simultaneous = std::max(current.max_simultaneous, seg.state);
            current.length += seg.duration;
        }
        prev_state = seg.state;
    }
    if (in_busy) {
        // Input truncated before the system emptied.
        current.index = records.size();
        current.censored = true;
        records.push_back(current);
    }
    if (idle.count > 0) idle.mean = idle.total / idle.count;
    return {records, idle};
}

double mean_busy_period(std::span<const BusyPeriodRecord> records) {
    if (records.empty()) throw std::invalid_argument("no busy periods");
    double total = 0.0;
    for (const auto& r : records) total += r.length;
    return total / static_cast<double>(records.size());
}

std::vector<HistogramBin> histogram(std::span<const double> values, double bin_width) {
    if (!(bin_width > 0.0)) throw std::invalid_argument("bin width must be > 0");
    std::vector<HistogramBin> bins;
    if (values.empty()) return bins;
    const double lo = *std::min_element(values.begin(), values.end());
    const double first_edge = std::floor(lo / bin_width) * bin_width;
    std::map<std::int64_t, std::uint64_t> counts;
    for (double v : values) {
        auto idx = static_cast<std::int64_t>(std::floor((v - first_edge) / bin_width));
        counts[idx] += 1;
    }
    bins.reserve(counts.size());
    for (const auto& [idx, count] : counts) {
        bins.push_back({first_edge + idx * bin_width, count});
    }
    return bins;
}

} // namespace isq
