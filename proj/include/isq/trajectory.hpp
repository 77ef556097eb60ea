#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace isq {

struct Event {
    double time;
    int mark; // +1 arrival, -1 departure
};

// Time-ordered ±1 marks. At equal timestamps departures sort before
// arrivals, so the running state never double-counts a swap.
struct EventStream {
    std::vector<Event> events;
    std::size_t n_arrivals = 0;
};

struct Segment {
    int state;       // number in system right after the segment's opening event
    double start;
    double duration; // zero for the final segment
};

// Piecewise-constant state path N(t). One segment per event; the last
// segment closes the path at state 0 with zero duration.
struct Trajectory {
    std::vector<Segment> segments;
    int max_state = 0;

    double window() const {
        if (segments.empty()) return 0.0;
        return segments.back().start - segments.front().start;
    }
};

// departure[i] = arrival[i] + service[i]. Throws std::invalid_argument on
// length mismatch or non-positive service time.
std::vector<double> build_departures(std::span<const double> arrival_times,
                                     std::span<const double> service_times);

EventStream merge_events(std::span<const double> arrivals,
                         std::span<const double> departures);

// Prefix-sum states with inter-event durations. A negative running state
// signals corrupted input and throws std::invalid_argument.
Trajectory build_trajectory(const EventStream& stream);

// CSV rows (timestamp, mark, state) for external inspection.
void write_trace_csv(std::ostream& out, const EventStream& stream);

} // namespace isq
