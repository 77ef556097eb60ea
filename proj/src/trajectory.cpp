#include "isq/trajectory.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace isq {

std::vector<double> build_departures(std::span<const double> arrival_times,
                                     std::span<const double> service_times) {
    if (arrival_times.size() != service_times.size()) {
        throw std::invalid_argument("arrival/service length mismatch");
    }
    std::vector<double> departures;
    departures.reserve(arrival_times.size());
    for (std::size_t i = 0; i < arrival_times.size(); ++i) {
        if (!(service_times[i] > 0.0)) {
            throw std::invalid_argument("service times must be strictly positive");
        }
        departures.push_back(arrival_times[i] + service_times[i]);
    }
    return departures;
}

EventStream merge_events(std::span<const double> arrivals,
                         std::span<const double> departures) {
    if (arrivals.size() != departures.size()) {
        throw std::invalid_argument("arrival/departure length mismatch");
    }
    EventStream stream;
    stream.n_arrivals = arrivals.size();
    stream.events.reserve(2 * arrivals.size());
    for (double t : arrivals) stream.events.push_back({t, +1});
    for (double t : departures) stream.events.push_back({t, -1});
    // Ties resolve departure first: mark -1 sorts below +1.
    std::sort(stream.events.begin(), stream.events.end(),
              [](const Event& a, const Event& b) {
                  if (a.time != b.time) return a.time < b.time;
                  return a.mark < b.mark;
              });
    return stream;
}

Trajectory build_trajectory(const EventStream& stream) {
    Trajectory traj;
    traj.segments.reserve(stream.events.size());
    int state = 0;
    for (std::size_t i = 0; i < stream.events.size(); ++i) {
        state += stream.events[i].mark;
        if (state < 0) {
            throw std::invalid_argument(
                "negative state: mismatched marks or violated tie rule");
        }
        const double start = stream.events[i].time;
        const double duration =
            (i + 1 < stream.events.size()) ? stream.events[i + 1].time - start : 0.0;
        traj.segments.push_back({state, start, duration});
        traj.max_state = std::max(traj.max_state, state);
    }
    return traj;
}

void write_trace_csv(std::ostream& out, const EventStream& stream) {
    out << "timestamp,mark,state\n";
    int state = 0;
    for (const Event& ev : stream.events) {
        state += ev.mark;
        out << ev.time << ',' << ev.mark << ',' << state << '\n';
    }
}

} // namespace isq
