#include "isq/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "isq/trajectory.hpp"

namespace isq {

namespace {

using ordered_json = nlohmann::ordered_json;

struct ReplicationResult {
    OccupancyStats occupancy;
    std::vector<BusyPeriodRecord> busy;
    IdleStats idle;
    int max_state = 0;
    double window = 0.0;
};

EventStream build_stream(const SimulationConfig& config, std::uint64_t replication) {
    UniformStream e = config.seeds.stream(SeedPlan::Role::E, replication);
    std::optional<UniformStream> f;
    if (config.arrival.kind == ArrivalKind::Erlang2) {
        f = config.seeds.stream(SeedPlan::Role::F, replication);
    }
    UniformStream g = config.seeds.stream(SeedPlan::Role::G, replication);
    std::optional<UniformStream> h;
    if (config.service.kind == ServiceKind::Erlang2) {
        h = config.seeds.stream(SeedPlan::Role::H, replication);
    }

    std::vector<double> gaps = generate_interarrivals(
        config.arrival, config.n_arrivals, e, f ? &*f : nullptr);
    std::vector<double> arrivals(gaps.size());
    double t = 0.0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        t += gaps[i];
        arrivals[i] = t;
    }
    std::vector<double> services =
        generate_services(config.service, config.n_arrivals, g, h ? &*h : nullptr);
    std::vector<double> departures = build_departures(arrivals, services);
    return merge_events(arrivals, departures);
}

ReplicationResult run_replication(const SimulationConfig& config,
                                  std::uint64_t replication) {
    Trajectory traj = build_trajectory(build_stream(config, replication));

    ReplicationResult result;
    result.occupancy = occupancy(traj);
    auto [busy, idle] = segment_busy_periods(traj);
    result.busy = std::move(busy);
    result.idle = idle;
    result.max_state = traj.max_state;
    result.window = traj.window();
    return result;
}

std::map<int, std::uint64_t> count_distribution(std::span<const BusyPeriodRecord> records,
                                                bool max_simultaneous) {
    std::map<int, std::uint64_t> counts;
    for (const auto& r : records) {
        const int key = max_simultaneous ? r.max_simultaneous
                                         : static_cast<int>(r.customers_served);
        counts[key] += 1;
    }
    return counts;
}

ordered_json histogram_json(const std::vector<HistogramBin>& bins) {
    ordered_json arr = ordered_json::array();
    for (const auto& b : bins) arr.push_back({{"bin_start", b.bin_start}, {"count", b.count}});
    return arr;
}

ordered_json counts_json(const std::map<int, std::uint64_t>& counts) {
    ordered_json arr = ordered_json::array();
    for (const auto& [value, count] : counts) {
        arr.push_back({{"value", value}, {"count", count}});
    }
    return arr;
}

void open_out(std::ofstream& out, const std::filesystem::path& path) {
    out.open(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path.string());
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
}

} // namespace

int ExperimentReport::empirical_mode() const {
    int mode = 0;
    double best = -1.0;
    for (const auto& [state, p] : pooled_occupancy.time_weighted_pmf) {
        if (p > best) {
            best = p;
            mode = state;
        }
    }
    return mode;
}

ExperimentReport run_experiment(const SimulationConfig& config) {
    config.validate();

    ExperimentReport report;
    report.config = config;

    int max_state = 0;
    for (std::size_t rep = 0; rep < config.replications; ++rep) {
        ReplicationResult r = run_replication(config, rep);

        for (const auto& [state, so] : r.occupancy.per_state) {
            StateOccupancy& pooled = report.pooled_occupancy.per_state[state];
            pooled.visits += so.visits;
            pooled.total_sojourn += so.total_sojourn;
        }
        report.pooled_occupancy.total_time += r.occupancy.total_time;

        for (auto record : r.busy) {
            record.index = report.pooled_busy.size();
            report.pooled_busy.push_back(record);
        }
        report.pooled_idle.count += r.idle.count;
        report.pooled_idle.total += r.idle.total;
        max_state = std::max(max_state, r.max_state);

        report.replications.push_back({rep, r.busy.size(), r.idle.count,
                                       r.occupancy.mean_in_system, r.max_state,
                                       r.window});
    }

    for (auto& [state, so] : report.pooled_occupancy.per_state) {
        if (so.visits > 0) so.mean_sojourn = so.total_sojourn / so.visits;
        const double p = so.total_sojourn / report.pooled_occupancy.total_time;
        report.pooled_occupancy.time_weighted_pmf[state] = p;
        report.pooled_occupancy.mean_in_system += state * p;
    }
    if (report.pooled_idle.count > 0) {
        report.pooled_idle.mean = report.pooled_idle.total / report.pooled_idle.count;
    }

    // Closed-form references exist for Poisson arrivals: the equilibrium
    // number-in-system law for any service, per-state mean sojourns only
    // for exponential service.
    if (config.arrival.kind == ArrivalKind::Exponential) {
        const bool with_sojourn = config.service.kind == ServiceKind::Exponential;
        report.theory = theoretical_occupancy(config.rho(), max_state,
                                              config.service.mean_service, with_sojourn);
        report.theory_distance =
            compare_distributions(report.pooled_occupancy.time_weighted_pmf,
                                  report.theory->pmf,
                                  static_cast<double>(report.pooled_busy.size() * 100));
    }

    if (report.pooled_busy.size() >= 2) {
        std::vector<double> xs, ys;
        xs.reserve(report.pooled_busy.size());
        ys.reserve(report.pooled_busy.size());
        for (const auto& r : report.pooled_busy) {
            xs.push_back(r.max_simultaneous);
            ys.push_back(static_cast<double>(r.customers_served));
        }
        try {
            report.regression = fit_regression(xs, ys);
        } catch (const std::invalid_argument&) {
            // degenerate X (all busy periods identical); reported as absent
        }
    }
    return report;
}

nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
    const SimulationConfig& c = report.config;
    ordered_json j;
    j["label"] = c.label;
    ordered_json seeds = {{"e", c.seeds.e_seed}, {"g", c.seeds.g_seed},
                          {"master_salt", c.seeds.master_salt}};
    if (c.seeds.f_seed) seeds["f"] = *c.seeds.f_seed;
    if (c.seeds.h_seed) seeds["h"] = *c.seeds.h_seed;
    j["config"] = {
        {"arrival_law", to_string(c.arrival.kind)},
        {"mean_interarrival", c.arrival.mean_interarrival},
        {"service_law", to_string(c.service.kind)},
        {"mean_service", c.service.mean_service},
        {"n_arrivals", c.n_arrivals},
        {"replications", c.replications},
        {"rho", c.rho()},
        {"seeds", seeds},
        {"bin_width", c.bin_width},
    };
    if (c.service.pareto_gamma) j["config"]["pareto_gamma"] = *c.service.pareto_gamma;
    if (c.service.mixture_p) j["config"]["mixture_p"] = *c.service.mixture_p;

    ordered_json states = ordered_json::array();
    for (const auto& [state, so] : report.pooled_occupancy.per_state) {
        ordered_json row = {{"state", state},
                            {"visits", so.visits},
                            {"total_sojourn", so.total_sojourn},
                            {"mean_sojourn", so.mean_sojourn},
                            {"pmf", report.pooled_occupancy.time_weighted_pmf.at(state)}};
        if (report.theory && !report.theory->mean_sojourn.empty()) {
            row["theoretical_mean_sojourn"] = report.theory->mean_sojourn.at(state);
        }
        states.push_back(row);
    }
    j["occupancy"] = {{"states", states},
                      {"mean_in_system", report.pooled_occupancy.mean_in_system},
                      {"total_time", report.pooled_occupancy.total_time},
                      {"empirical_mode", report.empirical_mode()}};

    std::vector<double> lengths;
    lengths.reserve(report.pooled_busy.size());
    int max_x = 0;
    for (const auto& r : report.pooled_busy) {
        lengths.push_back(r.length);
        max_x = std::max(max_x, r.max_simultaneous);
    }
    ordered_json busy;
    busy["count"] = report.pooled_busy.size();
    busy["mean_length"] =
        report.pooled_busy.empty() ? 0.0 : mean_busy_period(report.pooled_busy);
    busy["max_simultaneous_max"] = max_x;
    busy["length_histogram"] = histogram_json(histogram(lengths, c.bin_width));
    busy["max_simultaneous_distribution"] =
        counts_json(count_distribution(report.pooled_busy, true));
    busy["customers_served_distribution"] =
        counts_json(count_distribution(report.pooled_busy, false));
    j["busy_periods"] = busy;

    j["idle"] = {{"count", report.pooled_idle.count},
                 {"total", report.pooled_idle.total},
                 {"mean", report.pooled_idle.mean}};

    if (report.theory) {
        ordered_json pmf = ordered_json::array();
        for (const auto& [n, p] : report.theory->pmf) {
            pmf.push_back({{"state", n}, {"probability", p}});
        }
        ordered_json theory = {{"rho", report.theory->rho}, {"pmf", pmf}};
        if (!report.theory->mean_sojourn.empty()) {
            ordered_json ms = ordered_json::array();
            for (const auto& [n, v] : report.theory->mean_sojourn) {
                ms.push_back({{"state", n}, {"mean_sojourn", v}});
            }
            theory["mean_sojourn"] = ms;
        } else {
            theory["mean_sojourn"] = nullptr; // no closed form for this system
        }
        if (report.theory_distance) {
            theory["comparison"] = {{"total_variation", report.theory_distance->total_variation},
                                    {"chi_square", report.theory_distance->chi_square}};
        }
        j["theory"] = theory;
    } else {
        j["theory"] = nullptr;
    }

    if (report.regression) {
        j["regression"] = {{"intercept", report.regression->intercept},
                           {"slope", report.regression->slope},
                           {"correlation", report.regression->correlation},
                           {"n_points", report.regression->n_points}};
    } else {
        j["regression"] = nullptr;
    }

    ordered_json reps = ordered_json::array();
    for (const auto& r : report.replications) {
        reps.push_back({{"replication", r.replication},
                        {"busy_period_count", r.busy_period_count},
                        {"idle_count", r.idle_count},
                        {"mean_in_system", r.mean_in_system},
                        {"max_state", r.max_state},
                        {"window", r.window}});
    }
    j["replications"] = reps;
    return j;
}

std::vector<std::filesystem::path> emit_report(const ExperimentReport& report,
                                               ReportFormat format,
                                               const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    const std::string prefix = report.config.label + "_";

    if (format == ReportFormat::Json) {
        const auto path = out_dir / (prefix + "report.json");
        std::ofstream out;
        open_out(out, path);
        out << report_to_json(report).dump(2) << '\n';
        written.push_back(path);
        return written;
    }

    {
        const auto path = out_dir / (prefix + "occupancy.csv");
        std::ofstream out;
        open_out(out, path);
        out << "state,visits,total_sojourn,mean_sojourn,theoretical_mean_sojourn,pmf\n";
        for (const auto& [state, so] : report.pooled_occupancy.per_state) {
            out << state << ',' << so.visits << ',' << so.total_sojourn << ','
                << so.mean_sojourn << ',';
            if (report.theory && !report.theory->mean_sojourn.empty()) {
                out << report.theory->mean_sojourn.at(state);
            }
            out << ',' << report.pooled_occupancy.time_weighted_pmf.at(state) << '\n';
        }
        written.push_back(path);
    }
    {
        const auto path = out_dir / (prefix + "busy_periods.csv");
        std::ofstream out;
        open_out(out, path);
        out << "index,start,length,customers_served,max_simultaneous,censored\n";
        for (const auto& r : report.pooled_busy) {
            out << r.index << ',' << r.start << ',' << r.length << ','
                << r.customers_served << ',' << r.max_simultaneous << ','
                << (r.censored ? 1 : 0) << '\n';
        }
        written.push_back(path);
    }
    {
        std::vector<double> lengths;
        for (const auto& r : report.pooled_busy) lengths.push_back(r.length);
        const auto path = out_dir / (prefix + "busy_length_histogram.csv");
        std::ofstream out;
        open_out(out, path);
        out << "bin_start,count\n";
        for (const auto& b : histogram(lengths, report.config.bin_width)) {
            out << b.bin_start << ',' << b.count << '\n';
        }
        written.push_back(path);
    }
    for (bool use_max : {true, false}) {
        const auto path = out_dir / (prefix + (use_max ? "max_simultaneous_histogram.csv"
                                                       : "customers_served_histogram.csv"));
        std::ofstream out;
        open_out(out, path);
        out << "bin_start,count\n";
        for (const auto& [value, count] : count_distribution(report.pooled_busy, use_max)) {
            out << value << ',' << count << '\n';
        }
        written.push_back(path);
    }
    if (report.regression) {
        const auto path = out_dir / (prefix + "regression.csv");
        std::ofstream out;
        open_out(out, path);
        out << "intercept,slope,correlation,n_points\n";
        out << report.regression->intercept << ',' << report.regression->slope << ','
            << report.regression->correlation << ',' << report.regression->n_points
            << '\n';
        written.push_back(path);
    }
    return written;
}

nlohmann::ordered_json compare_system_jsons(std::span<const ordered_json> reports) {
    if (reports.size() < 2) {
        throw ConfigError("compare needs at least two reports");
    }
    ordered_json table = ordered_json::array();
    ordered_json warnings = ordered_json::array();
    double rho0 = reports.front().at("config").at("rho").get<double>();
    for (const auto& r : reports) {
        const double rho = r.at("config").at("rho").get<double>();
        if (std::abs(rho - rho0) > 1e-9) {
            warnings.push_back("rho mismatch: " + r.at("label").get<std::string>());
        }
        ordered_json row;
        row["label"] = r.at("label");
        row["rho"] = rho;
        row["busy_period_count"] = r.at("busy_periods").at("count");
        row["mean_busy_period_length"] = r.at("busy_periods").at("mean_length");
        row["max_simultaneous_max"] = r.at("busy_periods").at("max_simultaneous_max");
        row["mean_in_system"] = r.at("occupancy").at("mean_in_system");
        if (!r.at("regression").is_null()) {
            row["regression_slope"] = r.at("regression").at("slope");
            row["regression_intercept"] = r.at("regression").at("intercept");
            row["regression_correlation"] = r.at("regression").at("correlation");
        }
        table.push_back(row);
    }
    return ordered_json{{"systems", table}, {"warnings", warnings}};
}

void write_replication_trace(const SimulationConfig& config, std::size_t replication,
                             std::ostream& out) {
    config.validate();
    if (replication >= config.replications) {
        throw ConfigError("trace replication index out of range");
    }
    write_trace_csv(out, build_stream(config, replication));
}

nlohmann::ordered_json compare_systems(std::span<const ExperimentReport> reports) {
    std::vector<ordered_json> jsons;
    jsons.reserve(reports.size());
    for (const auto& r : reports) jsons.push_back(report_to_json(r));
    return compare_system_jsons(jsons);
}

} // namespace isq
