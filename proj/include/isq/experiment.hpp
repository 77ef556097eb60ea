#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "isq/config.hpp"
#include "isq/metrics.hpp"
#include "isq/theory.hpp"

namespace isq {

struct ReplicationSummary {
    std::size_t replication = 0;
    std::size_t busy_period_count = 0;
    std::size_t idle_count = 0;
    double mean_in_system = 0.0;
    int max_state = 0;
    double window = 0.0;
};

struct ExperimentReport {
    SimulationConfig config;
    // Pooled across replications: occupancy by time-weighted pooling,
    // busy periods by record concatenation.
    OccupancyStats pooled_occupancy;
    std::vector<BusyPeriodRecord> pooled_busy;
    IdleStats pooled_idle;
    std::optional<TheoreticalOccupancy> theory;
    std::optional<DistributionDistance> theory_distance;
    std::optional<RegressionResult> regression;
    std::vector<ReplicationSummary> replications;

    int empirical_mode() const;
};

// Full pipeline: generate, merge, trajectory, metrics, theory/regression.
// Deterministic given (config, seeds).
ExperimentReport run_experiment(const SimulationConfig& config);

nlohmann::ordered_json report_to_json(const ExperimentReport& report);

enum class ReportFormat { Json, Csv };

// JSON writes <label>_report.json; CSV writes one file per table
// (occupancy, busy_periods, the three histograms, regression).
std::vector<std::filesystem::path> emit_report(const ExperimentReport& report,
                                               ReportFormat format,
                                               const std::filesystem::path& out_dir);

// Side-by-side table of shared statistics, keyed by system label.
// Requires >= 2 reports; mismatched rho yields a warning entry.
nlohmann::ordered_json compare_systems(std::span<const ExperimentReport> reports);

// Same comparison over already-serialized reports.
nlohmann::ordered_json compare_system_jsons(std::span<const nlohmann::ordered_json> reports);

// (timestamp, mark, state) CSV trace of one replication's event stream.
void write_replication_trace(const SimulationConfig& config, std::size_t replication,
                             std::ostream& out);

} // namespace isq
