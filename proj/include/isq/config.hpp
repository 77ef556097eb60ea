#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "isq/rng.hpp"
#include "isq/sampling.hpp"

namespace isq {

struct SimulationConfig {
    std::string label = "custom";
    ArrivalLaw arrival;
    ServiceLaw service;
    std::size_t n_arrivals = 25000;
    std::size_t replications = 10;
    SeedPlan seeds;
    double bin_width = 1.0; // busy-period length histogram

    double rho() const { return service.mean_service / arrival.mean_interarrival; }

    // Throws ConfigError on any invalid combination, before any simulation work.
    void validate() const;
};

// The six systems from the source study: M/M, M/E2 and E2/E2 at mean
// service times 4 and 5. Seeds follow the original runs; the generator
// itself differs, so observed counts are not comparable one-to-one.
SimulationConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// Flat key=value file, '#' comments. Unknown keys are rejected.
SimulationConfig load_config_file(const std::filesystem::path& path);

// Applies one key=value override on top of an existing config.
void apply_config_entry(SimulationConfig& config, const std::string& key,
                        const std::string& value);

} // namespace isq
