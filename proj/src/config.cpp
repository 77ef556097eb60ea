#include "isq/config.hpp"

#include <fstream>
#include <sstream>

namespace isq {

void SimulationConfig::validate() const {
    arrival.validate();
    service.validate();
    if (n_arrivals < 1) throw ConfigError("n_arrivals must be >= 1");
    if (replications < 1) throw ConfigError("replications must be >= 1");
    if (!(bin_width > 0.0)) throw ConfigError("bin_width must be > 0");
    if (seeds.e_seed <= 0) throw ConfigError("seed_e must be positive");
    if (seeds.g_seed <= 0) throw ConfigError("seed_g must be positive");
    if (seeds.f_seed && *seeds.f_seed <= 0) throw ConfigError("seed_f must be positive");
    if (seeds.h_seed && *seeds.h_seed <= 0) throw ConfigError("seed_h must be positive");
    if (arrival.kind == ArrivalKind::Erlang2 && !seeds.f_seed) {
        throw ConfigError("Erlang-2 arrivals need seed_f");
    }
    if (service.kind == ServiceKind::Erlang2 && !seeds.h_seed) {
        throw ConfigError("Erlang-2 service needs seed_h");
    }
}

SimulationConfig preset(const std::string& name) {
    SimulationConfig c;
    c.label = name;
    c.arrival.mean_interarrival = 0.996;
    if (name == "MM-rho4") {
        c.arrival.kind = ArrivalKind::Exponential;
        c.service.kind = ServiceKind::Exponential;
        c.service.mean_service = 4.0;
        c.seeds.e_seed = 7528;
        c.seeds.g_seed = 7548;
    } else if (name == "MM-rho5") {
        c.arrival.kind = ArrivalKind::Exponential;
        c.service.kind = ServiceKind::Exponential;
        c.service.mean_service = 5.0;
        c.seeds.e_seed = 7529;
        c.seeds.g_seed = 7549;
    } else if (name == "ME2-rho4") {
        c.arrival.kind = ArrivalKind::Exponential;
        c.service.kind = ServiceKind::Erlang2;
        c.service.mean_service = 4.0;
        c.seeds.e_seed = 7528;
        c.seeds.g_seed = 7552;
        c.seeds.h_seed = 6666;
    } else if (name == "ME2-rho5") {
        c.arrival.kind = ArrivalKind::Exponential;
        c.service.kind = ServiceKind::Erlang2;
        c.service.mean_service = 5.0;
        c.seeds.e_seed = 7529;
        c.seeds.g_seed = 6552;
        c.seeds.h_seed = 6667;
    } else if (name == "E2E2-rho4") {
        c.arrival.kind = ArrivalKind::Erlang2;
        c.service.kind = ServiceKind::Erlang2;
        c.service.mean_service = 4.0;
        c.seeds.e_seed = 4536;
        c.seeds.f_seed = 4537;
        c.seeds.g_seed = 5224;
        c.seeds.h_seed = 6225;
    } else if (name == "E2E2-rho5") {
        c.arrival.kind = ArrivalKind::Erlang2;
        c.service.kind = ServiceKind::Erlang2;
        c.service.mean_service = 5.0;
        c.seeds.e_seed = 4538;
        c.seeds.f_seed = 4539;
        c.seeds.g_seed = 5228;
        c.seeds.h_seed = 6229;
    } else {
        throw ConfigError("unknown preset: " + name);
    }
    return c;
}

std::vector<std::string> preset_names() {
    return {"MM-rho4", "MM-rho5", "ME2-rho4", "ME2-rho5", "E2E2-rho4", "E2E2-rho5"};
}

namespace {

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": '" + value + "'");
    }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for " + key + ": '" + value + "'");
    }
}

} // namespace

void apply_config_entry(SimulationConfig& config, const std::string& key,
                        const std::string& value) {
    if (key == "label") config.label = value;
    else if (key == "arrival_law") config.arrival.kind = arrival_kind_from_string(value);
    else if (key == "mean_interarrival") config.arrival.mean_interarrival = parse_real(key, value);
    else if (key == "service_law") config.service.kind = service_kind_from_string(value);
    else if (key == "mean_service") config.service.mean_service = parse_real(key, value);
    else if (key == "pareto_gamma") config.service.pareto_gamma = parse_real(key, value);
    else if (key == "mixture_p") config.service.mixture_p = parse_real(key, value);
    else if (key == "arrivals") {
        std::int64_t n = parse_int(key, value);
        if (n < 1) throw ConfigError("arrivals must be >= 1");
        config.n_arrivals = static_cast<std::size_t>(n);
    } else if (key == "replications") {
        std::int64_t n = parse_int(key, value);
        if (n < 1) throw ConfigError("replications must be >= 1");
        config.replications = static_cast<std::size_t>(n);
    } else if (key == "seed_e") config.seeds.e_seed = parse_int(key, value);
    else if (key == "seed_f") config.seeds.f_seed = parse_int(key, value);
    else if (key == "seed_g") config.seeds.g_seed = parse_int(key, value);
    else if (key == "seed_h") config.seeds.h_seed = parse_int(key, value);
    else if (key == "master_salt") {
        std::int64_t s = parse_int(key, value);
        if (s < 0) throw ConfigError("master_salt must be >= 0");
        config.seeds.master_salt = static_cast<std::uint64_t>(s);
    } else if (key == "bin_width") config.bin_width = parse_real(key, value);
    else if (key == "system") config = preset(value);
    else throw ConfigError("unknown config key: " + key);
}

SimulationConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    SimulationConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected key=value");
        }
        apply_config_entry(config, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
    }
    return config;
}

} // namespace isq
