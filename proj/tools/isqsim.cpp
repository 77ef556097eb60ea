#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "isq/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

struct RunOptions {
    std::string preset;
    std::string config_file;
    std::string format = "json";
    std::string out_dir = ".";
    std::string trace_file;
    std::vector<std::pair<std::string, std::string>> overrides;
};

int do_run(const RunOptions& opt) {
    isq::SimulationConfig config;
    if (!opt.preset.empty()) {
        config = isq::preset(opt.preset);
    } else if (!opt.config_file.empty()) {
        config = isq::load_config_file(opt.config_file);
    }
    for (const auto& [key, value] : opt.overrides) {
        isq::apply_config_entry(config, key, value);
    }
    config.validate();

    isq::ExperimentReport report = isq::run_experiment(config);

    std::vector<std::filesystem::path> written;
    if (opt.format == "json" || opt.format == "both") {
        auto files = isq::emit_report(report, isq::ReportFormat::Json, opt.out_dir);
        written.insert(written.end(), files.begin(), files.end());
    }
    if (opt.format == "csv" || opt.format == "both") {
        auto files = isq::emit_report(report, isq::ReportFormat::Csv, opt.out_dir);
        written.insert(written.end(), files.begin(), files.end());
    }
    if (!opt.trace_file.empty()) {
        std::ofstream out(opt.trace_file);
        if (!out) throw std::runtime_error("cannot write trace file: " + opt.trace_file);
        isq::write_replication_trace(config, 0, out);
        written.push_back(opt.trace_file);
    }
    for (const auto& path : written) {
        std::cout << "wrote " << path.string() << '\n';
    }
    std::cout << config.label << ": " << report.pooled_busy.size()
              << " busy periods, E[N] = " << report.pooled_occupancy.mean_in_system
              << ", rho = " << config.rho() << '\n';
    return kExitOk;
}

int do_compare(const std::vector<std::string>& report_files, const std::string& out_file) {
    std::vector<nlohmann::ordered_json> reports;
    for (const auto& file : report_files) {
        std::ifstream in(file);
        if (!in) throw isq::ConfigError("cannot open report: " + file);
        try {
            reports.push_back(nlohmann::ordered_json::parse(in));
        } catch (const nlohmann::json::parse_error& e) {
            throw isq::ConfigError(file + ": not a valid JSON report (" + e.what() + ")");
        }
    }
    auto table = isq::compare_system_jsons(reports);
    if (!table.at("warnings").empty()) {
        for (const auto& w : table.at("warnings")) {
            std::cerr << "warning: " << w.get<std::string>() << '\n';
        }
    }
    if (out_file.empty()) {
        std::cout << table.dump(2) << '\n';
    } else {
        std::ofstream out(out_file);
        if (!out) throw std::runtime_error("cannot write: " + out_file);
        out << table.dump(2) << '\n';
        std::cout << "wrote " << out_file << '\n';
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Infinite-server queue (GI/G/inf) discrete-event simulator"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Run one experiment and emit reports");
    run->add_option("-p,--preset", run_opt.preset,
                    "Named experiment preset (see `presets`)");
    run->add_option("-c,--config", run_opt.config_file, "Flat key=value config file");
    run->add_option("--format", run_opt.format, "Report format: json, csv or both")
        ->check(CLI::IsMember({"json", "csv", "both"}));
    run->add_option("-o,--out-dir", run_opt.out_dir, "Output directory");
    run->add_option("--trace", run_opt.trace_file,
                    "Write a (timestamp,mark,state) CSV trace of replication 0");

    // Flag overrides applied on top of preset/config file.
    std::map<std::string, std::string> flag_keys = {
        {"--system", "system"},
        {"--label", "label"},
        {"--arrival-law", "arrival_law"},
        {"--service-law", "service_law"},
        {"--mean-service", "mean_service"},
        {"--mean-interarrival", "mean_interarrival"},
        {"--pareto-gamma", "pareto_gamma"},
        {"--mixture-p", "mixture_p"},
        {"--arrivals", "arrivals"},
        {"--replications", "replications"},
        {"--seed-e", "seed_e"},
        {"--seed-f", "seed_f"},
        {"--seed-g", "seed_g"},
        {"--seed-h", "seed_h"},
        {"--master-salt", "master_salt"},
        {"--bin-width", "bin_width"},
    };
    std::map<std::string, std::string> flag_values;
    for (const auto& [flag, key] : flag_keys) {
        run->add_option_function<std::string>(
            flag,
            [&run_opt, key = key](const std::string& v) {
                run_opt.overrides.emplace_back(key, v);
            },
            "Override config key '" + key + "'");
    }

    std::vector<std::string> compare_files;
    std::string compare_out;
    auto* compare = app.add_subcommand("compare", "Side-by-side table from JSON reports");
    compare->add_option("reports", compare_files, "Report JSON files")->expected(-1);
    compare->add_option("-o,--out", compare_out, "Write table to file instead of stdout");

    auto* presets = app.add_subcommand("presets", "List named experiment presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (!run_opt.preset.empty() && !run_opt.config_file.empty()) {
                throw isq::ConfigError("give either --preset or --config, not both");
            }
            return do_run(run_opt);
        }
        if (compare->parsed()) return do_compare(compare_files, compare_out);
        if (presets->parsed()) {
            for (const auto& name : isq::preset_names()) std::cout << name << '\n';
            return kExitOk;
        }
    } catch (const isq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return kExitOk;
}
