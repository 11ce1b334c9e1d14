#include "mpcbench/harness/runner.hpp"

#include <fstream>
#include <json.hpp>

#include "mpcbench/harness/plotdata.hpp"

#ifndef MPCBENCH_VERSION
#define MPCBENCH_VERSION "unknown"
#endif

namespace mpcbench::harness {

std::string toolkit_version() { return MPCBENCH_VERSION; }

RunSummary write_output(const RunConfig& cfg, const ExperimentOutput& output, const std::filesystem::path& out) {
    RunSummary summary;
    summary.directory = out / cfg.experiment;
    std::filesystem::create_directories(summary.directory);
    for (const auto& t : output.tables) {
        if (t.plot.empty() || t.table.empty()) {
            const auto path = summary.directory / (t.name + ".csv");
            t.table.write_csv(path);
            summary.files.push_back(path);
        } else {
            const auto files = emit_plotdata(t.table, t.plot, summary.directory, t.name);
            summary.files.insert(summary.files.end(), files.begin(), files.end());
        }
    }
    if (!output.timings.empty()) {
        nlohmann::ordered_json timing = nlohmann::ordered_json::object();
        for (const auto& [label, seconds] : output.timings) timing[label] = seconds;
        const auto path = summary.directory / "timing.json";
        std::ofstream(path, std::ios::binary) << timing.dump(2) << "\n";
        summary.files.push_back(path);
    }
    nlohmann::ordered_json manifest;
    manifest["experiment"] = cfg.experiment;
    manifest["version"] = toolkit_version();
    manifest["config_hash"] = config_hash(cfg);
    manifest["seed"] = cfg.seed;
    manifest["config"] = canonical_config(cfg);
    auto& files = manifest["files"] = nlohmann::ordered_json::array();
    for (const auto& f : summary.files) files.push_back(f.filename().string());
    const auto path = summary.directory / "manifest.json";
    std::ofstream(path, std::ios::binary) << manifest.dump(2) << "\n";
    summary.files.push_back(path);
    return summary;
}

RunSummary run_and_write(const RunConfig& cfg, const std::filesystem::path& out) {
    const Context ctx = prepare_context(cfg);
    return write_output(cfg, run_experiment(ctx), out);
}

}  // namespace mpcbench::harness
