#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mpcbench/harness/config.hpp"
#include "mpcbench/harness/experiments.hpp"

namespace mpcbench::harness {

struct RunSummary {
    std::filesystem::path directory;
    std::vector<std::filesystem::path> files;
};

/// Runs cfg.experiment and writes its tables under <out>/<experiment>/ with a
/// manifest.json listing the config hash, toolkit version, seed and files.
RunSummary run_and_write(const RunConfig& cfg, const std::filesystem::path& out);

/// Writes an already computed output; used by run_and_write.
RunSummary write_output(const RunConfig& cfg, const ExperimentOutput& output, const std::filesystem::path& out);

/// Toolkit version string baked in at build time.
std::string toolkit_version();

}  // namespace mpcbench::harness
