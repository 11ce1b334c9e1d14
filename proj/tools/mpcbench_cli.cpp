#include <CLI11.hpp>
#include <iostream>

#include "mpcbench/harness/config.hpp"
#include "mpcbench/harness/runner.hpp"

namespace {

constexpr int kConfigFailure = 2;
constexpr int kRuntimeFailure = 3;

struct Flags {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;
};

}  // namespace

int main(int argc, char** argv) {
    using namespace mpcbench::harness;
    CLI::App app{"Battery MPC forecasting benchmark"};
    app.set_version_flag("--version", toolkit_version());
    app.require_subcommand(1);
    Flags flags;
    for (const auto& name : kExperiments) {
        auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config,-c", flags.config, "TOML config file")->check(CLI::ExistingFile);
        sub->add_option("--out,-o", flags.out, "output directory (overrides the config)");
        sub->add_option("--seed", flags.seed, "master seed (overrides the config)");
        sub->add_option("--threads,-j", flags.threads, "worker threads (overrides the config)")
            ->check(CLI::PositiveNumber);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigFailure;
    }
    const std::string experiment = app.get_subcommands().front()->get_name();

    RunConfig cfg;
    try {
        if (!flags.config.empty()) cfg = load_config(flags.config);
        cfg.experiment = experiment;
        if (!flags.out.empty()) cfg.output = flags.out;
        if (flags.seed) cfg.seed = *flags.seed;
        if (flags.threads) cfg.threads = *flags.threads;
        cfg.validate();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigFailure;
    }
    try {
        const RunSummary s = run_and_write(cfg, cfg.output);
        std::cout << "wrote " << s.files.size() << " files to " << s.directory.string() << "\n";
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeFailure;
    }
    return 0;
}
