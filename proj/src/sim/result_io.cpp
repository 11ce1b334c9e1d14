#include <charconv>
#include <fstream>
#include <stdexcept>

#include "mpcbench/sim/result.hpp"

namespace mpcbench::sim {

namespace {

std::string num(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::ofstream open(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

}  // namespace

void write_trajectories_csv(const std::filesystem::path& path, const SimulationResult& r) {
    auto out = open(path);
    out << 't';
    for (const auto& b : r.buildings) out << ",soc_" << b << ",action_" << b << ",net_demand_" << b;
    out << '\n';
    for (std::size_t k = 0; k < r.steps(); ++k) {
        out << r.first_step + k;
        for (std::size_t i = 0; i < r.buildings.size(); ++i) {
            out << ',' << num(r.soc[i][k]) << ',' << num(r.action[i][k]) << ',' << num(r.net_demand[i][k]);
        }
        out << '\n';
    }
}

void write_summary_csv(const std::filesystem::path& path, const SimulationResult& r) {
    auto out = open(path);
    out << "component,value,baseline\n";
    out << "price," << num(r.components.price) << ',' << num(r.baseline_components.price) << '\n';
    out << "carbon," << num(r.components.carbon) << ',' << num(r.baseline_components.carbon) << '\n';
    out << "ramp," << num(r.components.ramp) << ',' << num(r.baseline_components.ramp) << '\n';
    out << "performance_ratio," << num(r.performance_ratio) << ",1\n";
}

}  // namespace mpcbench::sim
