#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpcbench/tscore/table.hpp"

namespace mpcbench::harness {

class PlotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parsed layout string "x=<col>;y=<col>[,<col>...][;group=<col>[,<col>...]]".
struct PlotLayout {
    std::string x;
    std::vector<std::string> y;
    std::vector<std::string> group;
};

PlotLayout parse_layout(const std::string& kind);

/// Writes <dir>/<stem>.csv, one whitespace-separated <stem>[_<group>].dat per
/// distinct group value and a <stem>.plt gnuplot script plotting them all.
/// Non-numeric x values are quoted and used as tic labels. Returns the paths
/// written. Throws PlotError for an empty table or unknown column.
std::vector<std::filesystem::path> emit_plotdata(const tscore::Table& table, const std::string& kind,
                                                 const std::filesystem::path& dir, const std::string& stem);

}  // namespace mpcbench::harness
