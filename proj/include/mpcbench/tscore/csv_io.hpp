#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mpcbench/tscore/dataset.hpp"

namespace mpcbench::tscore {

/// Maps CSV columns onto dataset variables.
struct ColumnSchema {
    std::string timestamp = "timestamp";
    std::vector<std::pair<std::string, std::string>> buildings;  // building id -> column
    std::string solar = "solar";
    std::string price = "price";
    std::string carbon = "carbon";
    std::vector<std::pair<std::string, std::string>> covariates;  // covariate name -> column
};

/// Reads an hourly dataset. Throws DataError on a missing column, a missing or
/// non-numeric cell (naming the data row), non-monotone timestamps, or a gap in
/// the grid.
ScenarioDataset load_dataset(const std::filesystem::path& path, const ColumnSchema& schema);
ScenarioDataset parse_dataset(std::istream& in, const ColumnSchema& schema);

/// Schema read off a header line: "load:<id>" columns are buildings, the
/// fixed names are the shared signals, anything else is a covariate.
ColumnSchema infer_schema(const std::vector<std::string>& header);

/// Reads `path` with the schema inferred from its header.
ScenarioDataset load_dataset(const std::filesystem::path& path);

/// Writes `ds` with the column names of `schema`.
void write_dataset(const std::filesystem::path& path, const ScenarioDataset& ds, const ColumnSchema& schema);
void write_dataset(std::ostream& out, const ScenarioDataset& ds, const ColumnSchema& schema);

/// Schema whose column names equal the dataset's own variable names.
ColumnSchema default_schema(const ScenarioDataset& ds);

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace mpcbench::tscore
