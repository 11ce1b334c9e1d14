#include "mpcbench/tscore/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace mpcbench::tscore {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& cell, double& out) {
    const std::string t = trim(cell);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (*first == '+') ++first;
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last && std::isfinite(out);
}

std::string format_value(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

ScenarioDataset parse_dataset(std::istream& in, const ColumnSchema& schema) {
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("empty CSV input");
    }
    const auto header = split_csv_line(line);
    std::map<std::string, std::size_t> column_index;
    for (std::size_t i = 0; i < header.size(); ++i) {
        column_index.emplace(header[i], i);
    }
    auto col = [&](const std::string& name) {
        const auto it = column_index.find(name);
        if (it == column_index.end()) {
            throw DataError("missing column '" + name + "'");
        }
        return it->second;
    };

    // Order: buildings, solar, price, carbon, covariates.
    std::vector<std::size_t> value_cols;
    std::vector<std::string> value_names;
    for (const auto& [id, c] : schema.buildings) {
        value_cols.push_back(col(c));
        value_names.push_back(c);
    }
    for (const auto* c : {&schema.solar, &schema.price, &schema.carbon}) {
        value_cols.push_back(col(*c));
        value_names.push_back(*c);
    }
    for (const auto& [name, c] : schema.covariates) {
        value_cols.push_back(col(c));
        value_names.push_back(c);
    }
    const std::size_t ts_col = col(schema.timestamp);

    std::vector<std::vector<double>> columns(value_cols.size());
    std::vector<Timestamp> stamps;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() < header.size()) {
            throw DataError("row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                            " cells, found " + std::to_string(cells.size()));
        }
        stamps.push_back(parse_timestamp(cells[ts_col]));
        for (std::size_t k = 0; k < value_cols.size(); ++k) {
            double v = 0.0;
            if (!parse_number(cells[value_cols[k]], v)) {
                throw DataError("row " + std::to_string(row) + " rejected: missing or non-numeric value in column '" +
                                value_names[k] + "'");
            }
            columns[k].push_back(v);
        }
        ++row;
    }
    if (stamps.empty()) {
        throw DataError("CSV has no data rows");
    }

    double step_hours = 1.0;
    if (stamps.size() > 1) {
        const auto first_step = stamps[1] - stamps[0];
        if (first_step.count() <= 0) {
            throw DataError("non-monotone timestamps at row 1");
        }
        step_hours = static_cast<double>(first_step.count()) / 3600.0;
        for (std::size_t i = 1; i < stamps.size(); ++i) {
            const auto d = stamps[i] - stamps[i - 1];
            if (d.count() <= 0) {
                throw DataError("non-monotone timestamps at row " + std::to_string(i));
            }
            if (d != first_step) {
                throw DataError("gap in hourly grid at row " + std::to_string(i));
            }
        }
    }

    std::size_t k = 0;
    auto take = [&]() { return TimeSeries(stamps.front(), step_hours, std::move(columns[k++])); };
    std::vector<NamedSeries> buildings;
    for (const auto& [id, c] : schema.buildings) {
        buildings.push_back({id, take()});
    }
    TimeSeries solar = take();
    TimeSeries price = take();
    TimeSeries carbon = take();
    std::vector<NamedSeries> covariates;
    for (const auto& [name, c] : schema.covariates) {
        covariates.push_back({name, take()});
    }
    return ScenarioDataset(std::move(buildings), std::move(solar), std::move(price), std::move(carbon),
                           std::move(covariates));
}

ScenarioDataset load_dataset(const std::filesystem::path& path, const ColumnSchema& schema) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path.string() + "'");
    }
    return parse_dataset(in, schema);
}

ColumnSchema infer_schema(const std::vector<std::string>& header) {
    ColumnSchema schema;
    bool has_time = false;
    for (const auto& raw : header) {
        const std::string c = trim(raw);
        if (c == schema.timestamp) {
            has_time = true;
        } else if (c.rfind("load:", 0) == 0) {
            schema.buildings.emplace_back(c.substr(5), c);
        } else if (c != schema.solar && c != schema.price && c != schema.carbon) {
            schema.covariates.emplace_back(c, c);
        }
    }
    if (!has_time) throw DataError("header has no 'timestamp' column");
    if (schema.buildings.empty()) throw DataError("header has no 'load:<id>' column");
    return schema;
}

ScenarioDataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path.string() + "'");
    }
    std::string header;
    std::getline(in, header);
    return load_dataset(path, infer_schema(split_csv_line(header)));
}

void write_dataset(std::ostream& out, const ScenarioDataset& ds, const ColumnSchema& schema) {
    std::vector<const TimeSeries*> series;
    out << schema.timestamp;
    for (const auto& [id, c] : schema.buildings) {
        out << ',' << c;
        series.push_back(&ds.load(id));
    }
    out << ',' << schema.solar << ',' << schema.price << ',' << schema.carbon;
    series.insert(series.end(), {&ds.solar(), &ds.price(), &ds.carbon()});
    for (const auto& [name, c] : schema.covariates) {
        out << ',' << c;
        series.push_back(&ds.covariate(name));
    }
    out << '\n';
    for (std::size_t t = 0; t < ds.size(); ++t) {
        out << format_timestamp(ds.solar().time_at(t));
        for (const auto* s : series) {
            out << ',' << format_value((*s)[t]);
        }
        out << '\n';
    }
}

void write_dataset(const std::filesystem::path& path, const ScenarioDataset& ds, const ColumnSchema& schema) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    write_dataset(out, ds, schema);
}

ColumnSchema default_schema(const ScenarioDataset& ds) {
    ColumnSchema schema;
    for (const auto& b : ds.buildings()) {
        schema.buildings.emplace_back(b.name, load_variable(b.name));
    }
    for (const auto& c : ds.covariates()) {
        schema.covariates.emplace_back(c.name, c.name);
    }
    return schema;
}

}  // namespace mpcbench::tscore
