#include "mpcbench/harness/plotdata.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace mpcbench::harness {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::size_t column_index(const tscore::Table& t, const std::string& name) {
    const auto& cols = t.columns();
    const auto it = std::find(cols.begin(), cols.end(), name);
    if (it == cols.end()) throw PlotError("no column '" + name + "' in table");
    return static_cast<std::size_t>(it - cols.begin());
}

std::string safe_name(const std::string& s) {
    std::string out;
    for (const char c : s) out += std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' ? c : '_';
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PlotError("cannot write '" + path.string() + "'");
    out << text;
}

}  // namespace

PlotLayout parse_layout(const std::string& kind) {
    PlotLayout layout;
    for (const auto& part : split(kind, ';')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw PlotError("bad plot layout '" + kind + "'");
        const std::string key = part.substr(0, eq);
        const std::string value = part.substr(eq + 1);
        if (key == "x") {
            layout.x = value;
        } else if (key == "y") {
            layout.y = split(value, ',');
        } else if (key == "group") {
            layout.group = split(value, ',');
        } else {
            throw PlotError("unknown plot layout key '" + key + "'");
        }
    }
    if (layout.x.empty() || layout.y.empty()) throw PlotError("plot layout needs x and y: '" + kind + "'");
    return layout;
}

std::vector<std::filesystem::path> emit_plotdata(const tscore::Table& table, const std::string& kind,
                                                 const std::filesystem::path& dir, const std::string& stem) {
    if (table.empty()) throw PlotError("cannot plot empty table '" + stem + "'");
    const PlotLayout layout = parse_layout(kind);
    const std::size_t xi = column_index(table, layout.x);
    std::vector<std::size_t> yi;
    for (const auto& y : layout.y) yi.push_back(column_index(table, y));
    std::vector<std::size_t> gi;
    for (const auto& g : layout.group) gi.push_back(column_index(table, g));

    const bool categorical = std::any_of(table.rows().begin(), table.rows().end(),
                                         [&](const auto& row) { return std::holds_alternative<std::string>(row[xi]); });

    // Group label -> .dat body, in first-seen order.
    std::vector<std::string> order;
    std::map<std::string, std::string> bodies;
    for (const auto& row : table.rows()) {
        std::string label;
        for (const std::size_t g : gi) {
            const std::string v = tscore::format_cell(row[g]);
            if (v.empty()) continue;
            label += (label.empty() ? "" : "_") + v;
        }
        if (!bodies.count(label)) {
            order.push_back(label);
            std::string head = "# " + layout.x;
            for (const auto& y : layout.y) head += " " + y;
            bodies[label] = head + "\n";
        }
        std::string line = categorical ? "\"" + tscore::format_cell(row[xi]) + "\"" : tscore::format_cell(row[xi]);
        for (const std::size_t y : yi) line += " " + tscore::format_cell(row[y]);
        bodies[label] += line + "\n";
    }

    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    const auto csv = dir / (stem + ".csv");
    table.write_csv(csv);
    written.push_back(csv);

    std::ostringstream plt;
    plt << "set key outside\nset xlabel \"" << layout.x << "\"\n";
    if (categorical) plt << "set xtics rotate by -45\n";
    plt << "plot";
    bool first = true;
    for (const auto& label : order) {
        const std::string file = stem + (label.empty() ? "" : "_" + safe_name(label)) + ".dat";
        write_file(dir / file, bodies[label]);
        written.push_back(dir / file);
        for (std::size_t k = 0; k < layout.y.size(); ++k) {
            const std::string title = label.empty() ? layout.y[k] : label + " " + layout.y[k];
            plt << (first ? " " : ", \\\n     ") << "'" << file << "' using "
                << (categorical ? "0:" + std::to_string(k + 2) + ":xtic(1)" : "1:" + std::to_string(k + 2))
                << " with linespoints title \"" << title << "\"";
            first = false;
        }
    }
    plt << "\n";
    write_file(dir / (stem + ".plt"), plt.str());
    written.push_back(dir / (stem + ".plt"));
    return written;
}

}  // namespace mpcbench::harness
