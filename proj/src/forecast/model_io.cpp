#include "mpcbench/forecast/model_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "mpcbench/forecast/reference_forecasters.hpp"

namespace mpcbench::forecast {

namespace {

constexpr const char* kMagic = "mpcbench-model";
constexpr int kVersion = 1;

void expect(std::istream& is, const std::string& key) {
    std::string got;
    if (!(is >> got) || got != key) throw ForecastError("model file: expected '" + key + "', got '" + got + "'");
}

template <typename T>
T read_value(std::istream& is, const std::string& key) {
    expect(is, key);
    T v{};
    if (!(is >> v)) throw ForecastError("model file: bad value for '" + key + "'");
    return v;
}

}  // namespace

void save_model(std::ostream& os, const VariableModel& m) {
    const TrainedModel& t = m.model;
    os << kMagic << ' ' << kVersion << '\n';
    os << "arch " << to_string(t.shape.arch) << '\n';
    os << "window " << t.shape.window << '\n';
    os << "horizon " << t.shape.horizon << '\n';
    os << "channels " << t.shape.channels << '\n';
    os << "features " << m.features.size() << '\n';
    for (const auto& f : m.features) os << f << '\n';
    os << std::setprecision(17);
    for (const auto& s : t.scalers) os << "scaler " << s.mean << ' ' << s.stddev << '\n';
    os << "epochs " << t.epochs << '\n';
    os << "params " << t.params.size() << '\n';
    for (const double p : t.params) os << p << '\n';
    os << "end\n";
}

void save_model(const std::filesystem::path& path, const VariableModel& m) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw ForecastError("cannot open '" + path.string() + "' for writing");
    save_model(f, m);
}

VariableModel load_model(std::istream& is) {
    VariableModel m;
    if (read_value<int>(is, kMagic) != kVersion) throw ForecastError("model file: unsupported version");
    TrainedModel& t = m.model;
    t.shape.arch = parse_architecture(read_value<std::string>(is, "arch"));
    t.shape.window = read_value<std::size_t>(is, "window");
    t.shape.horizon = read_value<std::size_t>(is, "horizon");
    t.shape.channels = read_value<std::size_t>(is, "channels");
    t.shape.validate();
    const auto n_features = read_value<std::size_t>(is, "features");
    if (n_features + 1 != t.shape.channels) throw ForecastError("model file: feature count does not match channels");
    for (std::size_t i = 0; i < n_features; ++i) {
        std::string name;
        if (!(is >> name)) throw ForecastError("model file: truncated feature list");
        m.features.push_back(name);
    }
    for (std::size_t c = 0; c < t.shape.channels; ++c) {
        Scaler s;
        s.mean = read_value<double>(is, "scaler");
        if (!(is >> s.stddev) || !(s.stddev > 0.0)) throw ForecastError("model file: bad scaler");
        t.scalers.push_back(s);
    }
    t.epochs = read_value<std::size_t>(is, "epochs");
    const auto n = read_value<std::size_t>(is, "params");
    if (n != parameter_count(t.shape)) throw ForecastError("model file: parameter count does not match the shape");
    t.params.resize(n);
    for (double& p : t.params) {
        if (!(is >> p)) throw ForecastError("model file: truncated parameters");
    }
    expect(is, "end");
    return m;
}

VariableModel load_model(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ForecastError("cannot open '" + path.string() + "'");
    return load_model(f);
}

}  // namespace mpcbench::forecast
