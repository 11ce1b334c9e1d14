#pragma once

#include <filesystem>
#include <iosfwd>

#include "mpcbench/forecast/model_forecaster.hpp"

namespace mpcbench::forecast {

/// Text container, one token or value per line after the header:
///
///   mpcbench-model 1
///   arch <linear|resmlp|conv>
///   window <W>
///   horizon <T>
///   channels <C>
///   features <n>        followed by n lines, one feature name each
///   scaler <mean> <std> one line per channel
///   epochs <n>
///   params <count>      followed by count lines, one value each
///   end
///
/// Numbers are written with 17 significant digits, so load(save(m)) == m.
void save_model(std::ostream& os, const VariableModel& m);
void save_model(const std::filesystem::path& path, const VariableModel& m);

/// Throws ForecastError on a malformed or unsupported container.
VariableModel load_model(std::istream& is);
VariableModel load_model(const std::filesystem::path& path);

}  // namespace mpcbench::forecast
