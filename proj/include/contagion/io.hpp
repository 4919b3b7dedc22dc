#pragma once
#include <string>
#include <vector>

#include "contagion/batch.hpp"
#include "contagion/config_io.hpp"
#include "contagion/engine.hpp"

namespace contagion {

// CSV time series: pinned header, counts as integers, exposures with six
// significant digits, \n line endings.
std::string timeseries_csv(const std::vector<RoundRecord>& records);
void write_timeseries(const std::vector<RoundRecord>& records,
                      const std::string& path);

std::vector<RoundRecord> parse_timeseries_csv(const std::string& text);

json to_json(const RunSummary& s);
json to_json(const AggregateStats& a);
json to_json(const std::vector<GridPointResult>& results);
json to_json(const OutbreakMap& map);
json to_json(const SizeInvarianceReport& report);

void write_json(const json& j, const std::string& path);
std::string outbreak_map_csv(const OutbreakMap& map);

}  // namespace contagion
