#include "contagion/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace contagion {

namespace {

std::string sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string timeseries_csv(const std::vector<RoundRecord>& records) {
    std::string out =
        "round,susceptible,infected,recovered,dead,quarantined,cum_infected,"
        "max_exposure,total_exposure\n";
    for (const RoundRecord& r : records) {
        out += std::to_string(r.round) + ',' + std::to_string(r.susceptible) + ',' +
               std::to_string(r.infected) + ',' + std::to_string(r.recovered) + ',' +
               std::to_string(r.dead) + ',' + std::to_string(r.quarantined) + ',' +
               std::to_string(r.cumulative_unique_infected) + ',' +
               sig6(r.max_exposure) + ',' + sig6(r.total_exposure) + '\n';
    }
    return out;
}

void write_timeseries(const std::vector<RoundRecord>& records,
                      const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << timeseries_csv(records);
    if (!f) throw IoError("write failed: " + path);
}

std::vector<RoundRecord> parse_timeseries_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("timeseries: empty document");
    const std::string header =
        "round,susceptible,infected,recovered,dead,quarantined,cum_infected,"
        "max_exposure,total_exposure";
    if (line != header) throw IoError("timeseries: unexpected header");
    std::vector<RoundRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 9) throw IoError("timeseries: malformed row");
        RoundRecord r;
        r.round = static_cast<std::uint32_t>(std::stoul(cells[0]));
        r.susceptible = static_cast<std::uint32_t>(std::stoul(cells[1]));
        r.infected = static_cast<std::uint32_t>(std::stoul(cells[2]));
        r.recovered = static_cast<std::uint32_t>(std::stoul(cells[3]));
        r.dead = static_cast<std::uint32_t>(std::stoul(cells[4]));
        r.quarantined = static_cast<std::uint32_t>(std::stoul(cells[5]));
        r.cumulative_unique_infected = static_cast<std::uint32_t>(std::stoul(cells[6]));
        r.max_exposure = std::stod(cells[7]);
        r.total_exposure = std::stod(cells[8]);
        out.push_back(r);
    }
    return out;
}

json to_json(const RunSummary& s) {
    return {{"infection_rate", s.infection_rate}, {"death_rate", s.death_rate},
            {"rounds_elapsed", s.rounds_elapsed}, {"outbreak", s.outbreak},
            {"peak_infected", s.peak_infected},   {"seed", s.seed}};
}

json to_json(const AggregateStats& a) {
    return {{"mean_infection_rate", a.mean_infection_rate},
            {"stddev_infection_rate", a.stddev_infection_rate},
            {"mean_death_rate", a.mean_death_rate},
            {"stddev_death_rate", a.stddev_death_rate},
            {"outbreak_fraction", a.outbreak_fraction},
            {"mean_rounds", a.mean_rounds}};
}

json to_json(const std::vector<GridPointResult>& results) {
    json out = json::array();
    for (const GridPointResult& g : results) {
        json item;
        item["grid_index"] = g.grid_index;
        item["axis_values"] = g.axis_values;
        json runs = json::array();
        for (const RunSummary& s : g.summaries) runs.push_back(to_json(s));
        item["summaries"] = std::move(runs);
        item["aggregate"] = to_json(aggregate(g.summaries));
        out.push_back(std::move(item));
    }
    return out;
}

json to_json(const OutbreakMap& map) {
    json out;
    out["pathogenic_thresholds"] = map.thresholds;
    out["contact_means"] = map.contacts;
    out["outbreak_fraction"] = map.fraction;
    return out;
}

json to_json(const SizeInvarianceReport& report) {
    json rows = json::array();
    for (const SizeInvarianceRow& r : report.rows) {
        json row;
        row["population"] = r.population;
        row["aggregate"] = to_json(r.stats);
        json runs = json::array();
        for (const RunSummary& s : r.summaries) runs.push_back(to_json(s));
        row["summaries"] = std::move(runs);
        rows.push_back(std::move(row));
    }
    json out;
    out["rows"] = std::move(rows);
    out["max_pairwise_infection_diff"] = report.max_pairwise_infection_diff;
    out["max_pairwise_death_diff"] = report.max_pairwise_death_diff;
    return out;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << j.dump(2) << '\n';
    if (!f) throw IoError("write failed: " + path);
}

std::string outbreak_map_csv(const OutbreakMap& map) {
    std::string out = "pathogenic_threshold";
    for (double c : map.contacts) out += ",contacts_" + sig6(c);
    out += '\n';
    for (std::size_t t = 0; t < map.thresholds.size(); ++t) {
        out += sig6(map.thresholds[t]);
        for (double f : map.fraction[t]) out += ',' + sig6(f);
        out += '\n';
    }
    return out;
}

}  // namespace contagion
