#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "contagion/batch.hpp"
#include "contagion/io.hpp"

namespace fs = std::filesystem;
using namespace contagion;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory: " + dir);
}

bool env_seed(std::uint64_t& out) {
    const char* v = std::getenv("CONTAGION_SEED");
    if (!v || !*v) return false;
    try {
        out = std::stoull(v);
    } catch (const std::exception&) {
        throw ConfigError("CONTAGION_SEED: expected an unsigned integer");
    }
    return true;
}

// "a,b,c" or "lo:hi:step" (inclusive endpoints).
std::vector<double> parse_axis(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    try {
        if (text.find(':') != std::string::npos) {
            std::istringstream ss(text);
            std::string lo_s, hi_s, st_s;
            if (!std::getline(ss, lo_s, ':') || !std::getline(ss, hi_s, ':') ||
                !std::getline(ss, st_s))
                throw ConfigError(flag + ": expected lo:hi:step");
            double lo = std::stod(lo_s), hi = std::stod(hi_s), st = std::stod(st_s);
            if (st <= 0.0 || hi < lo) throw ConfigError(flag + ": bad range");
            int count = static_cast<int>(std::floor((hi - lo) / st + 0.5)) + 1;
            for (int k = 0; k < count; ++k) out.push_back(lo + st * k);
        } else {
            std::istringstream ss(text);
            std::string cell;
            while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError(flag + ": malformed value list \"" + text + "\"");
    }
    if (out.empty()) throw ConfigError(flag + ": empty value list");
    return out;
}

int cmd_run(const std::string& config_path, const std::string& preset,
            std::int64_t seed, const std::string& out_dir, std::int64_t max_rounds) {
    json doc = json::object();
    if (!config_path.empty()) {
        const std::string text = read_file(config_path);
        try {
            doc = json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("config: malformed JSON: ") + e.what());
        }
        if (!doc.is_object()) throw ConfigError("config: expected an object");
    }
    if (!preset.empty()) doc["preset"] = preset;
    SimulationConfig cfg = parse_simulation_config(doc);
    std::uint64_t env;
    if (seed >= 0)
        cfg.master_seed = static_cast<std::uint64_t>(seed);
    else if (env_seed(env))
        cfg.master_seed = env;
    if (max_rounds == 0) throw ConfigError("max_rounds: must be >= 1");
    if (max_rounds > 0) cfg.max_rounds = static_cast<std::uint32_t>(max_rounds);
    validate(cfg);

    RunResult result = run(cfg);
    ensure_dir(out_dir);
    write_timeseries(result.records, out_dir + "/timeseries.csv");
    write_json(to_json(result.summary), out_dir + "/summary.json");
    std::cout << "run: " << result.summary.rounds_elapsed
              << " rounds, infection_rate " << result.summary.infection_rate
              << ", death_rate " << result.summary.death_rate << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, std::int64_t replicates,
              unsigned parallel, const std::string& out_dir) {
    SweepSpec spec = parse_sweep_spec_text(read_file(config_path));
    if (replicates == 0) throw ConfigError("replicates: must be >= 1");
    if (replicates > 0) spec.replicates = static_cast<std::uint32_t>(replicates);
    auto results = run_batch(spec, parallel);
    ensure_dir(out_dir);
    write_json(to_json(results), out_dir + "/aggregates.json");
    std::cout << "sweep: " << results.size() << " grid points x "
              << spec.replicates << " replicates\n";
    return 0;
}

int cmd_outbreak_map(const std::string& thresholds, const std::string& contacts,
                     std::int64_t replicates, unsigned parallel,
                     const std::string& out_dir) {
    if (replicates <= 0) throw ConfigError("replicates: must be >= 1");
    std::uint64_t seed = 0;
    env_seed(seed);
    json base = presets().at("moderate");
    OutbreakMap map = outbreak_map(parse_axis(thresholds, "--thresholds"),
                                   parse_axis(contacts, "--contacts"), base,
                                   static_cast<std::uint32_t>(replicates), seed,
                                   parallel);
    ensure_dir(out_dir);
    write_json(to_json(map), out_dir + "/outbreak_map.json");
    std::ofstream f(out_dir + "/outbreak_map.csv", std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + out_dir + "/outbreak_map.csv");
    f << outbreak_map_csv(map);
    std::cout << "outbreak-map: " << map.thresholds.size() << " x "
              << map.contacts.size() << " grid\n";
    return 0;
}

int cmd_size_invariance(const std::string& sizes, bool community,
                        std::int64_t replicates, unsigned parallel,
                        const std::string& out_dir) {
    if (replicates <= 0) throw ConfigError("replicates: must be >= 1");
    std::uint64_t seed = 0;
    env_seed(seed);
    std::vector<std::uint32_t> ns;
    for (double v : parse_axis(sizes, "--sizes"))
        ns.push_back(static_cast<std::uint32_t>(v));
    json base = presets().at("moderate");
    if (community)
        base["network"]["community"] = {{"community_size", 100},
                                        {"inter_community_links", 1}};
    auto report = size_invariance_report(ns, base,
                                         static_cast<std::uint32_t>(replicates),
                                         seed, parallel);
    ensure_dir(out_dir);
    write_json(to_json(report), out_dir + "/size_invariance.json");
    std::cout << "size-invariance: max pairwise infection diff "
              << report.max_pairwise_infection_diff << ", death diff "
              << report.max_pairwise_death_diff << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contagion: random-matrix epidemic simulation"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "single simulation run");
    std::string run_config, run_preset, run_out = "out";
    std::int64_t run_seed = -1, run_max_rounds = -1;
    run_cmd->add_option("--config", run_config, "config JSON file");
    run_cmd->add_option("--preset", run_preset, "scenario preset name");
    run_cmd->add_option("--seed", run_seed, "master seed (fallback: CONTAGION_SEED)");
    run_cmd->add_option("--out-dir", run_out, "output directory");
    run_cmd->add_option("--max-rounds", run_max_rounds, "round limit override");

    auto* sweep_cmd = app.add_subcommand("sweep", "replicated parameter sweep");
    std::string sweep_config, sweep_out = "out";
    std::int64_t sweep_reps = -1;
    unsigned sweep_parallel = 1;
    sweep_cmd->add_option("--config", sweep_config, "sweep spec JSON file")
        ->required();
    sweep_cmd->add_option("--replicates", sweep_reps, "replicates per grid point");
    sweep_cmd->add_option("--parallel", sweep_parallel, "worker count");
    sweep_cmd->add_option("--out-dir", sweep_out, "output directory");

    auto* map_cmd = app.add_subcommand("outbreak-map", "outbreak boundary grid");
    std::string map_thresholds = "0.1:1.2:0.1", map_contacts = "1:10:1",
                map_out = "out";
    std::int64_t map_reps = 30;
    unsigned map_parallel = 1;
    map_cmd->add_option("--thresholds", map_thresholds,
                        "pathogenic threshold axis (list or lo:hi:step)");
    map_cmd->add_option("--contacts", map_contacts,
                        "average contact axis (list or lo:hi:step)");
    map_cmd->add_option("--replicates", map_reps, "replicates per cell");
    map_cmd->add_option("--parallel", map_parallel, "worker count");
    map_cmd->add_option("--out-dir", map_out, "output directory");

    auto* size_cmd = app.add_subcommand("size-invariance", "rate stability across N");
    std::string size_sizes = "100,500,1000,2000", size_out = "out";
    bool size_community = false;
    std::int64_t size_reps = 30;
    unsigned size_parallel = 1;
    size_cmd->add_option("--sizes", size_sizes, "population sizes");
    size_cmd->add_flag("--community", size_community,
                       "community network (size 100, 1 link)");
    size_cmd->add_option("--replicates", size_reps, "replicates per size");
    size_cmd->add_option("--parallel", size_parallel, "worker count");
    size_cmd->add_option("--out-dir", size_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (run_cmd->parsed())
            return cmd_run(run_config, run_preset, run_seed, run_out, run_max_rounds);
        if (sweep_cmd->parsed())
            return cmd_sweep(sweep_config, sweep_reps, sweep_parallel, sweep_out);
        if (map_cmd->parsed())
            return cmd_outbreak_map(map_thresholds, map_contacts, map_reps,
                                    map_parallel, map_out);
        if (size_cmd->parsed())
            return cmd_size_invariance(size_sizes, size_community, size_reps,
                                       size_parallel, size_out);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 2;
    } catch (const StateError& e) {
        std::cerr << "state error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
