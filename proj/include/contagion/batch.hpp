#pragma once
#include <cstdint>
#include <vector>

#include "contagion/config_io.hpp"
#include "contagion/engine.hpp"

namespace contagion {

struct AggregateStats {
    double mean_infection_rate = 0.0;
    double stddev_infection_rate = 0.0;
    double mean_death_rate = 0.0;
    double stddev_death_rate = 0.0;
    double outbreak_fraction = 0.0;
    double mean_rounds = 0.0;
};

struct GridPointResult {
    std::size_t grid_index = 0;
    json axis_values;  // path -> value for this grid point
    std::vector<RunSummary> summaries;
};

// Executes every (grid point, replicate) pair once, seeding each run with
// derive_seed(master_seed, grid_index, replicate_index); results are
// identical for any worker count.
std::vector<GridPointResult> run_batch(const SweepSpec& spec, unsigned parallelism);

AggregateStats aggregate(const std::vector<RunSummary>& summaries);

struct OutbreakMap {
    std::vector<double> thresholds;  // pathogenic threshold axis (rows)
    std::vector<double> contacts;    // average contact axis (columns)
    std::vector<std::vector<double>> fraction;  // fraction[t][c]
};

OutbreakMap outbreak_map(const std::vector<double>& thresholds,
                         const std::vector<double>& contacts, const json& base,
                         std::uint32_t replicates, std::uint64_t master_seed,
                         unsigned parallelism);

struct SizeInvarianceRow {
    std::uint32_t population = 0;
    AggregateStats stats;
    std::vector<RunSummary> summaries;
};

struct SizeInvarianceReport {
    std::vector<SizeInvarianceRow> rows;
    double max_pairwise_infection_diff = 0.0;
    double max_pairwise_death_diff = 0.0;
};

SizeInvarianceReport size_invariance_report(const std::vector<std::uint32_t>& sizes,
                                            const json& base,
                                            std::uint32_t replicates,
                                            std::uint64_t master_seed,
                                            unsigned parallelism);

}  // namespace contagion
