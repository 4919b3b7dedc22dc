#include "contagion/batch.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace contagion {

std::vector<GridPointResult> run_batch(const SweepSpec& spec, unsigned parallelism) {
    const std::size_t grid = spec.grid_size();
    const std::uint32_t reps = spec.replicates;

    std::vector<GridPointResult> results(grid);
    std::vector<SimulationConfig> configs(grid);
    for (std::size_t g = 0; g < grid; ++g) {
        results[g].grid_index = g;
        results[g].summaries.resize(reps);
        configs[g] = config_at_grid_point(spec, g);
        json axes = json::object();
        std::size_t stride = grid;
        for (const auto& axis : spec.axes) {
            stride /= axis.values.size();
            axes[axis.path] = axis.values[(g / stride) % axis.values.size()];
        }
        results[g].axis_values = std::move(axes);
    }

    const std::size_t total = grid * reps;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t t = next.fetch_add(1);
            if (t >= total) return;
            const std::size_t g = t / reps;
            const std::uint32_t r = static_cast<std::uint32_t>(t % reps);
            SimulationConfig cfg = configs[g];
            cfg.master_seed = derive_seed(spec.master_seed, g, r);
            results[g].summaries[r] = run(cfg).summary;
        }
    };

    if (parallelism <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < parallelism; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return results;
}

AggregateStats aggregate(const std::vector<RunSummary>& summaries) {
    if (summaries.empty()) throw ConfigError("aggregate: empty summary list");
    const double n = static_cast<double>(summaries.size());
    AggregateStats a;
    for (const RunSummary& s : summaries) {
        a.mean_infection_rate += s.infection_rate;
        a.mean_death_rate += s.death_rate;
        a.outbreak_fraction += s.outbreak ? 1.0 : 0.0;
        a.mean_rounds += static_cast<double>(s.rounds_elapsed);
    }
    a.mean_infection_rate /= n;
    a.mean_death_rate /= n;
    a.outbreak_fraction /= n;
    a.mean_rounds /= n;
    if (summaries.size() > 1) {
        double vi = 0.0, vd = 0.0;
        for (const RunSummary& s : summaries) {
            vi += (s.infection_rate - a.mean_infection_rate) *
                  (s.infection_rate - a.mean_infection_rate);
            vd += (s.death_rate - a.mean_death_rate) *
                  (s.death_rate - a.mean_death_rate);
        }
        a.stddev_infection_rate = std::sqrt(vi / (n - 1.0));
        a.stddev_death_rate = std::sqrt(vd / (n - 1.0));
    }
    return a;
}

OutbreakMap outbreak_map(const std::vector<double>& thresholds,
                         const std::vector<double>& contacts, const json& base,
                         std::uint32_t replicates, std::uint64_t master_seed,
                         unsigned parallelism) {
    if (thresholds.empty()) throw ConfigError("outbreak_map: empty threshold axis");
    if (contacts.empty()) throw ConfigError("outbreak_map: empty contact axis");

    SweepSpec spec;
    spec.base = base;
    spec.replicates = replicates;
    spec.master_seed = master_seed;
    SweepAxis t_axis{"disease.pathogenic_threshold", {}};
    for (double t : thresholds) t_axis.values.push_back(t);
    SweepAxis c_axis{"network.contact_count_mean", {}};
    for (double c : contacts) c_axis.values.push_back(c);
    spec.axes = {std::move(t_axis), std::move(c_axis)};
    for (std::size_t g = 0; g < spec.grid_size(); ++g) config_at_grid_point(spec, g);

    auto results = run_batch(spec, parallelism);
    OutbreakMap map;
    map.thresholds = thresholds;
    map.contacts = contacts;
    map.fraction.assign(thresholds.size(),
                        std::vector<double>(contacts.size(), 0.0));
    for (std::size_t t = 0; t < thresholds.size(); ++t)
        for (std::size_t c = 0; c < contacts.size(); ++c)
            map.fraction[t][c] =
                aggregate(results[t * contacts.size() + c].summaries).outbreak_fraction;
    return map;
}

SizeInvarianceReport size_invariance_report(const std::vector<std::uint32_t>& sizes,
                                            const json& base,
                                            std::uint32_t replicates,
                                            std::uint64_t master_seed,
                                            unsigned parallelism) {
    if (sizes.empty()) throw ConfigError("size_invariance: empty size list");
    SweepSpec spec;
    spec.base = base;
    spec.replicates = replicates;
    spec.master_seed = master_seed;
    SweepAxis axis{"network.population", {}};
    for (std::uint32_t n : sizes) axis.values.push_back(n);
    spec.axes = {std::move(axis)};
    for (std::size_t g = 0; g < spec.grid_size(); ++g) config_at_grid_point(spec, g);

    auto results = run_batch(spec, parallelism);
    SizeInvarianceReport report;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        SizeInvarianceRow row;
        row.population = sizes[k];
        row.stats = aggregate(results[k].summaries);
        row.summaries = std::move(results[k].summaries);
        report.rows.push_back(std::move(row));
    }
    for (std::size_t a = 0; a < report.rows.size(); ++a) {
        for (std::size_t b = a + 1; b < report.rows.size(); ++b) {
            report.max_pairwise_infection_diff =
                std::max(report.max_pairwise_infection_diff,
                         std::fabs(report.rows[a].stats.mean_infection_rate -
                                   report.rows[b].stats.mean_infection_rate));
            report.max_pairwise_death_diff =
                std::max(report.max_pairwise_death_diff,
                         std::fabs(report.rows[a].stats.mean_death_rate -
                                   report.rows[b].stats.mean_death_rate));
        }
    }
    return report;
}

}  // namespace contagion
