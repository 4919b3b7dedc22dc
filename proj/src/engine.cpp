#include "contagion/engine.hpp"

#include <algorithm>
#include <set>

namespace contagion {

bool is_outbreak(const RunSummary& s) { return s.infection_rate > 0.70; }

Simulation::Simulation(const SimulationConfig& cfg)
    : cfg_(cfg), rng_(cfg.master_seed) {
    validate(cfg_);
    matrix_ = generate_matrix(cfg_.network, cfg_.disease, rng_);
    const std::uint32_t n = matrix_.order();
    ledger_ = HealthLedger(n);

    apply_masks(matrix_, cfg_.policy);
    apply_vaccination(matrix_, ledger_, cfg_.policy, rng_);
    assign_asymptomatic(ledger_, cfg_.policy.asymptomatic_fraction, rng_);

    std::vector<std::uint32_t> connected;
    for (std::uint32_t i = 0; i < n; ++i)
        if (matrix_.degree(i) > 0) connected.push_back(i);
    std::vector<std::uint32_t> zeros;
    if (cfg_.patient_zero_connected && connected.size() >= cfg_.patient_zero_count) {
        for (std::uint32_t k :
             rng_.sample(static_cast<std::uint32_t>(connected.size()),
                         cfg_.patient_zero_count))
            zeros.push_back(connected[k]);
    } else {
        zeros = rng_.sample(n, cfg_.patient_zero_count);
    }

    x_.assign(n, 0.0);
    for (std::uint32_t i : zeros) x_[i] = cfg_.initial_exposure;

    auto newly_dead = ledger_.classify(x_, cfg_.disease, 0);
    remove_dead(matrix_, newly_dead);
    peak_infected_ = ledger_.count(Health::Infected);
}

bool Simulation::extinct() const {
    if (ledger_.count(Health::Infected) != 0) return false;
    double mx = 0.0;
    for (std::uint32_t i = 0; i < ledger_.population(); ++i)
        if (!ledger_.dead(i)) mx = std::max(mx, x_[i]);
    return mx < cfg_.extinction_epsilon;
}

bool Simulation::terminated() const {
    return round_ >= cfg_.max_rounds || extinct();
}

RoundRecord Simulation::step_round() {
    if (terminated()) throw StateError("step_round called after termination");

    matrix_.multiply(x_, scratch_);
    for (std::uint32_t i = 0; i < ledger_.population(); ++i)
        if (ledger_.dead(i)) scratch_[i] = x_[i];  // frozen at crossing value
    x_.swap(scratch_);
    ++round_;

    auto newly_dead = ledger_.classify(x_, cfg_.disease, round_);
    for (std::uint32_t i : newly_dead) registry_.drop(ledger_, i);
    remove_dead(matrix_, newly_dead);

    auto diagnosed = diagnose_passive(ledger_, cfg_.policy, rng_);
    auto detected = detect_overall(ledger_, round_, cfg_.policy, rng_, diagnosed);

    std::vector<std::uint32_t> traced;
    if (cfg_.policy.green_code && (!diagnosed.empty() || !detected.empty())) {
        std::set<std::uint32_t> found(diagnosed.begin(), diagnosed.end());
        found.insert(detected.begin(), detected.end());
        std::set<std::uint32_t> pick;
        auto trace_from = [&](const std::vector<std::uint32_t>& srcs) {
            for (std::uint32_t d : srcs)
                for (std::uint32_t j : trace_contacts(matrix_, d))
                    if (!ledger_.dead(j) && !ledger_.quarantined(j) && !found.count(j))
                        pick.insert(j);
        };
        trace_from(diagnosed);
        if (cfg_.policy.trace_detected) trace_from(detected);
        traced.assign(pick.begin(), pick.end());
    }

    for (std::uint32_t i : diagnosed)
        registry_.quarantine(matrix_, ledger_, i, QuarantineReason::Diagnosed, round_);
    for (std::uint32_t i : detected)
        registry_.quarantine(matrix_, ledger_, i, QuarantineReason::Diagnosed, round_);
    for (std::uint32_t i : traced)
        registry_.quarantine(matrix_, ledger_, i, QuarantineReason::Traced, round_);

    std::vector<std::uint32_t> to_release;
    for (const auto& [i, rec] : registry_.records()) {
        if (ledger_.state(i) == Health::Infected) registry_.note_infection(i);
        bool infected_while_in = rec.was_infected || ledger_.state(i) == Health::Infected;
        if (rec.reason == QuarantineReason::Diagnosed) {
            if (cfg_.policy.diagnosed_release == DiagnosedRelease::OnRecovery &&
                ledger_.state(i) == Health::Recovered)
                to_release.push_back(i);
        } else if (infected_while_in) {
            if (ledger_.state(i) == Health::Recovered) to_release.push_back(i);
        } else if (round_ - rec.since_round >= cfg_.policy.contact_quarantine_duration) {
            to_release.push_back(i);
        }
    }
    for (std::uint32_t i : to_release) registry_.release(matrix_, ledger_, i);

    RoundRecord rec = make_record();
    peak_infected_ = std::max(peak_infected_, rec.infected);
    ledger_.set_rounds_elapsed(round_);
    records_.push_back(rec);
    return rec;
}

RoundRecord Simulation::make_record() const {
    RoundRecord r;
    r.round = round_;
    r.susceptible = ledger_.count(Health::Susceptible);
    r.infected = ledger_.count(Health::Infected);
    r.recovered = ledger_.count(Health::Recovered);
    r.dead = ledger_.count(Health::Dead);
    r.quarantined = static_cast<std::uint32_t>(registry_.size());
    r.cumulative_unique_infected = ledger_.cumulative_unique_infected();
    for (std::uint32_t i = 0; i < ledger_.population(); ++i) {
        if (ledger_.dead(i)) continue;
        r.max_exposure = std::max(r.max_exposure, x_[i]);
        r.total_exposure += x_[i];
    }
    return r;
}

RunResult Simulation::finish() {
    while (!terminated()) step_round();
    const double n = static_cast<double>(ledger_.population());
    RunResult out;
    out.summary.infection_rate = ledger_.cumulative_unique_infected() / n;
    out.summary.death_rate = ledger_.count(Health::Dead) / n;
    out.summary.rounds_elapsed = round_;
    out.summary.outbreak = is_outbreak(out.summary);
    out.summary.peak_infected = peak_infected_;
    out.summary.seed = cfg_.master_seed;
    out.records = std::move(records_);
    return out;
}

RunResult run(const SimulationConfig& cfg) { return Simulation(cfg).finish(); }

}  // namespace contagion
