#pragma once
#include <cstdint>
#include <vector>

#include "contagion/generator.hpp"
#include "contagion/interventions.hpp"
#include "contagion/ledger.hpp"
#include "contagion/matrix.hpp"
#include "contagion/quarantine.hpp"
#include "contagion/rng.hpp"
#include "contagion/types.hpp"

namespace contagion {

struct RoundRecord {
    std::uint32_t round = 0;
    std::uint32_t susceptible = 0;
    std::uint32_t infected = 0;
    std::uint32_t recovered = 0;
    std::uint32_t dead = 0;
    std::uint32_t quarantined = 0;
    std::uint32_t cumulative_unique_infected = 0;
    double max_exposure = 0.0;   // over the living; dead exposures stay frozen
    double total_exposure = 0.0;
};

struct RunSummary {
    double infection_rate = 0.0;
    double death_rate = 0.0;
    std::uint32_t rounds_elapsed = 0;
    bool outbreak = false;
    std::uint32_t peak_infected = 0;
    std::uint64_t seed = 0;
};

struct RunResult {
    std::vector<RoundRecord> records;
    RunSummary summary;
};

bool is_outbreak(const RunSummary& s);

// One simulation run: generation, one-time interventions, patient zeros, and
// the fixed per-round pipeline (propagate, classify, remove dead, diagnose,
// detect, trace, quarantine, release, record).
class Simulation {
public:
    explicit Simulation(const SimulationConfig& cfg);

    bool extinct() const;     // no infected and residual exposure below epsilon
    bool terminated() const;  // extinct or out of rounds

    RoundRecord step_round();  // StateError when called after termination

    std::uint32_t round() const { return round_; }
    const ContactMatrix& matrix() const { return matrix_; }
    const HealthLedger& ledger() const { return ledger_; }
    const QuarantineRegistry& registry() const { return registry_; }
    const std::vector<double>& exposures() const { return x_; }
    const std::vector<RoundRecord>& records() const { return records_; }
    std::uint32_t peak_infected() const { return peak_infected_; }

    RunResult finish();  // steps to termination, then summarizes

private:
    RoundRecord make_record() const;

    SimulationConfig cfg_;
    Rng rng_;
    ContactMatrix matrix_;
    HealthLedger ledger_;
    QuarantineRegistry registry_;
    std::vector<double> x_;
    std::vector<double> scratch_;
    std::vector<RoundRecord> records_;
    std::uint32_t round_ = 0;
    std::uint32_t peak_infected_ = 0;
};

RunResult run(const SimulationConfig& cfg);

}  // namespace contagion
