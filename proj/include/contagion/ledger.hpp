#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "contagion/types.hpp"

namespace contagion {

enum class Health : std::uint8_t { Susceptible, Infected, Recovered, Dead };

// Per-individual health state plus the global counters derived from it.
class HealthLedger {
public:
    HealthLedger() = default;
    explicit HealthLedger(std::uint32_t n)
        : state_(n, Health::Susceptible),
          ever_infected_(n, 0),
          asymptomatic_(n, 0),
          vaccinated_(n, 0),
          quarantined_(n, 0),
          death_round_(n, -1) {}

    std::uint32_t population() const { return static_cast<std::uint32_t>(state_.size()); }

    Health state(std::uint32_t i) const { return state_[i]; }
    bool dead(std::uint32_t i) const { return state_[i] == Health::Dead; }
    bool ever_infected(std::uint32_t i) const { return ever_infected_[i] != 0; }
    bool asymptomatic(std::uint32_t i) const { return asymptomatic_[i] != 0; }
    bool vaccinated(std::uint32_t i) const { return vaccinated_[i] != 0; }
    bool quarantined(std::uint32_t i) const { return quarantined_[i] != 0; }
    std::int32_t death_round(std::uint32_t i) const { return death_round_[i]; }

    void set_asymptomatic(std::uint32_t i) { asymptomatic_[i] = 1; }
    void set_vaccinated(std::uint32_t i) { vaccinated_[i] = 1; }
    void set_quarantined(std::uint32_t i, bool q) { quarantined_[i] = q ? 1 : 0; }

    std::uint32_t cumulative_unique_infected() const { return cumulative_; }
    std::uint32_t rounds_elapsed() const { return rounds_; }
    void set_rounds_elapsed(std::uint32_t r) { rounds_ = r; }

    std::uint32_t count(Health h) const {
        std::uint32_t c = 0;
        for (Health s : state_) c += (s == h) ? 1u : 0u;
        return c;
    }

    std::uint32_t quarantined_count() const {
        std::uint32_t c = 0;
        for (std::uint8_t q : quarantined_) c += q;
        return c;
    }

    // Threshold classification of every living individual against the current
    // exposures. Lethal crossings are resolved first and are absorbing; an
    // individual whose first crossing is already lethal still counts toward
    // the cumulative infections. Returns the newly dead (matrix cleanup and
    // exposure freezing are the caller's).
    std::vector<std::uint32_t> classify(const std::vector<double>& x,
                                        const DiseaseProfile& disease,
                                        std::uint32_t round) {
        if (x.size() != state_.size())
            throw ConfigError("ledger/vector dimension mismatch");
        std::vector<std::uint32_t> newly_dead;
        for (std::uint32_t i = 0; i < population(); ++i) {
            if (state_[i] == Health::Dead) continue;
            if (x[i] >= disease.lethal_threshold) {
                state_[i] = Health::Dead;
                death_round_[i] = static_cast<std::int32_t>(round);
                mark_infected(i);
                newly_dead.push_back(i);
            } else if (x[i] >= disease.pathogenic_threshold) {
                state_[i] = Health::Infected;
                mark_infected(i);
            } else {
                state_[i] = ever_infected_[i] ? Health::Recovered : Health::Susceptible;
            }
        }
        return newly_dead;
    }

private:
    void mark_infected(std::uint32_t i) {
        if (!ever_infected_[i]) {
            ever_infected_[i] = 1;
            ++cumulative_;
        }
    }

    std::vector<Health> state_;
    std::vector<std::uint8_t> ever_infected_;
    std::vector<std::uint8_t> asymptomatic_;
    std::vector<std::uint8_t> vaccinated_;
    std::vector<std::uint8_t> quarantined_;
    std::vector<std::int32_t> death_round_;
    std::uint32_t cumulative_ = 0;
    std::uint32_t rounds_ = 0;
};

}  // namespace contagion
