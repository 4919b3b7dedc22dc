#include "contagion/interventions.hpp"

#include <algorithm>
#include <cmath>

#include "contagion/quarantine.hpp"

namespace contagion {

std::vector<std::uint32_t> trace_contacts(const ContactMatrix& m, std::uint32_t i) {
    if (i >= m.order()) throw ConfigError("trace_contacts: index out of range");
    std::vector<std::uint32_t> out;
    for (const ContactMatrix::Entry& e : m.row(i))
        if (e.w > 0.0) out.push_back(e.col);
    return out;
}

std::vector<std::uint32_t> diagnose_passive(const HealthLedger& ledger,
                                            const InterventionPolicy& policy,
                                            Rng& rng) {
    std::vector<std::uint32_t> out;
    if (!policy.passive_diagnosis) return out;
    const double p = policy.passive_diagnosis->probability;
    for (std::uint32_t i = 0; i < ledger.population(); ++i) {
        if (ledger.state(i) != Health::Infected) continue;
        if (ledger.asymptomatic(i) || ledger.quarantined(i)) continue;
        if (rng.bernoulli(p)) out.push_back(i);
    }
    return out;
}

std::vector<std::uint32_t> detect_overall(const HealthLedger& ledger,
                                          std::uint32_t round,
                                          const InterventionPolicy& policy, Rng& rng,
                                          const std::vector<std::uint32_t>& exclude) {
    std::vector<std::uint32_t> out;
    if (!policy.overall_detection) return out;
    const auto& det = *policy.overall_detection;
    if (det.period == 0 || round % det.period != 0) return out;
    for (std::uint32_t i = 0; i < ledger.population(); ++i) {
        if (ledger.state(i) != Health::Infected) continue;
        if (ledger.asymptomatic(i) || ledger.quarantined(i)) continue;
        if (std::binary_search(exclude.begin(), exclude.end(), i)) continue;
        if (rng.bernoulli(det.recall)) out.push_back(i);
    }
    return out;
}

void apply_masks(ContactMatrix& m, const InterventionPolicy& policy) {
    if (!policy.masks) return;
    double f = policy.masks->edge_factor;
    if (policy.masks->per_endpoint) f *= f;
    m.scale_off_diagonal(f);
}

void apply_vaccination(ContactMatrix& m, HealthLedger& ledger,
                       const InterventionPolicy& policy, Rng& rng) {
    if (!policy.vaccination) return;
    const auto& vac = *policy.vaccination;
    const std::uint32_t n = ledger.population();
    const auto k = static_cast<std::uint32_t>(
        std::floor(vac.coverage * static_cast<double>(n) + 0.5));
    for (std::uint32_t i : rng.sample(n, k)) {
        ledger.set_vaccinated(i);
        m.set_diagonal(i, m.diagonal(i) * vac.recover_factor);
    }
}

void assign_asymptomatic(HealthLedger& ledger, double fraction, Rng& rng) {
    if (fraction <= 0.0) return;
    const std::uint32_t n = ledger.population();
    const auto k = static_cast<std::uint32_t>(
        std::floor(fraction * static_cast<double>(n) + 0.5));
    for (std::uint32_t i : rng.sample(n, k)) ledger.set_asymptomatic(i);
}

void remove_dead(ContactMatrix& m, const std::vector<std::uint32_t>& newly_dead) {
    for (std::uint32_t i : newly_dead) m.zero_row_col(i);
}

}  // namespace contagion
