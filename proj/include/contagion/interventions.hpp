#pragma once
#include <cstdint>
#include <vector>

#include "contagion/ledger.hpp"
#include "contagion/matrix.hpp"
#include "contagion/rng.hpp"
#include "contagion/types.hpp"

namespace contagion {

// Per-round interventions. Candidate scans run in ascending index order so
// the consumed random stream is reproducible.

// Each infected, symptomatic, non-quarantined individual independently with
// the configured probability.
std::vector<std::uint32_t> diagnose_passive(const HealthLedger& ledger,
                                            const InterventionPolicy& policy,
                                            Rng& rng);

// Whole-population testing on schedule rounds; same eligibility as passive
// diagnosis (asymptomatic carriers are invisible to testing too), with the
// already-diagnosed excluded by the caller via `exclude`.
std::vector<std::uint32_t> detect_overall(const HealthLedger& ledger,
                                          std::uint32_t round,
                                          const InterventionPolicy& policy, Rng& rng,
                                          const std::vector<std::uint32_t>& exclude);

// One-time initializers.
void apply_masks(ContactMatrix& m, const InterventionPolicy& policy);
void apply_vaccination(ContactMatrix& m, HealthLedger& ledger,
                       const InterventionPolicy& policy, Rng& rng);
void assign_asymptomatic(HealthLedger& ledger, double fraction, Rng& rng);

// Zeroes the full rows/columns of the newly dead.
void remove_dead(ContactMatrix& m, const std::vector<std::uint32_t>& newly_dead);

}  // namespace contagion
