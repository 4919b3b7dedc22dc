#pragma once
#include "contagion/matrix.hpp"
#include "contagion/rng.hpp"
#include "contagion/types.hpp"

namespace contagion {

// Strictly positive coefficient draw (resample non-positive values).
double draw_weight(Rng& rng, double mean, double sd);

// Target degree: normal draw, rounded per mode, resampled until >= 0,
// clamped to [0, nmax].
std::uint32_t draw_degree(Rng& rng, double mean, double sd, DegreeRounding mode,
                          std::uint32_t nmax);

ContactMatrix generate_contact_matrix(const NetworkSpec& spec,
                                      const DiseaseProfile& disease, Rng& rng);

ContactMatrix generate_community_matrix(const NetworkSpec& spec,
                                        const DiseaseProfile& disease, Rng& rng);

// Dispatches on spec.community.
ContactMatrix generate_matrix(const NetworkSpec& spec,
                              const DiseaseProfile& disease, Rng& rng);

}  // namespace contagion
