#include "contagion/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace contagion {

double draw_weight(Rng& rng, double mean, double sd) {
    if (sd <= 0.0) return mean;
    for (;;) {
        double w = rng.normal(mean, sd);
        if (w > 0.0) return w;
    }
}

std::uint32_t draw_degree(Rng& rng, double mean, double sd, DegreeRounding mode,
                          std::uint32_t nmax) {
    auto round_draw = [&](double v) {
        return mode == DegreeRounding::Floor ? std::floor(v) : std::floor(v + 0.5);
    };
    if (sd <= 0.0) {
        double d = round_draw(mean);
        if (d < 0.0) d = 0.0;
        return std::min<std::uint32_t>(static_cast<std::uint32_t>(d), nmax);
    }
    for (;;) {
        double d = round_draw(rng.normal(mean, sd));
        if (d >= 0.0) return std::min<std::uint32_t>(static_cast<std::uint32_t>(d), nmax);
    }
}

namespace {

// Configuration-model realization: stubs shuffled and paired; self-loops and
// duplicate edges discarded, so realized degrees track the targets only on
// average.
void stub_match(std::uint32_t n, const std::vector<std::uint32_t>& degs, Rng& rng,
                std::uint32_t base, const NetworkSpec& spec, ContactMatrix& m) {
    std::vector<std::uint32_t> stubs;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t k = 0; k < degs[i]; ++k) stubs.push_back(i);
    rng.shuffle(stubs);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
        std::uint32_t i = stubs[k], j = stubs[k + 1];
        if (i == j) continue;
        auto key = std::minmax(i, j);
        if (!seen.insert(key).second) continue;
        double w = draw_weight(rng, spec.exposure_coeff_mean, spec.coeff_sd());
        m.set(base + i, base + j, w);
    }
}

void validate_network(const NetworkSpec& spec) {
    if (spec.population < 1) throw ConfigError("network.population: must be >= 1");
    if (spec.contact_count_mean < 0.0)
        throw ConfigError("network.contact_count_mean: must be >= 0");
    if (spec.exposure_coeff_mean < 0.0)
        throw ConfigError("network.exposure_coeff_mean: must be >= 0");
    if (spec.contact_count_mean > static_cast<double>(spec.population - 1))
        throw ConfigError("network.contact_count_mean: exceeds population - 1");
}

}  // namespace

ContactMatrix generate_contact_matrix(const NetworkSpec& spec,
                                      const DiseaseProfile& disease, Rng& rng) {
    validate_network(spec);
    const std::uint32_t n = spec.population;
    ContactMatrix m(n);
    std::vector<std::uint32_t> degs(n);
    for (std::uint32_t i = 0; i < n; ++i)
        degs[i] = draw_degree(rng, spec.contact_count_mean, spec.contact_sd(),
                              spec.degree_rounding, n - 1);
    stub_match(n, degs, rng, 0, spec, m);
    for (std::uint32_t i = 0; i < n; ++i)
        m.set_diagonal(i, disease.recover_coefficient);
    return m;
}

ContactMatrix generate_community_matrix(const NetworkSpec& spec,
                                        const DiseaseProfile& disease, Rng& rng) {
    validate_network(spec);
    if (!spec.community) throw ConfigError("network.community: missing");
    const CommunitySpec& com = *spec.community;
    const std::uint32_t n = spec.population, size = com.community_size;
    if (size < 1) throw ConfigError("network.community.community_size: must be >= 1");
    if (size > n)
        throw ConfigError("network.community.community_size: exceeds population");
    if (n % size != 0)
        throw ConfigError("network.community.community_size: population not divisible");
    if (com.inter_community_links > static_cast<std::uint64_t>(size) * size)
        throw ConfigError(
            "network.community.inter_community_links: exceeds cross pairs");

    const std::uint32_t blocks = n / size;
    ContactMatrix m(n);
    for (std::uint32_t c = 0; c < blocks; ++c) {
        std::vector<std::uint32_t> degs(size);
        for (std::uint32_t i = 0; i < size; ++i)
            degs[i] = draw_degree(rng, spec.contact_count_mean, spec.contact_sd(),
                                  spec.degree_rounding, size - 1);
        stub_match(size, degs, rng, c * size, spec, m);
    }
    for (std::uint32_t a = 0; a < blocks; ++a) {
        for (std::uint32_t b = a + 1; b < blocks; ++b) {
            std::set<std::pair<std::uint32_t, std::uint32_t>> placed;
            while (placed.size() < com.inter_community_links) {
                std::uint32_t i = a * size + static_cast<std::uint32_t>(rng.below(size));
                std::uint32_t j = b * size + static_cast<std::uint32_t>(rng.below(size));
                if (!placed.insert({i, j}).second) continue;
                double w = draw_weight(rng, spec.exposure_coeff_mean, spec.coeff_sd());
                m.set(i, j, w);
            }
        }
    }
    for (std::uint32_t i = 0; i < n; ++i)
        m.set_diagonal(i, disease.recover_coefficient);
    return m;
}

ContactMatrix generate_matrix(const NetworkSpec& spec,
                              const DiseaseProfile& disease, Rng& rng) {
    return spec.community ? generate_community_matrix(spec, disease, rng)
                          : generate_contact_matrix(spec, disease, rng);
}

}  // namespace contagion
