#pragma once
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace contagion {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DiseaseProfile {
    double pathogenic_threshold = 0.7;
    double lethal_threshold = 6.0;
    double recover_coefficient = 0.7;
};

enum class DegreeRounding { Floor, Nearest };

struct CommunitySpec {
    std::uint32_t community_size = 100;
    std::uint32_t inter_community_links = 1;
};

struct NetworkSpec {
    std::uint32_t population = 100;
    double contact_count_mean = 4.0;
    // Negative spread means "unset": defaults to mean/2 under the SD reading.
    double contact_count_spread = -1.0;
    double exposure_coeff_mean = 0.13;
    double exposure_coeff_spread = -1.0;
    // The source text says "variance"; the default reads both spreads as SD.
    bool spread_is_variance = false;
    DegreeRounding degree_rounding = DegreeRounding::Floor;
    std::optional<CommunitySpec> community;

    double contact_sd() const {
        double s = contact_count_spread >= 0.0 ? contact_count_spread
                                               : contact_count_mean / 2.0;
        return spread_is_variance ? std::sqrt(s) : s;
    }
    double coeff_sd() const {
        double s = exposure_coeff_spread >= 0.0 ? exposure_coeff_spread
                                                : exposure_coeff_mean / 2.0;
        return spread_is_variance ? std::sqrt(s) : s;
    }
};

struct PassiveDiagnosis {
    double probability = 0.3;
};

struct OverallDetection {
    std::uint32_t period = 5;
    double recall = 0.9;
};

struct Vaccination {
    double coverage = 1.0;
    double recover_factor = 0.7;
};

struct Masks {
    double edge_factor = 0.9;
    bool per_endpoint = false;  // factor^2 per edge when both endpoints mask
};

enum class DiagnosedRelease { None, OnRecovery };

struct InterventionPolicy {
    std::optional<PassiveDiagnosis> passive_diagnosis;
    std::optional<OverallDetection> overall_detection;
    bool green_code = false;
    bool trace_detected = true;  // green code also traces contacts of the detected
    std::uint32_t contact_quarantine_duration = 14;
    DiagnosedRelease diagnosed_release = DiagnosedRelease::None;
    std::optional<Vaccination> vaccination;
    std::optional<Masks> masks;
    double asymptomatic_fraction = 0.0;

    bool any_quarantine() const {
        return passive_diagnosis.has_value() || overall_detection.has_value();
    }
};

struct SimulationConfig {
    DiseaseProfile disease;
    NetworkSpec network;
    InterventionPolicy policy;
    std::uint32_t patient_zero_count = 1;
    double initial_exposure = 1.0;
    std::uint32_t max_rounds = 1000;
    // Extinction scale for residual sub-pathogenic exposure. Exposure below
    // the pathogenic threshold still transmits, so this must sit well under
    // that threshold or runs terminate while the wave is still building.
    double extinction_epsilon = 1e-6;
    bool patient_zero_connected = true;
    std::uint64_t master_seed = 0;
};

void validate(const SimulationConfig& cfg);  // throws ConfigError with a field path

}  // namespace contagion
