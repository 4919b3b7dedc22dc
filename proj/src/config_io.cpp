#include "contagion/config_io.hpp"

#include <cmath>
#include <set>

namespace contagion {

namespace {

std::string join(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) fail(join(path, key), "unknown key");
}

double get_number(const json& obj, const std::string& path, const std::string& key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(join(path, key), "expected a number");
    return v.get<double>();
}

std::uint64_t get_uint(const json& obj, const std::string& path,
                       const std::string& key, std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<double>() < 0))
        fail(join(path, key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

bool get_bool(const json& obj, const std::string& path, const std::string& key,
              bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) fail(join(path, key), "expected a boolean");
    return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& path,
                       const std::string& key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) fail(join(path, key), "expected a string");
    return v.get<std::string>();
}

DiseaseProfile parse_disease(const json& j, const std::string& path) {
    expect_object(j, path);
    check_keys(j, path,
               {"pathogenic_threshold", "lethal_threshold", "recover_coefficient"});
    DiseaseProfile d;
    d.pathogenic_threshold =
        get_number(j, path, "pathogenic_threshold", d.pathogenic_threshold);
    d.lethal_threshold = get_number(j, path, "lethal_threshold", d.lethal_threshold);
    d.recover_coefficient =
        get_number(j, path, "recover_coefficient", d.recover_coefficient);
    return d;
}

NetworkSpec parse_network(const json& j, const std::string& path) {
    expect_object(j, path);
    check_keys(j, path,
               {"population", "contact_count_mean", "contact_count_spread",
                "exposure_coeff_mean", "exposure_coeff_spread", "spread_is_variance",
                "degree_rounding", "community"});
    NetworkSpec n;
    n.population = static_cast<std::uint32_t>(
        get_uint(j, path, "population", n.population));
    n.contact_count_mean =
        get_number(j, path, "contact_count_mean", n.contact_count_mean);
    n.contact_count_spread =
        get_number(j, path, "contact_count_spread", n.contact_count_spread);
    n.exposure_coeff_mean =
        get_number(j, path, "exposure_coeff_mean", n.exposure_coeff_mean);
    n.exposure_coeff_spread =
        get_number(j, path, "exposure_coeff_spread", n.exposure_coeff_spread);
    n.spread_is_variance =
        get_bool(j, path, "spread_is_variance", n.spread_is_variance);
    std::string rounding = get_string(j, path, "degree_rounding", "floor");
    if (rounding == "floor")
        n.degree_rounding = DegreeRounding::Floor;
    else if (rounding == "nearest")
        n.degree_rounding = DegreeRounding::Nearest;
    else
        fail(join(path, "degree_rounding"), "expected \"floor\" or \"nearest\"");
    if (j.contains("community")) {
        const json& c = j.at("community");
        const std::string cpath = join(path, "community");
        expect_object(c, cpath);
        check_keys(c, cpath, {"community_size", "inter_community_links"});
        CommunitySpec com;
        com.community_size = static_cast<std::uint32_t>(
            get_uint(c, cpath, "community_size", com.community_size));
        com.inter_community_links = static_cast<std::uint32_t>(
            get_uint(c, cpath, "inter_community_links", com.inter_community_links));
        n.community = com;
    }
    return n;
}

InterventionPolicy parse_policy(const json& j, const std::string& path) {
    expect_object(j, path);
    check_keys(j, path,
               {"passive_diagnosis", "overall_detection", "green_code",
                "trace_detected", "contact_quarantine_duration", "diagnosed_release",
                "vaccination", "masks", "asymptomatic_fraction"});
    InterventionPolicy p;
    if (j.contains("passive_diagnosis")) {
        const std::string sp = join(path, "passive_diagnosis");
        const json& s = j.at("passive_diagnosis");
        expect_object(s, sp);
        check_keys(s, sp, {"probability"});
        PassiveDiagnosis d;
        d.probability = get_number(s, sp, "probability", d.probability);
        p.passive_diagnosis = d;
    }
    if (j.contains("overall_detection")) {
        const std::string sp = join(path, "overall_detection");
        const json& s = j.at("overall_detection");
        expect_object(s, sp);
        check_keys(s, sp, {"period", "recall"});
        OverallDetection d;
        d.period = static_cast<std::uint32_t>(get_uint(s, sp, "period", d.period));
        d.recall = get_number(s, sp, "recall", d.recall);
        p.overall_detection = d;
    }
    p.green_code = get_bool(j, path, "green_code", p.green_code);
    p.trace_detected = get_bool(j, path, "trace_detected", p.trace_detected);
    p.contact_quarantine_duration = static_cast<std::uint32_t>(get_uint(
        j, path, "contact_quarantine_duration", p.contact_quarantine_duration));
    std::string rel = get_string(j, path, "diagnosed_release", "none");
    if (rel == "none")
        p.diagnosed_release = DiagnosedRelease::None;
    else if (rel == "on_recovery")
        p.diagnosed_release = DiagnosedRelease::OnRecovery;
    else
        fail(join(path, "diagnosed_release"), "expected \"none\" or \"on_recovery\"");
    if (j.contains("vaccination")) {
        const std::string sp = join(path, "vaccination");
        const json& s = j.at("vaccination");
        expect_object(s, sp);
        check_keys(s, sp, {"coverage", "recover_factor"});
        Vaccination v;
        v.coverage = get_number(s, sp, "coverage", v.coverage);
        v.recover_factor = get_number(s, sp, "recover_factor", v.recover_factor);
        p.vaccination = v;
    }
    if (j.contains("masks")) {
        const std::string sp = join(path, "masks");
        const json& s = j.at("masks");
        expect_object(s, sp);
        check_keys(s, sp, {"edge_factor", "per_endpoint"});
        Masks m;
        m.edge_factor = get_number(s, sp, "edge_factor", m.edge_factor);
        m.per_endpoint = get_bool(s, sp, "per_endpoint", m.per_endpoint);
        p.masks = m;
    }
    p.asymptomatic_fraction =
        get_number(j, path, "asymptomatic_fraction", p.asymptomatic_fraction);
    return p;
}

// User keys override preset keys; objects merge recursively.
json deep_merge(const json& base, const json& over) {
    if (!base.is_object() || !over.is_object()) return over;
    json out = base;
    for (const auto& [key, val] : over.items()) {
        if (out.contains(key) && out[key].is_object() && val.is_object())
            out[key] = deep_merge(out[key], val);
        else
            out[key] = val;
    }
    return out;
}

json expand_preset(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config: expected an object");
    if (!doc.contains("preset")) return doc;
    const json& p = doc.at("preset");
    if (!p.is_string()) throw ConfigError("preset: expected a string");
    auto it = presets().find(p.get<std::string>());
    if (it == presets().end())
        throw ConfigError("preset: unknown preset \"" + p.get<std::string>() + "\"");
    json over = doc;
    over.erase("preset");
    return deep_merge(it->second, over);
}

}  // namespace

void validate(const SimulationConfig& cfg) {
    const auto& d = cfg.disease;
    if (!(d.pathogenic_threshold > 0.0))
        throw ConfigError("disease.pathogenic_threshold: must be > 0");
    if (!(d.pathogenic_threshold < d.lethal_threshold))
        throw ConfigError("disease.lethal_threshold: must exceed pathogenic_threshold");
    if (d.recover_coefficient < 0.0 || d.recover_coefficient > 1.0)
        throw ConfigError("disease.recover_coefficient: must be in [0, 1]");

    const auto& n = cfg.network;
    if (n.population < 1) throw ConfigError("network.population: must be >= 1");
    if (n.contact_count_mean < 0.0)
        throw ConfigError("network.contact_count_mean: must be >= 0");
    if (n.contact_count_mean > static_cast<double>(n.population - 1))
        throw ConfigError("network.contact_count_mean: exceeds population - 1");
    if (n.exposure_coeff_mean < 0.0)
        throw ConfigError("network.exposure_coeff_mean: must be >= 0");
    if (n.community) {
        if (n.community->community_size < 1)
            throw ConfigError("network.community.community_size: must be >= 1");
        if (n.community->community_size > n.population)
            throw ConfigError("network.community.community_size: exceeds population");
        if (n.population % n.community->community_size != 0)
            throw ConfigError(
                "network.community.community_size: population not divisible");
        std::uint64_t cross = static_cast<std::uint64_t>(n.community->community_size) *
                              n.community->community_size;
        if (n.community->inter_community_links > cross)
            throw ConfigError(
                "network.community.inter_community_links: exceeds cross pairs");
    }

    const auto& p = cfg.policy;
    if (p.passive_diagnosis) {
        double pr = p.passive_diagnosis->probability;
        if (pr < 0.0 || pr > 1.0)
            throw ConfigError("policy.passive_diagnosis.probability: must be in [0, 1]");
    }
    if (p.overall_detection) {
        if (p.overall_detection->period < 1)
            throw ConfigError("policy.overall_detection.period: must be >= 1");
        double r = p.overall_detection->recall;
        if (r < 0.0 || r > 1.0)
            throw ConfigError("policy.overall_detection.recall: must be in [0, 1]");
    }
    if (p.contact_quarantine_duration < 1)
        throw ConfigError("policy.contact_quarantine_duration: must be >= 1");
    if (p.vaccination) {
        if (p.vaccination->coverage < 0.0 || p.vaccination->coverage > 1.0)
            throw ConfigError("policy.vaccination.coverage: must be in [0, 1]");
        if (p.vaccination->recover_factor <= 0.0 || p.vaccination->recover_factor > 1.0)
            throw ConfigError("policy.vaccination.recover_factor: must be in (0, 1]");
    }
    if (p.masks) {
        if (p.masks->edge_factor <= 0.0 || p.masks->edge_factor > 1.0)
            throw ConfigError("policy.masks.edge_factor: must be in (0, 1]");
    }
    if (p.asymptomatic_fraction < 0.0 || p.asymptomatic_fraction > 1.0)
        throw ConfigError("policy.asymptomatic_fraction: must be in [0, 1]");

    if (cfg.patient_zero_count < 1)
        throw ConfigError("patient_zero_count: must be >= 1");
    if (cfg.patient_zero_count > cfg.network.population)
        throw ConfigError("patient_zero_count: exceeds population");
    if (!(cfg.initial_exposure > 0.0))
        throw ConfigError("initial_exposure: must be > 0");
    if (cfg.max_rounds < 1) throw ConfigError("max_rounds: must be >= 1");
    if (cfg.extinction_epsilon < 0.0)
        throw ConfigError("extinction_epsilon: must be >= 0");
}

SimulationConfig parse_simulation_config(const json& doc) {
    json j = expand_preset(doc);
    check_keys(j, "",
               {"disease", "network", "policy", "patient_zero_count",
                "initial_exposure", "max_rounds", "extinction_epsilon",
                "patient_zero_connected", "master_seed"});
    SimulationConfig cfg;
    if (j.contains("disease")) cfg.disease = parse_disease(j.at("disease"), "disease");
    if (j.contains("network")) cfg.network = parse_network(j.at("network"), "network");
    if (j.contains("policy")) cfg.policy = parse_policy(j.at("policy"), "policy");
    cfg.patient_zero_count = static_cast<std::uint32_t>(
        get_uint(j, "", "patient_zero_count", cfg.patient_zero_count));
    cfg.initial_exposure = get_number(j, "", "initial_exposure", cfg.initial_exposure);
    cfg.max_rounds =
        static_cast<std::uint32_t>(get_uint(j, "", "max_rounds", cfg.max_rounds));
    cfg.extinction_epsilon =
        get_number(j, "", "extinction_epsilon", cfg.extinction_epsilon);
    cfg.patient_zero_connected =
        get_bool(j, "", "patient_zero_connected", cfg.patient_zero_connected);
    cfg.master_seed = get_uint(j, "", "master_seed", cfg.master_seed);
    validate(cfg);
    return cfg;
}

SimulationConfig parse_simulation_config_text(const std::string& text) {
    json doc;
    try {
        doc = text.empty() ? json::object() : json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    return parse_simulation_config(doc);
}

SweepSpec parse_sweep_spec(const json& doc) {
    if (!doc.is_object()) throw ConfigError("sweep: expected an object");
    check_keys(doc, "", {"base", "axes", "replicates", "master_seed"});
    SweepSpec spec;
    spec.base = doc.contains("base") ? expand_preset(doc.at("base")) : json::object();
    parse_simulation_config(spec.base);  // validates the base up front
    if (doc.contains("axes")) {
        const json& axes = doc.at("axes");
        if (!axes.is_array()) throw ConfigError("axes: expected an array");
        for (std::size_t k = 0; k < axes.size(); ++k) {
            const std::string apath = "axes[" + std::to_string(k) + "]";
            const json& a = axes[k];
            expect_object(a, apath);
            check_keys(a, apath, {"path", "values"});
            SweepAxis axis;
            axis.path = get_string(a, apath, "path", "");
            if (axis.path.empty()) fail(join(apath, "path"), "must be non-empty");
            if (!a.contains("values") || !a.at("values").is_array() ||
                a.at("values").empty())
                fail(join(apath, "values"), "expected a non-empty array");
            for (const json& v : a.at("values")) axis.values.push_back(v);
            spec.axes.push_back(std::move(axis));
        }
    }
    spec.replicates =
        static_cast<std::uint32_t>(get_uint(doc, "", "replicates", spec.replicates));
    if (spec.replicates < 1) throw ConfigError("replicates: must be >= 1");
    spec.master_seed = get_uint(doc, "", "master_seed", spec.master_seed);
    // Every grid point must produce a valid config; probe them all.
    for (std::size_t g = 0; g < spec.grid_size(); ++g) config_at_grid_point(spec, g);
    return spec;
}

SweepSpec parse_sweep_spec_text(const std::string& text) {
    json doc;
    try {
        doc = text.empty() ? json::object() : json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("sweep: malformed JSON: ") + e.what());
    }
    return parse_sweep_spec(doc);
}

json to_json(const SimulationConfig& cfg) {
    json j;
    j["disease"] = {{"pathogenic_threshold", cfg.disease.pathogenic_threshold},
                    {"lethal_threshold", cfg.disease.lethal_threshold},
                    {"recover_coefficient", cfg.disease.recover_coefficient}};
    json net;
    net["population"] = cfg.network.population;
    net["contact_count_mean"] = cfg.network.contact_count_mean;
    if (cfg.network.contact_count_spread >= 0.0)
        net["contact_count_spread"] = cfg.network.contact_count_spread;
    net["exposure_coeff_mean"] = cfg.network.exposure_coeff_mean;
    if (cfg.network.exposure_coeff_spread >= 0.0)
        net["exposure_coeff_spread"] = cfg.network.exposure_coeff_spread;
    net["spread_is_variance"] = cfg.network.spread_is_variance;
    net["degree_rounding"] =
        cfg.network.degree_rounding == DegreeRounding::Floor ? "floor" : "nearest";
    if (cfg.network.community)
        net["community"] = {
            {"community_size", cfg.network.community->community_size},
            {"inter_community_links", cfg.network.community->inter_community_links}};
    j["network"] = std::move(net);
    json pol;
    if (cfg.policy.passive_diagnosis)
        pol["passive_diagnosis"] = {
            {"probability", cfg.policy.passive_diagnosis->probability}};
    if (cfg.policy.overall_detection)
        pol["overall_detection"] = {{"period", cfg.policy.overall_detection->period},
                                    {"recall", cfg.policy.overall_detection->recall}};
    pol["green_code"] = cfg.policy.green_code;
    pol["trace_detected"] = cfg.policy.trace_detected;
    pol["contact_quarantine_duration"] = cfg.policy.contact_quarantine_duration;
    pol["diagnosed_release"] =
        cfg.policy.diagnosed_release == DiagnosedRelease::None ? "none" : "on_recovery";
    if (cfg.policy.vaccination)
        pol["vaccination"] = {{"coverage", cfg.policy.vaccination->coverage},
                              {"recover_factor", cfg.policy.vaccination->recover_factor}};
    if (cfg.policy.masks)
        pol["masks"] = {{"edge_factor", cfg.policy.masks->edge_factor},
                        {"per_endpoint", cfg.policy.masks->per_endpoint}};
    pol["asymptomatic_fraction"] = cfg.policy.asymptomatic_fraction;
    j["policy"] = std::move(pol);
    j["patient_zero_count"] = cfg.patient_zero_count;
    j["initial_exposure"] = cfg.initial_exposure;
    j["max_rounds"] = cfg.max_rounds;
    j["extinction_epsilon"] = cfg.extinction_epsilon;
    j["patient_zero_connected"] = cfg.patient_zero_connected;
    j["master_seed"] = cfg.master_seed;
    return j;
}

SimulationConfig config_at_grid_point(const SweepSpec& spec, std::size_t grid_index) {
    json doc = spec.base;
    std::size_t stride = spec.grid_size();
    for (const auto& axis : spec.axes) {
        stride /= axis.values.size();
        std::size_t idx = (grid_index / stride) % axis.values.size();
        json* node = &doc;
        std::string rest = axis.path;
        for (;;) {
            auto dot = rest.find('.');
            std::string head = rest.substr(0, dot);
            if (head.empty())
                throw ConfigError("axes.path: malformed path \"" + axis.path + "\"");
            if (dot == std::string::npos) {
                (*node)[head] = axis.values[idx];
                break;
            }
            if (!node->contains(head)) (*node)[head] = json::object();
            node = &(*node)[head];
            if (!node->is_object())
                throw ConfigError("axes.path: \"" + axis.path +
                                  "\" descends through a non-object");
            rest = rest.substr(dot + 1);
        }
    }
    try {
        return parse_simulation_config(doc);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("sweep grid point: ") + e.what());
    }
}

}  // namespace contagion
