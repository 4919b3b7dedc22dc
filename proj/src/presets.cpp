#include "contagion/config_io.hpp"

namespace contagion {

namespace {

json disease_block(double path, double leth, double rec) {
    return {{"pathogenic_threshold", path},
            {"lethal_threshold", leth},
            {"recover_coefficient", rec}};
}

json base_network() {
    return {{"population", 100},
            {"contact_count_mean", 4.0},
            {"exposure_coeff_mean", 0.13}};
}

std::map<std::string, json> build() {
    const json malignant = disease_block(0.4, 4.0, 0.9);
    const json moderate = disease_block(0.7, 6.0, 0.7);
    const json general = disease_block(0.9, 8.0, 0.5);
    const json diag = {{"probability", 0.3}};
    const json detect = {{"period", 5}, {"recall", 0.9}};

    std::map<std::string, json> p;
    p["malignant"] = {{"disease", malignant}, {"network", base_network()}};
    p["moderate"] = {{"disease", moderate}, {"network", base_network()}};
    p["general"] = {{"disease", general}, {"network", base_network()}};
    p["passive-quarantine"] = {{"disease", malignant},
                               {"network", base_network()},
                               {"policy", {{"passive_diagnosis", diag}}}};
    p["active-quarantine"] = {
        {"disease", malignant},
        {"network", base_network()},
        {"policy", {{"passive_diagnosis", diag}, {"overall_detection", detect}}}};
    p["green-code"] = {
        {"disease", malignant},
        {"network", base_network()},
        {"policy", {{"passive_diagnosis", diag}, {"green_code", true}}}};
    p["green-code-overall"] = {{"disease", malignant},
                               {"network", base_network()},
                               {"policy",
                                {{"passive_diagnosis", diag},
                                 {"overall_detection", detect},
                                 {"green_code", true}}}};
    p["asymptomatic"] = {{"disease", malignant},
                         {"network", base_network()},
                         {"policy",
                          {{"passive_diagnosis", diag},
                           {"overall_detection", detect},
                           {"green_code", true},
                           {"asymptomatic_fraction", 0.10}}}};
    p["vaccination"] = {
        {"disease", moderate},
        {"network", base_network()},
        {"policy",
         {{"vaccination", {{"coverage", 1.0}, {"recover_factor", 0.7}}}}}};
    p["masks-medical"] = {{"disease", moderate},
                          {"network", base_network()},
                          {"policy", {{"masks", {{"edge_factor", 0.9}}}}}};
    p["masks-general"] = {{"disease", moderate},
                          {"network", base_network()},
                          {"policy", {{"masks", {{"edge_factor", 0.95}}}}}};
    json community_net = base_network();
    community_net["population"] = 2000;
    community_net["community"] = {{"community_size", 100},
                                  {"inter_community_links", 1}};
    p["community"] = {{"disease", moderate}, {"network", community_net}};
    return p;
}

}  // namespace

const std::map<std::string, json>& presets() {
    static const std::map<std::string, json> table = build();
    return table;
}

}  // namespace contagion
