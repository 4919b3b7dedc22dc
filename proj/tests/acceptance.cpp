// Acceptance gate: one self-contained check per release criterion, each
// printing a single [PASS]/[FAIL] line. Run with no arguments for the full
// gate or with a criterion number (1-8) for a single check.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "contagion/batch.hpp"
#include "contagion/config_io.hpp"
#include "contagion/engine.hpp"
#include "contagion/generator.hpp"
#include "contagion/interventions.hpp"
#include "contagion/io.hpp"
#include "contagion/quarantine.hpp"
#include "contagion/rng.hpp"

using namespace contagion;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 4242;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += "FAILED " + what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> death_counts(const std::vector<RunSummary>& summaries,
                                 std::uint32_t population) {
    std::vector<double> out;
    for (const auto& s : summaries)
        out.push_back(std::floor(s.death_rate * population + 0.5));
    return out;
}

std::vector<double> infected_counts(const std::vector<RunSummary>& summaries,
                                    std::uint32_t population) {
    std::vector<double> out;
    for (const auto& s : summaries)
        out.push_back(std::floor(s.infection_rate * population + 0.5));
    return out;
}

std::size_t with_deaths(const std::vector<RunSummary>& summaries) {
    std::size_t n = 0;
    for (const auto& s : summaries) n += s.death_rate > 0.0 ? 1 : 0;
    return n;
}

SweepSpec make_sweep(json base, const std::string& path, std::vector<json> values,
                     std::uint32_t replicates) {
    json axes = json::array();
    json axis;
    axis["path"] = path;
    axis["values"] = values;
    axes.push_back(axis);
    json doc;
    doc["base"] = std::move(base);
    doc["axes"] = axes;
    doc["replicates"] = replicates;
    doc["master_seed"] = kSeed;
    return parse_sweep_spec(doc);
}

// --- criterion 1: flat-network size invariance ---------------------------

Outcome criterion1() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    SizeInvarianceReport rep = size_invariance_report(
        {100, 500, 1000, 2000}, json{{"preset", "moderate"}}, 30, kSeed, 1);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::string infs, deaths;
    for (const auto& row : rep.rows) {
        infs += (infs.empty() ? "" : "/") + fmt(row.stats.mean_infection_rate);
        deaths += (deaths.empty() ? "" : "/") + fmt(row.stats.mean_death_rate);
        o.require(std::fabs(row.stats.mean_infection_rate - 0.90) <= 0.05,
                  "mean infection within 0.90±0.05 at N=" +
                      std::to_string(row.population));
        o.require(std::fabs(row.stats.mean_death_rate - 0.25) <= 0.05,
                  "mean death within 0.25±0.05 at N=" + std::to_string(row.population));
    }
    o.require(rep.max_pairwise_infection_diff <= 0.05,
              "max pairwise infection diff <= 0.05");
    o.require(rep.max_pairwise_death_diff <= 0.05, "max pairwise death diff <= 0.05");
    o.require(secs < 120.0, "runtime under 2 minutes");
    o.note("inf " + infs + ", death " + deaths + ", pairwise diff " +
           fmt(rep.max_pairwise_infection_diff) + "/" +
           fmt(rep.max_pairwise_death_diff) + ", " + fmt(secs) + "s");
    return o;
}

// --- criterion 2: community-network rates and the links contrast ---------

Outcome criterion2() {
    Outcome o;
    SizeInvarianceReport rep = size_invariance_report(
        {100, 500, 1000, 2000}, json{{"preset", "community"}}, 30, kSeed, 1);
    std::string infs, deaths;
    for (const auto& row : rep.rows) {
        infs += (infs.empty() ? "" : "/") + fmt(row.stats.mean_infection_rate);
        deaths += (deaths.empty() ? "" : "/") + fmt(row.stats.mean_death_rate);
        o.require(std::fabs(row.stats.mean_infection_rate - 0.665) <= 0.07,
                  "mean infection within 0.665±0.07 at N=" +
                      std::to_string(row.population));
        o.require(std::fabs(row.stats.mean_death_rate - 0.29) <= 0.07,
                  "mean death within 0.29±0.07 at N=" + std::to_string(row.population));
    }

    SweepSpec links = make_sweep(json{{"preset", "community"}},
                                 "network.community.inter_community_links",
                                 {json(1), json(10)}, 30);
    auto res = run_batch(links, 1);
    const double inf1 = aggregate(res[0].summaries).mean_infection_rate;
    const double inf10 = aggregate(res[1].summaries).mean_infection_rate;
    o.require(inf10 > inf1, "mean infection at 10 links exceeds 1 link");
    o.note("inf " + infs + ", death " + deaths + ", links 1 vs 10: " + fmt(inf1) +
           " vs " + fmt(inf10));
    return o;
}

// --- criterion 3: quarantine flattens every disease ----------------------

Outcome criterion3() {
    Outcome o;
    for (const std::string disease : {"malignant", "moderate", "general"}) {
        json base;
        base["preset"] = disease;
        base["policy"] = json{{"passive_diagnosis", {{"probability", 0.3}}}};
        SweepSpec spec = make_sweep(base, "policy.passive_diagnosis.probability",
                                    {json(0.0), json(0.3)}, 30);
        auto res = run_batch(spec, 1);
        const double died_without = median(death_counts(res[0].summaries, 100));
        const double died_with = median(death_counts(res[1].summaries, 100));
        const double inf_without = median(infected_counts(res[0].summaries, 100));
        const double inf_with = median(infected_counts(res[1].summaries, 100));
        o.require(died_with == 0.0, disease + ": median deaths 0 with quarantine");
        o.require(died_without > 0.0, disease + ": median deaths > 0 without");
        o.require(inf_with < inf_without, disease + ": infections strictly lower");
        o.note(disease + " " + fmt(inf_without) + "/" + fmt(died_without) + " -> " +
               fmt(inf_with) + "/" + fmt(died_with));
    }
    return o;
}

// --- criterion 4: diagnosis probability sweep ----------------------------

Outcome criterion4() {
    Outcome o;
    SweepSpec spec = make_sweep(json{{"preset", "passive-quarantine"}},
                                "policy.passive_diagnosis.probability",
                                {json(0.1), json(0.3)}, 30);
    auto res = run_batch(spec, 1);
    const std::size_t deadly_low = with_deaths(res[0].summaries);
    const double med_high = median(death_counts(res[1].summaries, 100));
    o.require(deadly_low > res[0].summaries.size() / 2,
              "deaths in a majority of replicates at probability 0.1");
    o.require(med_high == 0.0, "median deaths 0 at probability 0.3");
    o.note("p=0.1 deaths in " + std::to_string(deadly_low) + "/30, p=0.3 median " +
           fmt(med_high));
    return o;
}

// --- criterion 5: asymptomatic stress under green code + detection -------

Outcome criterion5() {
    Outcome o;
    SweepSpec spec = make_sweep(json{{"preset", "green-code-overall"}},
                                "policy.asymptomatic_fraction",
                                {json(0.0), json(0.10)}, 30);
    auto res = run_batch(spec, 1);
    const double med_zero = median(death_counts(res[0].summaries, 100));
    const std::size_t deadly = with_deaths(res[1].summaries);
    o.require(med_zero == 0.0, "median deaths 0 at fraction 0");
    o.require(deadly > res[1].summaries.size() / 2,
              "deaths in a majority of replicates at fraction 0.10");
    o.note("asym 0: median " + fmt(med_zero) + ", asym 0.10: deaths in " +
           std::to_string(deadly) + "/30");
    return o;
}

// --- criterion 6: outbreak boundary map -----------------------------------

Outcome criterion6() {
    Outcome o;
    std::vector<double> thresholds;
    for (int k = 1; k <= 12; ++k) thresholds.push_back(k / 10.0);
    std::vector<double> contacts;
    for (int c = 0; c <= 10; ++c) contacts.push_back(c);

    OutbreakMap map =
        outbreak_map(thresholds, contacts, json{{"preset", "moderate"}}, 10, kSeed, 1);

    bool any_low = false, any_high = false, zero_col = true;
    for (std::size_t t = 0; t < map.thresholds.size(); ++t)
        for (std::size_t c = 0; c < map.contacts.size(); ++c) {
            const double f = map.fraction[t][c];
            any_low = any_low || f < 0.2;
            any_high = any_high || f > 0.8;
            if (map.contacts[c] == 0.0 && f != 0.0) zero_col = false;
        }
    o.require(any_low, "a cell with outbreak fraction < 0.2 exists");
    o.require(any_high, "a cell with outbreak fraction > 0.8 exists");
    o.require(zero_col, "the zero-contact column is identically 0");
    o.note(std::to_string(map.thresholds.size()) + "x" +
           std::to_string(map.contacts.size()) + " grid");
    return o;
}

// --- criterion 7: property suites -----------------------------------------

Outcome criterion7() {
    Outcome o;
    const DiseaseProfile dis{0.7, 6.0, 0.7};

    // symmetry and non-negativity through an operation chain
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        NetworkSpec net;
        Rng rng(seed);
        ContactMatrix m = generate_matrix(net, dis, rng);
        InterventionPolicy pol;
        pol.masks = Masks{0.9, false};
        pol.vaccination = Vaccination{0.5, 0.7};
        HealthLedger ledger(100);
        apply_masks(m, pol);
        o.require(m.symmetric() && m.non_negative(), "symmetry after masks");
        apply_vaccination(m, ledger, pol, rng);
        o.require(m.symmetric() && m.non_negative(), "symmetry after vaccination");
        QuarantineRegistry reg;
        std::vector<double> x(100, 1.0);
        ledger.classify(x, dis, 1);
        for (std::uint32_t i = 10; i < 15; ++i)
            reg.quarantine(m, ledger, i, QuarantineReason::Diagnosed, 1);
        o.require(m.symmetric() && m.non_negative(), "symmetry after quarantine");
        reg.release(m, ledger, 11);
        reg.release(m, ledger, 13);
        o.require(m.symmetric() && m.non_negative(), "symmetry after release");
        remove_dead(m, {20, 21});
        o.require(m.symmetric() && m.non_negative(), "symmetry after remove_dead");
    }

    // sup-norm contraction
    {
        Rng rng(5);
        ContactMatrix m(25);
        for (std::uint32_t i = 0; i < 25; ++i) m.set_diagonal(i, 0.3 + 0.3 * rng.uniform());
        for (std::uint32_t i = 0; i < 25; ++i)
            for (std::uint32_t j = i + 1; j < 25; ++j)
                if (rng.uniform() < 0.15) m.set(i, j, 0.05 * rng.uniform());
        double q = m.max_row_sum();
        if (q >= 1.0) {
            const double f = 0.9 / q;
            m.scale_off_diagonal(f);
            for (std::uint32_t i = 0; i < 25; ++i) m.set_diagonal(i, m.diagonal(i) * f);
            q = m.max_row_sum();
        }
        std::vector<double> x(25), y;
        for (double& v : x) v = rng.uniform();
        double mx = 0.0, my = 0.0;
        for (double v : x) mx = std::max(mx, v);
        m.multiply(x, y);
        for (double v : y) my = std::max(my, v);
        o.require(q < 1.0 && my <= q * mx * (1.0 + 1e-12), "sup-norm contraction");
    }

    // isolated decay
    {
        ContactMatrix m(1);
        m.set_diagonal(0, 0.9);
        std::vector<double> x{1.0}, y;
        for (int k = 0; k < 40; ++k) {
            m.multiply(x, y);
            x.swap(y);
        }
        const double want = std::pow(0.9, 40);
        o.require(std::fabs(x[0] - want) <= 1e-12 * want, "isolated decay r^k");
    }

    // absorbing death along a live trajectory
    {
        SimulationConfig cfg = parse_simulation_config(json{{"preset", "malignant"}});
        cfg.master_seed = 99;
        Simulation sim(cfg);
        std::set<std::uint32_t> dead;
        while (!sim.terminated()) {
            sim.step_round();
            std::set<std::uint32_t> now;
            for (std::uint32_t i = 0; i < 100; ++i)
                if (sim.ledger().dead(i)) now.insert(i);
            o.require(std::includes(now.begin(), now.end(), dead.begin(), dead.end()),
                      "dead set is absorbing");
            if (!o.pass) break;
            dead = std::move(now);
        }
    }

    // conservation on a full run
    {
        SimulationConfig cfg;
        cfg.master_seed = 7;
        RunResult res = run(cfg);
        for (const auto& r : res.records)
            o.require(r.susceptible + r.infected + r.recovered + r.dead == 100,
                      "conservation S+I+R+D=N");
    }

    // quarantine round-trip identity
    {
        NetworkSpec net;
        Rng rng(11);
        ContactMatrix m = generate_matrix(net, dis, rng);
        const ContactMatrix before = m;
        HealthLedger ledger(100);
        std::vector<double> x(100, 1.0);
        ledger.classify(x, dis, 1);
        QuarantineRegistry reg;
        reg.quarantine(m, ledger, 42, QuarantineReason::Traced, 1);
        reg.release(m, ledger, 42);
        o.require(m == before, "quarantine/release round-trip identity");
    }

    // bit-exact determinism
    {
        SimulationConfig cfg;
        cfg.master_seed = 13;
        RunResult a = run(cfg);
        RunResult b = run(cfg);
        bool same = a.records.size() == b.records.size();
        for (std::size_t k = 0; same && k < a.records.size(); ++k)
            same = a.records[k].round == b.records[k].round &&
                   a.records[k].infected == b.records[k].infected &&
                   a.records[k].max_exposure == b.records[k].max_exposure &&
                   a.records[k].total_exposure == b.records[k].total_exposure;
        o.require(same, "seeded determinism bit-exact");
    }

    // parallelism invariance
    {
        json axes = json::array(
            {json{{"path", "network.contact_count_mean"}, {"values", {3.0, 5.0}}},
             json{{"path", "disease.recover_coefficient"}, {"values", {0.5, 0.7}}}});
        json doc;
        doc["base"] = json{{"preset", "moderate"}};
        doc["axes"] = axes;
        doc["replicates"] = 3;
        doc["master_seed"] = 17;
        SweepSpec spec = parse_sweep_spec(doc);
        o.require(to_json(run_batch(spec, 1)).dump() ==
                      to_json(run_batch(spec, 4)).dump(),
                  "parallelism invariance");
    }

    // dense-reference oracle
    {
        for (std::uint64_t seed : {19ull, 23ull}) {
            SimulationConfig cfg;
            cfg.network.population = 10;
            cfg.network.contact_count_mean = 3.0;
            cfg.network.exposure_coeff_mean = 0.4;
            cfg.max_rounds = 5;
            cfg.master_seed = seed;
            Simulation sim(cfg);

            const std::uint32_t n = 10;
            std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
            for (std::uint32_t i = 0; i < n; ++i)
                for (std::uint32_t j = 0; j < n; ++j) a[i][j] = sim.matrix().at(i, j);
            std::vector<double> x = sim.exposures();
            std::vector<int> state(n, 0);
            auto classify = [&] {
                for (std::uint32_t i = 0; i < n; ++i) {
                    if (state[i] == 3) continue;
                    if (x[i] >= cfg.disease.lethal_threshold) {
                        state[i] = 3;
                        for (std::uint32_t j = 0; j < n; ++j) a[i][j] = a[j][i] = 0.0;
                    } else if (x[i] >= cfg.disease.pathogenic_threshold) {
                        state[i] = 1;
                    } else if (state[i] == 1) {
                        state[i] = 2;
                    }
                }
            };
            classify();
            while (!sim.terminated()) {
                sim.step_round();
                std::vector<double> y(n, 0.0);
                for (std::uint32_t i = 0; i < n; ++i) {
                    if (state[i] == 3) {
                        y[i] = x[i];
                        continue;
                    }
                    for (std::uint32_t j = 0; j < n; ++j) y[i] += a[i][j] * x[j];
                }
                x.swap(y);
                classify();
                for (std::uint32_t i = 0; i < n; ++i)
                    o.require(std::fabs(sim.exposures()[i] - x[i]) <=
                                  1e-10 * std::max(1.0, std::fabs(x[i])),
                              "dense oracle equivalence");
                if (!o.pass) break;
            }
        }
    }

    if (o.pass) o.detail = "all property suites hold";
    return o;
}

// --- criterion 8: per-scenario plot data ----------------------------------

Outcome criterion8() {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "contagion-acceptance";
    std::size_t emitted = 0;
    for (const auto& [name, fragment] : presets()) {
        SimulationConfig cfg = parse_simulation_config(json{{"preset", name}});
        cfg.master_seed = kSeed;
        RunResult res = run(cfg);

        const fs::path sub = dir / name;
        fs::create_directories(sub);
        write_timeseries(res.records, (sub / "timeseries.csv").string());
        write_json(to_json(res.summary), (sub / "summary.json").string());

        std::ifstream csv(sub / "timeseries.csv", std::ios::binary);
        std::ostringstream ss;
        ss << csv.rdbuf();
        auto parsed = parse_timeseries_csv(ss.str());
        o.require(parsed.size() == res.records.size(),
                  name + ": emitted rows match the run");
        const std::uint32_t n = cfg.network.population;
        for (const auto& r : parsed)
            o.require(r.susceptible + r.infected + r.recovered + r.dead == n,
                      name + ": conservation in emitted rows");

        std::ifstream js(sub / "summary.json", std::ios::binary);
        std::ostringstream sj;
        sj << js.rdbuf();
        json summary = json::parse(sj.str());
        o.require(summary.contains("infection_rate") && summary.contains("death_rate"),
                  name + ": summary fields present");
        ++emitted;
        if (!o.pass) break;
    }
    o.require(emitted == presets().size(), "every scenario preset emitted");
    if (o.pass)
        o.detail = std::to_string(emitted) + " scenario datasets under " + dir.string();
    return o;
}

Outcome dispatch(int c) {
    switch (c) {
        case 1: return criterion1();
        case 2: return criterion2();
        case 3: return criterion3();
        case 4: return criterion4();
        case 5: return criterion5();
        case 6: return criterion6();
        case 7: return criterion7();
        case 8: return criterion8();
        default: {
            Outcome o;
            o.pass = false;
            o.detail = "unknown criterion";
            return o;
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    if (argc > 1) {
        which.push_back(std::atoi(argv[1]));
    } else {
        for (int c = 1; c <= 8; ++c) which.push_back(c);
    }

    int failures = 0;
    for (int c : which) {
        Outcome o;
        try {
            o = dispatch(c);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %d: %s\n", o.pass ? "PASS" : "FAIL", c,
                    o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
