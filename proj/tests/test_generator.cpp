#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "contagion/engine.hpp"
#include "contagion/generator.hpp"
#include "contagion/matrix.hpp"
#include "contagion/rng.hpp"
#include "contagion/types.hpp"

using namespace contagion;

namespace {

// Sampling oracle, deliberately built on the standard library's normal
// distribution rather than the engine's own draw path.
double truncated_degree_mean(double mean, double sd, DegreeRounding mode,
                             std::uint32_t nmax, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(mean, sd);
    double acc = 0.0;
    const int draws = 1'000'000;
    for (int k = 0; k < draws; ++k) {
        double d;
        do {
            double v = dist(gen);
            d = mode == DegreeRounding::Floor ? std::floor(v) : std::floor(v + 0.5);
        } while (d < 0.0);
        acc += std::min(d, static_cast<double>(nmax));
    }
    return acc / draws;
}

double positive_weight_mean(double mean, double sd, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(mean, sd);
    double acc = 0.0;
    const int draws = 1'000'000;
    for (int k = 0; k < draws; ++k) {
        double w;
        do {
            w = dist(gen);
        } while (w <= 0.0);
        acc += w;
    }
    return acc / draws;
}

double mean_degree(const ContactMatrix& m) {
    return 2.0 * static_cast<double>(m.edge_count()) / m.order();
}

std::size_t cross_block_edges(const ContactMatrix& m, std::uint32_t block) {
    std::size_t count = 0;
    for (std::uint32_t i = 0; i < m.order(); ++i)
        for (const auto& e : m.row(i))
            if (e.col > i && e.col / block != i / block) ++count;
    return count;
}

}  // namespace

TEST_CASE("single individual yields a diagonal-only matrix") {
    NetworkSpec net;
    net.population = 1;
    net.contact_count_mean = 0.0;
    Rng rng(1);
    ContactMatrix m = generate_matrix(net, DiseaseProfile{0.7, 6.0, 0.9}, rng);
    CHECK(m.order() == 1);
    CHECK(m.diagonal(0) == 0.9);
    CHECK(m.edge_count() == 0);
}

TEST_CASE("mean degree tracks the truncated normal target under nearest rounding") {
    NetworkSpec net;
    net.population = 1000;
    net.contact_count_mean = 4.0;
    net.degree_rounding = DegreeRounding::Nearest;
    REQUIRE(net.contact_sd() == 2.0);

    Rng rng(7);
    ContactMatrix m = generate_matrix(net, DiseaseProfile{}, rng);
    const double realized = mean_degree(m);
    const double oracle =
        truncated_degree_mean(4.0, 2.0, DegreeRounding::Nearest, 999, 123);

    CHECK(std::fabs(oracle - 4.0) <= 0.3);
    CHECK(std::fabs(realized - 4.0) <= 0.3);
    CHECK(std::fabs(realized - oracle) <= 0.3);
}

TEST_CASE("mean degree tracks its own oracle under floor rounding") {
    NetworkSpec net;
    net.population = 1000;
    net.contact_count_mean = 4.0;
    net.degree_rounding = DegreeRounding::Floor;

    Rng rng(11);
    ContactMatrix m = generate_matrix(net, DiseaseProfile{}, rng);
    const double realized = mean_degree(m);
    const double oracle =
        truncated_degree_mean(4.0, 2.0, DegreeRounding::Floor, 999, 321);
    CHECK(std::fabs(realized - oracle) <= 0.3);
}

TEST_CASE("coefficient mean tracks the rejection-adjusted target") {
    NetworkSpec net;
    net.population = 1000;
    net.contact_count_mean = 4.0;
    REQUIRE(net.coeff_sd() == doctest::Approx(0.065));

    Rng rng(13);
    ContactMatrix m = generate_matrix(net, DiseaseProfile{}, rng);
    double acc = 0.0;
    std::size_t count = 0;
    for (std::uint32_t i = 0; i < m.order(); ++i)
        for (const auto& e : m.row(i))
            if (e.col > i) {
                acc += e.w;
                ++count;
            }
    REQUIRE(count > 1000);
    const double realized = acc / static_cast<double>(count);
    const double oracle = positive_weight_mean(0.13, 0.065, 456);
    CHECK(std::fabs(realized - oracle) <= 0.10 * oracle);
}

TEST_CASE("variance-mode spreads are square-rooted") {
    NetworkSpec net;
    net.population = 100;
    net.contact_count_mean = 4.0;
    net.contact_count_spread = 4.0;
    net.exposure_coeff_mean = 0.4;
    net.exposure_coeff_spread = 0.2;
    net.spread_is_variance = true;
    CHECK(net.contact_sd() == 2.0);
    CHECK(net.coeff_sd() == doctest::Approx(std::sqrt(0.2)));

    Rng rng(17);
    ContactMatrix m = generate_matrix(net, DiseaseProfile{0.7, 6.0, 0.9}, rng);
    CHECK(m.symmetric());
    CHECK(m.non_negative());
    for (std::uint32_t i = 0; i < m.order(); ++i) CHECK(m.diagonal(i) == 0.9);
    CHECK(std::fabs(mean_degree(m) - 4.0) <= 1.0);
}

TEST_CASE("generated matrices are symmetric with the recover diagonal") {
    NetworkSpec net;
    const DiseaseProfile dis{0.7, 6.0, 0.5};
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        Rng rng(seed);
        ContactMatrix m = generate_matrix(net, dis, rng);
        CHECK(m.symmetric());
        CHECK(m.non_negative());
        for (std::uint32_t i = 0; i < m.order(); ++i) CHECK(m.diagonal(i) == 0.5);
    }
}

TEST_CASE("community matrices carry the exact cross-link budget") {
    NetworkSpec net;
    net.population = 200;
    net.community = CommunitySpec{100, 5};
    Rng rng(19);
    ContactMatrix m = generate_matrix(net, DiseaseProfile{}, rng);
    CHECK(cross_block_edges(m, 100) == 5);
    CHECK(m.symmetric());

    NetworkSpec big = net;
    big.population = 2000;
    big.community = CommunitySpec{100, 1};
    Rng rng2(23);
    ContactMatrix m2 = generate_matrix(big, DiseaseProfile{}, rng2);
    // 20 communities, one link per unordered pair.
    CHECK(cross_block_edges(m2, 100) == 190);

    std::vector<std::vector<std::size_t>> per_pair(20, std::vector<std::size_t>(20, 0));
    for (std::uint32_t i = 0; i < 2000; ++i)
        for (const auto& e : m2.row(i))
            if (e.col > i && e.col / 100 != i / 100) ++per_pair[i / 100][e.col / 100];
    for (std::uint32_t a = 0; a < 20; ++a)
        for (std::uint32_t b = a + 1; b < 20; ++b) REQUIRE(per_pair[a][b] == 1);
}

TEST_CASE("zero cross links make communities unreachable") {
    NetworkSpec net;
    net.population = 200;
    net.community = CommunitySpec{100, 0};
    Rng rng(29);
    ContactMatrix m = generate_matrix(net, DiseaseProfile{}, rng);
    CHECK(cross_block_edges(m, 100) == 0);

    SimulationConfig cfg;
    cfg.network = net;
    cfg.max_rounds = 200;
    cfg.master_seed = 31;
    Simulation sim(cfg);
    sim.finish();

    bool low = false, high = false;
    for (std::uint32_t i = 0; i < 200; ++i)
        if (sim.ledger().ever_infected(i)) (i < 100 ? low : high) = true;
    CHECK(low != high);
}

TEST_CASE("seeded generation is bit-identical") {
    NetworkSpec net;
    net.population = 300;
    Rng a(101), b(101), c(102);
    ContactMatrix ma = generate_matrix(net, DiseaseProfile{}, a);
    ContactMatrix mb = generate_matrix(net, DiseaseProfile{}, b);
    ContactMatrix mc = generate_matrix(net, DiseaseProfile{}, c);
    CHECK(ma == mb);
    CHECK_FALSE(ma == mc);
}

TEST_CASE("degree draws round, reject, and clamp") {
    Rng rng(37);
    CHECK(draw_degree(rng, 3.7, 0.0, DegreeRounding::Floor, 99) == 3);
    CHECK(draw_degree(rng, 3.7, 0.0, DegreeRounding::Nearest, 99) == 4);
    CHECK(draw_degree(rng, 5000.0, 0.0, DegreeRounding::Floor, 99) == 99);
    for (int k = 0; k < 1000; ++k) {
        const std::uint32_t d = draw_degree(rng, 1.0, 3.0, DegreeRounding::Floor, 10);
        REQUIRE(d <= 10);
    }
}

TEST_CASE("weight draws are strictly positive") {
    Rng rng(41);
    CHECK(draw_weight(rng, 0.13, 0.0) == 0.13);
    for (int k = 0; k < 10000; ++k) REQUIRE(draw_weight(rng, 0.01, 1.0) > 0.0);
}

TEST_CASE("generator validates its inputs") {
    Rng rng(43);
    NetworkSpec bad;
    bad.population = 100;
    bad.contact_count_mean = 200.0;
    CHECK_THROWS_AS(generate_matrix(bad, DiseaseProfile{}, rng), ConfigError);

    NetworkSpec indivisible;
    indivisible.population = 250;
    indivisible.community = CommunitySpec{100, 1};
    CHECK_THROWS_AS(generate_matrix(indivisible, DiseaseProfile{}, rng), ConfigError);

    NetworkSpec toomany;
    toomany.population = 200;
    toomany.community = CommunitySpec{100, 100 * 100 + 1};
    CHECK_THROWS_AS(generate_matrix(toomany, DiseaseProfile{}, rng), ConfigError);
}
