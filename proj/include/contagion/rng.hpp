#pragma once
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace contagion {

// splitmix64 finalizer; used both to condition raw seeds and to derive
// per-(grid,replicate) streams so any cell is reproducible in isolation.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t grid_index,
                                 std::uint64_t replicate_index) {
    return mix64(mix64(mix64(master) ^ grid_index) ^ replicate_index);
}

// mt19937_64 with hand-rolled distributions: the standard library's
// normal/uniform_int algorithms are implementation-defined, and seeded
// determinism is part of the contract.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(mix64(seed)) {}

    std::uint64_t bits() { return gen_(); }

    // [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // (0, 1]
    double uniform_pos() { return 1.0 - uniform(); }

    // [0, n)
    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

    // Box-Muller, no caching: each call consumes exactly two words.
    double normal(double mean, double sd) {
        if (sd <= 0.0) return mean;
        double u1 = uniform_pos();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sd * r * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    bool bernoulli(double p) { return uniform() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct values from [0, n), selection order randomized.
    std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t k) {
        std::vector<std::uint32_t> pool(n);
        for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
        std::vector<std::uint32_t> out;
        out.reserve(k);
        for (std::uint32_t i = 0; i < k && i < n; ++i) {
            std::size_t j = i + static_cast<std::size_t>(below(n - i));
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace contagion
