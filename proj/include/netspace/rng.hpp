#ifndef NETSPACE_RNG_HPP
#define NETSPACE_RNG_HPP

#include <cstdint>
#include <random>

namespace netspace {

// Seeded RNG wrapper. Doubles are built from raw mt19937_64 output instead of
// std::uniform_real_distribution, whose exact stream is implementation-defined;
// run outputs are promised to be byte-identical for a fixed seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform on [0, 1) with 53-bit resolution.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Uniform integer in [lo, hi] inclusive (rejection-free modulo bias is
    // irrelevant at lab scale, but use Lemire-style rejection anyway).
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x = gen_();
        while (x >= limit) x = gen_();
        return lo + static_cast<int>(x % span);
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

// Stable mix for deriving per-subtask seeds (e.g. per sample count N) from a
// run seed without correlating the streams. SplitMix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace netspace

#endif  // NETSPACE_RNG_HPP
