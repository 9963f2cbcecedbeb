#include "portree/random.hpp"

#include <array>
#include <cmath>

namespace portree {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng make_stream(std::uint64_t master_seed, std::uint64_t stream) {
    std::uint64_t s = master_seed;
    const std::uint64_t a = splitmix64(s);
    std::uint64_t t = stream ^ 0x5851f42d4c957f2dULL;
    const std::uint64_t b = splitmix64(t);
    const std::array<std::uint32_t, 4> words{
        static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
        static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    // Lemire's multiply-and-reject
    u128 m = static_cast<u128>(rng()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = -bound % bound;
        while (low < threshold) {
            m = static_cast<u128>(rng()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double exponential(Rng& rng, double rate) { return -std::log1p(-uniform01(rng)) / rate; }

}  // namespace portree
