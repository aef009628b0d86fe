#pragma once

#include <cstdint>

namespace uipt {

// Identifies one reproducible stream of randomness. Identical (seed, stream)
// pairs reproduce identical draws; distinct stream ids give independent
// sequences (PCG's stream selection via the increment).
struct RandomSource {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    RandomSource with_stream(std::uint64_t s) const { return {seed, s}; }
};

// PCG64 (XSL-RR 128/64). Self-contained so that draws are bit-identical
// across platforms and standard-library versions.
class Pcg64 {
  public:
    explicit Pcg64(RandomSource src) {
        const unsigned __int128 initstate =
            (static_cast<unsigned __int128>(splitmix(src.seed)) << 64) | splitmix(src.seed + 0x9e3779b97f4a7c15ULL);
        const unsigned __int128 initseq =
            (static_cast<unsigned __int128>(splitmix(src.stream)) << 64) | splitmix(src.stream + 0x9e3779b97f4a7c15ULL);
        inc_ = (initseq << 1) | 1u;
        state_ = 0;
        step();
        state_ += initstate;
        step();
    }

    std::uint64_t next() {
        step();
        const std::uint64_t xored = static_cast<std::uint64_t>(state_ >> 64) ^ static_cast<std::uint64_t>(state_);
        const unsigned rot = static_cast<unsigned>(state_ >> 122);
        return (xored >> rot) | (xored << ((-rot) & 63u));
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log() argument.
    double uniform_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    bool coin() { return (next() & 1u) != 0; }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    void step() {
        constexpr unsigned __int128 mult =
            (static_cast<unsigned __int128>(0x2360ed051fc65da4ULL) << 64) | 0x4385df649fccf645ULL;
        state_ = state_ * mult + inc_;
    }

    unsigned __int128 state_ = 0;
    unsigned __int128 inc_ = 0;
};

}  // namespace uipt
