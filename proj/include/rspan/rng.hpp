#pragma once

#include <cstdint>

namespace rspan {

// splitmix64; the whole project draws randomness through this so that runs
// are reproducible bit-for-bit across platforms.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() { return splitmix64(state_); }

    // Uniform draw in [0, n) via 128-bit multiply; avoids modulo bias well
    // enough for this use and stays identical everywhere.
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

// Labeled sub-seed derivation.  Every consumer of randomness gets its own
// (tag, index) stream so adding a module never perturbs another's draws.
struct SeedSeq {
    uint64_t master = 0;

    uint64_t sub(uint64_t tag, uint64_t index) const {
        uint64_t s = master ^ (0x632be59bd9b4e019ULL * (tag + 1));
        splitmix64(s);
        s ^= 0x9e3779b97f4a7c15ULL * (index + 1);
        return splitmix64(s);
    }
};

// Stream tags used across the build.
enum : uint64_t {
    kTagHtShrink = 1,
    kTagHtExpand = 2,
    kTagGroupShrink = 3,
    kTagGroupExpand = 4,
    kTagPointGen = 5,
    kTagFaultGen = 6,
    kTagResample = 7,
};

}  // namespace rspan
