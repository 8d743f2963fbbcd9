#pragma once

#include <cmath>
#include <cstdint>

namespace vhetpos {

// Counter-based generator built on splitmix64. Every stream is keyed by a
// tuple of identifiers (seed, trial, epoch, source, purpose), so draws are
// independent of evaluation order and of which other sources are present.
// This gives common random numbers across system combinations and makes
// results independent of worker scheduling.
class KeyedRng {
public:
    explicit KeyedRng(std::uint64_t k0, std::uint64_t k1 = 0,
                      std::uint64_t k2 = 0, std::uint64_t k3 = 0) {
        std::uint64_t s = 0x9e3779b97f4a7c15ull ^ k0;
        s = mix(s, k1);
        s = mix(s, k2);
        s = mix(s, k3);
        state_ = s;
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

private:
    static std::uint64_t mix(std::uint64_t h, std::uint64_t k) {
        h += 0x9e3779b97f4a7c15ull + (k << 1 | 1);
        h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
        h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
        return h ^ (h >> 31);
    }

    std::uint64_t state_;
};

enum class StreamTag : std::uint64_t {
    Visibility = 1,
    Noise = 2,
    Clock = 3,
};

// Factory for the per-epoch substreams of one (seed, trial, epoch) cell.
class EpochRng {
public:
    EpochRng(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t epoch_index)
        : seed_(master_seed), trial_(trial), epoch_(epoch_index) {}

    KeyedRng stream(StreamTag tag) const {
        return KeyedRng(seed_, trial_, epoch_, static_cast<std::uint64_t>(tag) << 48);
    }

    KeyedRng source_stream(StreamTag tag, int kind, int id) const {
        const std::uint64_t salt = (static_cast<std::uint64_t>(tag) << 48) ^
                                   (static_cast<std::uint64_t>(kind + 1) << 32) ^
                                   static_cast<std::uint64_t>(static_cast<std::uint32_t>(id));
        return KeyedRng(seed_, trial_, epoch_, salt);
    }

    std::uint64_t master_seed() const { return seed_; }

private:
    std::uint64_t seed_, trial_, epoch_;
};

}  // namespace vhetpos
