#pragma once

#include <cstdint>
#include <initializer_list>

namespace sre {

// Counter-based deterministic generator. A single integer seed plus a list
// of stream words (radius index, sample index, ...) identifies a stream;
// draws depend only on (seed, stream, counter), so parallel evaluation
// orders cannot change the values produced.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {})
        : key_(mix(seed + kGolden)) {
        for (std::uint64_t w : stream) key_ = mix(key_ ^ mix(w + kGolden));
    }

    CounterRng derived(std::initializer_list<std::uint64_t> stream) const {
        CounterRng child = *this;
        child.counter_ = 0;
        for (std::uint64_t w : stream) child.key_ = mix(child.key_ ^ mix(w + kGolden));
        return child;
    }

    std::uint64_t next_u64() { return mix(key_ + kGolden * ++counter_); }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace sre
