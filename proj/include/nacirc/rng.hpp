#pragma once

#include <cstdint>
#include <random>

namespace nacirc {

// Seeded generator with a portable bounded draw; std distributions are
// implementation defined, which would break byte-identical output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform in [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool coin(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::mt19937_64 eng_;
};

}  // namespace nacirc
