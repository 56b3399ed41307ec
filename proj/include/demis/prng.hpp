#ifndef DEMIS_PRNG_HPP
#define DEMIS_PRNG_HPP

#include <cstdint>

namespace demis {

// SplitMix64 (Steele, Lea, Flood 2014). Used wherever reproducible "random"
// bytes are needed: attack injection, synthetic fixtures, seeded key
// generation for tests. Not a cryptographic generator.
//
// The exact byte semantics matter because attacked containers and golden
// files are frozen against them:
//   next():       state += 0x9E3779B97F4A7C15
//                 z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
//                 z = (z ^ z>>27) * 0x94D049BB133111EB; return z ^ z>>31
//   next_byte():  low 8 bits of next()
//   next_below(n): next() % n
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint8_t next_byte() { return static_cast<std::uint8_t>(next() & 0xFF); }

    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

    // Uniform in [0,1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace demis

#endif
