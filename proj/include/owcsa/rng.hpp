#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace owcsa {

/// xoshiro256** with the reference jump polynomials (2^128 and 2^192 steps).
/// Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed)
    {
        for (auto& w : s_) {
            seed += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = seed;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            w = z ^ (z >> 31);
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    void jump()
    {
        static constexpr std::array<std::uint64_t, 4> poly = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                                              0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
        apply(poly);
    }

    void long_jump()
    {
        static constexpr std::array<std::uint64_t, 4> poly = {0x76e15d3efefdcbbfULL, 0xc5004e441c522fb3ULL,
                                                              0x77710069854ee241ULL, 0x39109bb02acbe635ULL};
        apply(poly);
    }

    bool operator==(const Xoshiro256&) const = default;

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    void apply(const std::array<std::uint64_t, 4>& poly)
    {
        std::array<std::uint64_t, 4> acc{};
        for (std::uint64_t word : poly)
            for (int b = 0; b < 64; ++b) {
                if (word & (std::uint64_t{1} << b))
                    for (int i = 0; i < 4; ++i)
                        acc[i] ^= s_[i];
                (*this)();
            }
        s_ = acc;
    }

    std::array<std::uint64_t, 4> s_{};
};

} // namespace owcsa
