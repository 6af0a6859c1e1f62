#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace qmb {

// Philox4x32-10 counter-based generator (Salmon et al., Random123).
//
// The 64-bit seed is the key; the 128-bit counter is split into a 64-bit
// stream id (upper half) and a 64-bit block index (lower half). Every
// (seed, stream) pair is an independent substream, so Monte Carlo trials can
// be replayed or run in any order and still produce bit-identical draws.
class Philox4x32 {
public:
    using result_type = std::uint64_t;
    using block_type = std::array<std::uint32_t, 4>;
    using key_type = std::array<std::uint32_t, 2>;

    Philox4x32(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (used_ == 2) {
            buffer_ = generate_block(block_++);
            used_ = 0;
        }
        const auto lo = buffer_[2 * used_];
        const auto hi = buffer_[2 * used_ + 1];
        ++used_;
        return (static_cast<std::uint64_t>(hi) << 32) | lo;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    static block_type bijection(block_type counter, key_type key);

private:
    block_type generate_block(std::uint64_t index) const {
        return bijection({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                          static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                         key_);
    }

    key_type key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    block_type buffer_{};
    int used_ = 2;
};

inline Philox4x32::block_type Philox4x32::bijection(block_type ctr, key_type key) {
    constexpr std::uint64_t m0 = 0xD2511F53;
    constexpr std::uint64_t m1 = 0xCD9E8D57;
    constexpr std::uint32_t w0 = 0x9E3779B9;
    constexpr std::uint32_t w1 = 0xBB67AE85;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += w0;
            key[1] += w1;
        }
        const std::uint64_t p0 = m0 * ctr[0];
        const std::uint64_t p1 = m1 * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
}

}  // namespace qmb
