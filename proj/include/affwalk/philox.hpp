#pragma once

// Philox4x64-10 counter-based generator (Salmon et al., SC'11). Each
// (key, counter) pair maps to four independent 64-bit words, so a stream is
// fully determined by its key and never needs coordination between threads.

#include <array>
#include <cstdint>
#include <limits>

namespace affwalk {

class Philox4x64 {
public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint64_t, 4>;
    using Key = std::array<std::uint64_t, 2>;

    /// Stream keyed by (seed, stream); counter starts at zero.
    Philox4x64(std::uint64_t seed, std::uint64_t stream) : key_{seed, stream} {}

    static Block block(Block ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const unsigned __int128 p0 = static_cast<unsigned __int128>(kMul0) * ctr[0];
            const unsigned __int128 p1 = static_cast<unsigned __int128>(kMul1) * ctr[2];
            const auto hi0 = static_cast<std::uint64_t>(p0 >> 64), lo0 = static_cast<std::uint64_t>(p0);
            const auto hi1 = static_cast<std::uint64_t>(p1 >> 64), lo1 = static_cast<std::uint64_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (pos_ == 4) {
            buf_ = block({counter_, 0, 0, 0}, key_);
            ++counter_;
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    /// Uniform integer in [0, bound) by rejection; bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t x;
        do {
            x = (*this)();
        } while (x >= limit);
        return x % bound;
    }

private:
    static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
    static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
    static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

    Key key_;
    std::uint64_t counter_ = 0;
    Block buf_{};
    int pos_ = 4;
};

}  // namespace affwalk
