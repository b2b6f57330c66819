#pragma once

#include <array>
#include <cstdint>

namespace claimsim {

// Counter-based uniform generator built on Philox4x32-10 (Salmon et al.,
// "Parallel random numbers: as easy as 1, 2, 3", SC'11). Every (seed, key)
// pair addresses its own statistically independent sequence, so streams can
// be handed to worker threads in any order without affecting the draws.

namespace philox {

constexpr std::uint32_t mult_a = 0xD2511F53u;
constexpr std::uint32_t mult_b = 0xCD9E8D57u;
constexpr std::uint32_t bump_a = 0x9E3779B9u;
constexpr std::uint32_t bump_b = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> round_once(const std::array<std::uint32_t, 4>& ctr,
                                               const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t prod0 = std::uint64_t{mult_a} * ctr[0];
    const std::uint64_t prod1 = std::uint64_t{mult_b} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(prod0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(prod0);
    const auto hi1 = static_cast<std::uint32_t>(prod1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(prod1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                          std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        ctr = round_once(ctr, key);
        if (r < 9) {
            key[0] += bump_a;
            key[1] += bump_b;
        }
    }
    return ctr;
}

} // namespace philox

/// Identifies which lifecycle stage a stream feeds. Keeping one stream per
/// (claim, stage) means a replacement sampler for one stage never perturbs
/// the draws seen by any other.
enum class ModuleId : std::uint32_t {
    occurrence_count = 1,
    occurrence_time = 2,
    claim_size = 3,
    notification = 4,
    closure = 5,
    payment_count = 6,
    payment_sizes = 7,
    payment_times = 8,
};

/// One reproducible uniform stream. Counter layout:
///   word 0  occurrence period
///   word 1  claim index within the period (0 for period-level streams)
///   word 2  module id
///   word 3  draw counter
/// Key: master seed split into low/high 32-bit words.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint32_t occurrence_period,
              std::uint32_t claim_index, ModuleId module)
        : key_{static_cast<std::uint32_t>(master_seed),
               static_cast<std::uint32_t>(master_seed >> 32)},
          prefix_{occurrence_period, claim_index, static_cast<std::uint32_t>(module)} {}

    std::uint64_t next_u64() {
        const auto out = philox::block({prefix_[0], prefix_[1], prefix_[2], draw_counter_}, key_);
        ++draw_counter_;
        return (std::uint64_t{out[0]} << 32) | out[1];
    }

    /// Uniform draw on (0, 1].
    double next_uniform() {
        return static_cast<double>(next_u64() + 1.0) * 0x1p-64;
    }

    std::uint32_t draws() const { return draw_counter_; }

private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 3> prefix_;
    std::uint32_t draw_counter_ = 0;
};

/// Stream factory bound to one master seed.
struct RngFactory {
    std::uint64_t master_seed = 0;

    RngStream stream(std::uint32_t occurrence_period, std::uint32_t claim_index,
                     ModuleId module) const {
        return RngStream(master_seed, occurrence_period, claim_index, module);
    }
};

} // namespace claimsim
