#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace recexp {

// Philox4x32-10 counter-based generator (Salmon et al., Random123).
//
// Stream splitting: the 64-bit seed is the Philox key, the upper half of the
// 128-bit counter holds a 64-bit stream id and the lower half is the block
// index. Two generators with the same seed and different stream ids never
// share a counter value, so replicate i can simply use stream i.
class Philox {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    if (have_ == 0) {
      Block ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
      buf_ = bijection(ctr, key_);
      ++block_;
      have_ = 2;
    }
    const int i = 2 - have_;
    --have_;
    return (static_cast<std::uint64_t>(buf_[2 * i + 1]) << 32) | buf_[2 * i];
  }

  std::uint64_t stream() const noexcept { return stream_; }

  /// The raw keyed bijection; exposed for known-answer tests.
  static Block bijection(Block ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Block buf_{};
  int have_ = 0;
};

using Rng = Philox;

/// Uniform on the open interval (0,1); 53 random bits, never 0 or 1.
inline double uniform01(Rng& rng) noexcept {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard (rate 1) exponential variate.
inline double std_exponential(Rng& rng) noexcept { return -std::log(uniform01(rng)); }

}  // namespace recexp
