#pragma once

// Counter-based random streams. A stream is keyed by (master_seed, stream_id);
// each replicate starts at its own counter block, so the values drawn for
// replicate i never depend on how replicates are spread across workers.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace kpztail::random {

struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

/// Philox4x32-10 (Salmon et al., SC'11) exposed as a 64-bit URBG.
class Philox {
public:
  using result_type = std::uint64_t;

  Philox(std::uint64_t key, std::uint64_t counter_hi) : key_(key), hi_(counter_hi) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (slot_ == 2) refill();
    return buf_[slot_++];
  }

  [[nodiscard]] std::uint64_t blocks_used() const { return lo_; }

private:
  void refill() {
    std::array<std::uint32_t, 4> x{static_cast<std::uint32_t>(lo_), static_cast<std::uint32_t>(lo_ >> 32),
                                   static_cast<std::uint32_t>(hi_), static_cast<std::uint32_t>(hi_ >> 32)};
    std::uint32_t k0 = static_cast<std::uint32_t>(key_);
    std::uint32_t k1 = static_cast<std::uint32_t>(key_ >> 32);
    for (int r = 0; r < 10; ++r) {
      const std::uint64_t p0 = std::uint64_t{0xD2511F53} * x[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57} * x[2];
      x = {static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k0, static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k1, static_cast<std::uint32_t>(p0)};
      k0 += 0x9E3779B9U;
      k1 += 0xBB67AE85U;
    }
    buf_[0] = (std::uint64_t{x[1]} << 32) | x[0];
    buf_[1] = (std::uint64_t{x[3]} << 32) | x[2];
    slot_ = 0;
    ++lo_;
  }

  std::uint64_t key_;
  std::uint64_t hi_;
  std::uint64_t lo_ = 0;
  std::array<std::uint64_t, 2> buf_{};
  int slot_ = 2;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Engine for one replicate of one stream.
inline Philox replicate_engine(const RngSpec& spec, std::uint64_t replicate) {
  return Philox(splitmix64(spec.master_seed ^ splitmix64(spec.stream_id + 0x632BE59BD9B4E019ULL)), replicate);
}

/// Uniform on (0, 1], safe under log.
template <class Engine>
inline double uniform_open0(Engine& g) {
  return (static_cast<double>(g() >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace kpztail::random
