#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace levyps::rng {

// Philox4x32-10 counter-based block function (Salmon et al., SC'11).
using Philox4x32Counter = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

Philox4x32Counter philox4x32_10(Philox4x32Counter counter, Philox4x32Key key) noexcept;

// Stream of random words addressed by (seed, stream_hi, stream_lo).  Every
// (sample, interval) pair of an ensemble gets its own stream, so draws do
// not depend on the order in which streams are consumed.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream) noexcept;

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;
  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  // Uniform on (0, 1), safe for log().
  double uniform_open() noexcept;

 private:
  void refill() noexcept;

  Philox4x32Key key_;
  Philox4x32Counter counter_;
  Philox4x32Counter block_{};
  unsigned used_ = 4;
};

// Inversion for mean < 10, PTRS transformed rejection above.
std::int64_t poisson(CounterStream& rng, double mean);

// Box-Muller pair of independent standard normals.
std::pair<double, double> normal_pair(CounterStream& rng) noexcept;

}  // namespace levyps::rng
