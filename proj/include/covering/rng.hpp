#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace covering {

// Philox4x32-10 counter-based generator (constants from Salmon et al.).
// Every draw is a pure function of (seed, stream, index), so point clouds
// rebuild bit-for-bit from their seed and split substreams never overlap.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  // Derived generator with its own independent index space.
  CounterRng split(std::uint64_t substream) const {
    return CounterRng(seed_, stream_ * 0x9e3779b97f4a7c15ull + substream + 1);
  }

  std::uint64_t bits(std::uint64_t i) const {
    const std::array<std::uint32_t, 4> x = block(i >> 1);
    return (i & 1) ? (static_cast<std::uint64_t>(x[2]) | (static_cast<std::uint64_t>(x[3]) << 32))
                   : (static_cast<std::uint64_t>(x[0]) | (static_cast<std::uint64_t>(x[1]) << 32));
  }

  // i-th uniform draw in [0, 1).
  double uniform(std::uint64_t i) const {
    return static_cast<double>(bits(i) >> 11) * 0x1.0p-53;
  }

  // i-th standard normal draw; consumes uniform indices 2i and 2i+1.
  double normal(std::uint64_t i) const {
    const double u = uniform(2 * i);
    const double v = uniform(2 * i + 1);
    const double radius = std::sqrt(-2.0 * std::log1p(-u));  // 1-u in (0,1]
    return radius * std::cos(2.0 * kPi * v);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  static constexpr double kPi = 3.14159265358979323846;

  std::array<std::uint32_t, 4> block(std::uint64_t counter) const {
    std::uint32_t c0 = static_cast<std::uint32_t>(counter);
    std::uint32_t c1 = static_cast<std::uint32_t>(counter >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(stream_);
    std::uint32_t c3 = static_cast<std::uint32_t>(stream_ >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(seed_);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed_ >> 32);
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = 0xd2511f53ull * c0;
      const std::uint64_t p1 = 0xcd9e8d57ull * c2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      c0 = hi1 ^ c1 ^ k0;
      c1 = lo1;
      c2 = hi0 ^ c3 ^ k1;
      c3 = lo0;
      k0 += 0x9e3779b9u;
      k1 += 0xbb67ae85u;
    }
    return {c0, c1, c2, c3};
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace covering
