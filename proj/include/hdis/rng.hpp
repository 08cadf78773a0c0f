#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace hdis {

/// Seeded random stream. Uniform and normal variates are generated from the
/// raw mt19937_64 output (whose sequence is fixed by the standard), so a given
/// seed produces the same draws on every platform. Not thread-safe; each
/// thread owns its own stream.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t mix(std::uint64_t x);
  static std::uint64_t hash_string(std::string_view s);
  // Derives an independent substream from a list of key components.
  static RandomStream derive(std::initializer_list<std::uint64_t> keys);
  static std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys);

  std::uint64_t next_u64() { return engine_(); }

  // [0, 1) with 53 random bits
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // N(0,1) via the Marsaglia polar method
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hdis
