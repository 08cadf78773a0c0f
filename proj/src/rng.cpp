#include "hdis/rng.hpp"

#include <cmath>

namespace hdis {

std::uint64_t RandomStream::mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t RandomStream::hash_string(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::uint64_t RandomStream::derive_seed(
    std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = 0x8000000080001405ull;
  for (std::uint64_t k : keys) h = mix(h ^ k);
  return h;
}

RandomStream RandomStream::derive(std::initializer_list<std::uint64_t> keys) {
  return RandomStream(derive_seed(keys));
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

}  // namespace hdis
