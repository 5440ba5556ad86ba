#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace lexishot {

// Seeded generator with a platform-independent draw sequence: the raw stream
// is std::mt19937_64 (fully specified by the C++ standard, seeded with the
// 64-bit seed directly) and bounded draws use rejection sampling rather than
// std::uniform_int_distribution, whose algorithm is implementation-defined.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// k distinct indices from [0, n), in draw order. Partial Fisher-Yates over
// the identity permutation: step i swaps slot i with slot i + below(n - i).
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, Prng& rng);

}  // namespace lexishot
