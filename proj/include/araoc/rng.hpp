// rng.hpp — deterministic random sampling with a fully pinned algorithm.
// Generated benchmark files must be byte-identical across machines, compilers
// and worker counts, so both the generator state transition (splitmix64) and
// the bounded-integer draw (rejection sampling) are spelled out here instead
// of relying on <random> distributions, whose algorithms are not fixed by the
// standard library specification.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace araoc {

// splitmix64: advances the state by a fixed odd constant and mixes it.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Folds an ordered list of parts into one seed. Used to derive independent
// per-task streams from (master seed, stream label, index, attempt).
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t state = 0x243f6a8885a308d3ULL;  // arbitrary fixed salt
  std::uint64_t h = 0;
  for (std::uint64_t part : parts) {
    state ^= part;
    h = splitmix64_next(state);
  }
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return splitmix64_next(state_); }

  // Uniform integer in [lo, hi], endpoints included. Unbiased via rejection
  // of the incomplete final bucket.
  int uniform(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("uniform: empty range");
    const std::uint64_t n = static_cast<std::uint64_t>(hi) - lo + 1;
    const std::uint64_t reject_below = (0 - n) % n;  // 2^64 mod n
    std::uint64_t r = next();
    while (r < reject_below) r = next();
    return lo + static_cast<int>(r % n);
  }

  bool coin() { return (next() & 1) != 0; }

  template <class T>
  const T& pick(const std::vector<T>& items) {
    if (items.empty()) throw std::invalid_argument("pick: empty list");
    return items[static_cast<std::size_t>(
        uniform(0, static_cast<int>(items.size()) - 1))];
  }

 private:
  std::uint64_t state_;
};

}  // namespace araoc
