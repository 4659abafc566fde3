#pragma once

#include <cstdint>
#include <string_view>

namespace mixid {

inline std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Deterministic seeded generator with named substreams. All randomness in the
// project flows from one master seed through these.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x6a09e667f3bcc908ull) {}

  Rng sub(std::string_view name) const {
    std::uint64_t s = state_ ^ fnv1a(name);
    splitmix64(s);
    return Rng(splitmix64(s));
  }

  Rng sub(std::uint64_t salt) const {
    std::uint64_t s = state_ + 0x9e3779b97f4a7c15ull * (salt + 1);
    splitmix64(s);
    return Rng(splitmix64(s));
  }

  std::uint64_t u64() { return splitmix64(state_); }

  std::uint64_t below(std::uint64_t n) { return n ? u64() % n : 0; }

  long long range(long long lo, long long hi) {  // inclusive bounds
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (u64() & 1) != 0; }

private:
  std::uint64_t state_;
};

}  // namespace mixid
