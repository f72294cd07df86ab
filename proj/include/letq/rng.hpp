#pragma once

#include <cstdint>
#include <random>

namespace letq {

// Every randomized path in the toolkit goes through this seed unless the
// caller passes one; keep it stable, outputs are compared byte-for-byte.
inline constexpr std::uint64_t kDefaultSeed = 1729;

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 is bit-exact across platforms by specification; the modulo
// draw keeps it that way (std distributions are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace letq
