// Seeded, platform-stable random source. Only the raw mt19937_64 stream is
// used (distribution objects are implementation-defined), so identical seeds
// give identical runs everywhere.
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace k0s {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish integer in [0, n); n must be positive.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  /// Integer in [lo, hi].
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::size_t>(hi - lo + 1))); }
  /// Coefficient drawn from {-2, -1, 0, 1, 2}.
  long small_coeff() { return between(-2, 2); }
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }
  /// Independent child stream; consumes one draw.
  Rng fork() { return Rng(engine_() ^ 0x9e3779b97f4a7c15ULL); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace k0s
