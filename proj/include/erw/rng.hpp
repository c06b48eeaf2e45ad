#pragma once
// Deterministic RNG streams for reproducible Monte Carlo.
//
// Everything here is built on the splitmix64 mixer so that (a) replica streams
// are derived from (master seed, replica index) and never from the worker that
// happens to run the replica, and (b) per-site environment draws are pure
// functions of (environment seed, site coordinates) -- a site re-queried after
// cache eviction reproduces the same stack bit for bit.
//
// We deliberately avoid std::uniform_real_distribution / normal_distribution:
// their output is implementation-defined, and the determinism contract wants
// every byte pinned down by our own code.

#include <cstdint>
#include <cmath>

namespace erw {

inline constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer (Vigna); bijective 64-bit mixer
inline constexpr uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

// fold one key into a seed; chain calls to derive sub-stream seeds
inline constexpr uint64_t seed_combine(uint64_t seed, uint64_t key) {
  return mix64(seed + kGolden + key * 0x2545f4914f6cdd1dull);
}

// stream tags so different purposes never collide on the same derived seed
enum : uint64_t {
  kStreamWalk = 0x57414c4bull,    // per-replica step draws
  kStreamEnv = 0x454e5649ull,     // per-replica environment master
  kStreamSite = 0x53495445ull,    // per-site stack realization
  kStreamCycle = 0x4359434cull,   // branching life cycles
  kStreamStats = 0x53544154ull,   // bootstrap / jitter / reference samples
};

struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t u64() {
    uint64_t z = (state += kGolden);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform on [0,1), 53-bit resolution
  double unit() { return (double)(u64() >> 11) * 0x1.0p-53; }

  // uniform on (0,1), never returns an endpoint (safe under log/tan)
  double unit_open() { return ((double)(u64() >> 12) + 0.5) * 0x1.0p-52; }

  // standard normal via Box-Muller (both values would be independent; we keep
  // one per call -- callers that need bulk gaussians use GaussPair below)
  double gauss() {
    double u1 = unit_open();
    double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  // integer in [0, n)
  uint64_t below(uint64_t n) { return u64() % n; }
};

// Box-Muller pair, for hot loops that consume gaussians two at a time
struct GaussPair {
  double a, b;
};
inline GaussPair gauss_pair(Rng& rng) {
  double u1 = rng.unit_open();
  double u2 = rng.unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 6.283185307179586476925287 * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

// derived seed helpers --------------------------------------------------

inline uint64_t replica_seed(uint64_t master, uint64_t stream, uint64_t replica) {
  return seed_combine(seed_combine(master, stream), replica);
}

// site seed for d=1 (negative coordinates map through two's complement)
inline uint64_t site_seed(uint64_t env_seed, int64_t site) {
  return seed_combine(seed_combine(env_seed, kStreamSite), (uint64_t)site);
}

// site seed for general d
inline uint64_t site_seed(uint64_t env_seed, const int32_t* coord, int d) {
  uint64_t h = seed_combine(env_seed, kStreamSite);
  for (int a = 0; a < d; ++a) h = seed_combine(h, (uint64_t)(int64_t)coord[a]);
  return h;
}

}  // namespace erw
