#ifndef TRUNCTAIL_RNG_HPP
#define TRUNCTAIL_RNG_HPP

#include <cstdint>
#include <random>

namespace trunctail {

/// Deterministic random stream. Substreams are derived from a master seed and
/// a counter (replication index), so parallel consumers get independent,
/// schedule-invariant streams.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(mix(seed)) {}

  /// Stream for replication `index` under `master_seed`.
  static RngStream substream(std::uint64_t master_seed, std::uint64_t index) {
    return RngStream(mix(master_seed + 0x9E3779B97F4A7C15ULL * (index + 1)));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform draw strictly inside (0,1).
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  // splitmix64 finalizer, decorrelates adjacent seeds
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace trunctail

#endif
