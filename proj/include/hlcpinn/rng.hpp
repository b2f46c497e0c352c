#pragma once

#include <cstdint>

namespace hlcpinn {

/// SplitMix64 (Steele/Lea/Flood). All sampling and parameter initialization
/// draw from named substreams keyed by (seed, stream, block) so that every
/// collocation set and every init is reproducible from the run seed alone,
/// independent of evaluation order, and portable across platforms.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double strictly inside (0, 1).
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1p-53 + 0x1p-54;
  }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

private:
  std::uint64_t state_;
};

enum class Stream : std::uint64_t {
  init = 1,
  interior = 2,
  spatial_boundary = 3,
  temporal_boundary = 4,
  embed = 5,
  misc = 6,
};

inline std::uint64_t substream_seed(std::uint64_t seed, Stream stream,
                                    std::uint64_t block = 0) {
  SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(stream)) ^
               (0xd1b54a32d192ed03ull * (block + 1)));
  return g.next();
}

inline SplitMix64 substream(std::uint64_t seed, Stream stream,
                            std::uint64_t block = 0) {
  return SplitMix64(substream_seed(seed, stream, block));
}

}  // namespace hlcpinn
