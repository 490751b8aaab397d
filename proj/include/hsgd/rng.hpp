#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

#include "hsgd/errors.hpp"

namespace hsgd {

// Purpose tags for deriving independent substreams from one root seed.
// Keeping every consumer on its own stream means that, e.g., changing the
// metric cadence or adding an output-selection draw cannot perturb the
// sampled trajectory.
enum class StreamPurpose : std::uint64_t {
  kInitBatch = 1,
  kXi = 2,
  kZeta = 3,
  kOutputSelect = 4,
  kSnapshot = 5,
  kSigmaEstimate = 6,
  kSplit = 7,
  kSynthetic = 8,
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic random stream: mt19937_64 engine with hand-rolled bounded
// draws, so sequences do not depend on the standard library's distribution
// implementations.
class RngStream {
 public:
  RngStream(std::uint64_t root_seed, StreamPurpose purpose)
      : RngStream(root_seed, static_cast<std::uint64_t>(purpose)) {}

  RngStream(std::uint64_t root_seed, std::uint64_t purpose) {
    std::uint64_t s = root_seed ^ (purpose * 0xd1342543de82ef95ULL);
    engine_.seed(splitmix64(s));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, n). Fixed-point multiply keeps the mapping reproducible.
  std::size_t next_index(std::size_t n) {
    if (n == 0) throw ParameterError("next_index: n must be positive");
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(n);
    return static_cast<std::size_t>(wide >> 64);
  }

  // Uniform in [0, 1).
  double next_uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_normal() {
    // Marsaglia polar method; cached second variate.
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_uniform01() - 1.0;
      v = 2.0 * next_uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    has_cached_ = true;
    return u * f;
  }

  // Uniform k-subset of {0..n-1} without replacement (Floyd's algorithm),
  // returned in ascending order so downstream sums are order-deterministic.
  // For k == 1 this consumes exactly one next_index(n) draw.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k) {
    if (k == 0 || k > n) throw ParameterError("sample_without_replacement: need 1 <= k <= n");
    std::unordered_set<std::size_t> chosen;
    chosen.reserve(k * 2);
    for (std::size_t i = n - k; i < n; ++i) {
      const std::size_t j = next_index(i + 1);
      if (!chosen.insert(j).second) chosen.insert(i);
    }
    std::vector<std::size_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[next_index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace hsgd
