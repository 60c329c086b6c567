#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dbpriv/error.hpp"

namespace dbpriv {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic per-index stream: replicate i of a seeded computation always
// sees the same engine regardless of evaluation order or thread count.
inline std::mt19937_64 rng_substream(uint64_t seed, uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 1)));
}

// Integer-weighted categorical sampler over a fixed list of cells. Draws use
// uniform integers against the cumulative table, so sampling is exact.
class DiscreteSampler {
 public:
  DiscreteSampler(std::vector<int64_t> cells, const std::vector<int64_t>& weights)
      : cells_(std::move(cells)) {
    if (cells_.size() != weights.size() || cells_.empty())
      throw Error(errkind::config, "sampler needs matching non-empty cells and weights");
    cum_.reserve(weights.size());
    int64_t running = 0;
    for (int64_t w : weights) {
      if (w < 0) throw Error(errkind::config, "negative sampling weight");
      running += w;
      cum_.push_back(running);
    }
    if (running <= 0) throw Error(errkind::config, "sampler has zero total weight");
  }

  int64_t total() const { return cum_.back(); }
  const std::vector<int64_t>& cells() const { return cells_; }

  template <class Rng>
  int64_t draw(Rng& rng) const {
    std::uniform_int_distribution<int64_t> uni(0, cum_.back() - 1);
    const int64_t r = uni(rng);
    size_t lo = 0, hi = cum_.size() - 1;
    while (lo < hi) {
      const size_t mid = (lo + hi) / 2;
      if (cum_[mid] <= r)
        lo = mid + 1;
      else
        hi = mid;
    }
    return cells_[lo];
  }

 private:
  std::vector<int64_t> cells_;
  std::vector<int64_t> cum_;
};

}  // namespace dbpriv
