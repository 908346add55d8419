#pragma once

#include <cstdint>
#include <vector>

namespace uncover {

// xoshiro256++ seeded through a splitmix64 hash of (seed, stream).
//
// Substreams let parallel replicates draw independently: stream r of a master
// seed is statistically independent of stream r' != r, and identical
// (seed, stream) pairs always reproduce the same sequence. All samplers below
// use only integer arithmetic and IEEE double operations, so sequences are
// identical across platforms.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : RngStream(seed, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  // Uniform on [0,1) with 53-bit resolution.
  double next_unit();

  // Uniform on (0,1), strictly inside the interval.
  double next_open_unit();

  // Unbiased uniform integer in [0, bound); bound must be positive.
  std::uint64_t next_below(std::uint64_t bound);
  int next_index(int bound);

  // Standard normal via the Marsaglia polar method.
  double next_normal();

  // Offspring laws used by the conditioned branching-tree sampler.
  int next_poisson_one();        // Poisson with mean 1
  int next_binomial_two_half();  // Binomial(2, 1/2)
  int next_geometric_half();     // failures before first success, p = 1/2

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = next_below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  bool next_bit();

  std::uint64_t state_[4];
  std::uint64_t bit_buffer_ = 0;
  int bits_left_ = 0;
  double spare_normal_ = 0;
  bool has_spare_normal_ = false;
};

}  // namespace uncover
