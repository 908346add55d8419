#include "uncover/rng.hpp"

#include <bit>
#include <cmath>

#include "uncover/errors.hpp"

namespace uncover {

namespace {

inline std::uint64_t splitmix_step(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
  // Hash the stream index into the seed so substreams decorrelate even for
  // adjacent (seed, stream) pairs.
  std::uint64_t h = stream;
  std::uint64_t mixed = seed ^ splitmix_step(h) ^ (stream * 0xda942042e4dd58b5ULL);
  for (auto& s : state_) s = splitmix_step(mixed);
}

std::uint64_t RngStream::next_u64() {
  std::uint64_t* s = state_;
  const std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
  const std::uint64_t t = s[1] << 17;
  s[2] ^= s[0];
  s[3] ^= s[1];
  s[1] ^= s[2];
  s[0] ^= s[3];
  s[2] ^= t;
  s[3] = rotl(s[3], 45);
  return result;
}

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_open_unit() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
  if (bound == 0) throw OutOfDomain("next_below: bound must be positive");
  // Lemire's multiply-shift with rejection of the biased low range.
  std::uint64_t x = next_u64();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < bound) {
    std::uint64_t threshold = -bound % bound;
    while (lo < threshold) {
      x = next_u64();
      m = static_cast<unsigned __int128>(x) * bound;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

int RngStream::next_index(int bound) {
  return static_cast<int>(next_below(static_cast<std::uint64_t>(bound)));
}

double RngStream::next_normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_unit() - 1.0;
    v = 2.0 * next_unit() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  has_spare_normal_ = true;
  return u * factor;
}

int RngStream::next_poisson_one() {
  // CDF inversion; the mean is 1 so the walk terminates almost immediately.
  static constexpr double kExpNegOne = 0.36787944117144233;
  const double u = next_unit();
  double p = kExpNegOne;
  double cum = p;
  int k = 0;
  while (u >= cum && k < 256) {
    ++k;
    p /= k;
    cum += p;
  }
  return k;
}

bool RngStream::next_bit() {
  if (bits_left_ == 0) {
    bit_buffer_ = next_u64();
    bits_left_ = 64;
  }
  const bool b = (bit_buffer_ & 1u) != 0;
  bit_buffer_ >>= 1;
  --bits_left_;
  return b;
}

int RngStream::next_binomial_two_half() {
  return static_cast<int>(next_bit()) + static_cast<int>(next_bit());
}

int RngStream::next_geometric_half() {
  // Count leading 1-bits of the bit stream: P(k) = 2^-(k+1).
  int k = 0;
  for (;;) {
    if (bits_left_ == 0) {
      bit_buffer_ = next_u64();
      bits_left_ = 64;
    }
    const int ones = std::countr_one(bit_buffer_);
    if (ones >= bits_left_) {
      k += bits_left_;
      bits_left_ = 0;
      continue;
    }
    k += ones;
    bit_buffer_ >>= (ones + 1);
    bits_left_ -= ones + 1;
    return k;
  }
}

}  // namespace uncover
