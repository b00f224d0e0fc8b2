#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "amsim/sim/rng.hpp"

namespace amsim::overlay {

/// Unsigned identifier on a ring of size 2^bits, bits in [1, 160].
class RingKey {
 public:
  static constexpr unsigned kMaxBits = 160;

  RingKey() = default;
  RingKey(std::uint64_t value, unsigned bits);

  static RingKey from_string(std::string_view decimal, unsigned bits);
  static RingKey random(sim::Rng& rng, unsigned bits);
  /// 2^i mod 2^bits.
  static RingKey pow2(unsigned i, unsigned bits);

  unsigned bits() const { return bits_; }
  std::uint64_t low64() const { return limbs_[0]; }

  /// Addition modulo 2^bits.
  RingKey operator+(const RingKey& other) const;
  RingKey plus_pow2(unsigned i) const { return *this + pow2(i, bits_); }
  RingKey next() const { return *this + RingKey(1, bits_); }

  std::strong_ordering operator<=>(const RingKey& other) const;
  bool operator==(const RingKey& other) const { return limbs_ == other.limbs_ && bits_ == other.bits_; }

  std::string to_string() const;

 private:
  void mask();

  std::array<std::uint64_t, 3> limbs_{};  // little-endian
  unsigned bits_ = 32;
};

/// x in (a, b] on the ring. a == b denotes the whole ring.
bool in_half_open(const RingKey& x, const RingKey& a, const RingKey& b);

/// x in (a, b) on the ring. a == b denotes the whole ring except a.
bool in_open(const RingKey& x, const RingKey& a, const RingKey& b);

}  // namespace amsim::overlay
