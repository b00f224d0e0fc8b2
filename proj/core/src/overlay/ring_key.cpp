#include "amsim/overlay/ring_key.hpp"

#include <algorithm>
#include <stdexcept>

namespace amsim::overlay {

namespace {

__extension__ typedef unsigned __int128 u128;

void check_bits(unsigned bits) {
  if (bits == 0 || bits > RingKey::kMaxBits) throw std::invalid_argument("RingKey: bits must be in [1, 160]");
}

void check_same(const RingKey& a, const RingKey& b) {
  if (a.bits() != b.bits()) throw std::invalid_argument("RingKey: mixed ring sizes");
}

}  // namespace

RingKey::RingKey(std::uint64_t value, unsigned bits) : limbs_{value, 0, 0}, bits_(bits) {
  check_bits(bits);
  mask();
}

void RingKey::mask() {
  for (unsigned limb = 0; limb < limbs_.size(); ++limb) {
    const unsigned lo = limb * 64;
    if (bits_ <= lo) {
      limbs_[limb] = 0;
    } else if (bits_ < lo + 64) {
      limbs_[limb] &= (std::uint64_t{1} << (bits_ - lo)) - 1;
    }
  }
}

RingKey RingKey::from_string(std::string_view decimal, unsigned bits) {
  check_bits(bits);
  if (decimal.empty()) throw std::invalid_argument("RingKey: empty string");
  RingKey k(0, bits);
  for (char c : decimal) {
    if (c < '0' || c > '9') throw std::invalid_argument("RingKey: not a decimal number");
    u128 carry = static_cast<unsigned>(c - '0');
    for (auto& limb : k.limbs_) {
      const u128 v = static_cast<u128>(limb) * 10 + carry;
      limb = static_cast<std::uint64_t>(v);
      carry = v >> 64;
    }
    if (carry) throw std::out_of_range("RingKey: value exceeds ring size");
    RingKey masked = k;
    masked.mask();
    if (!(masked.limbs_ == k.limbs_)) throw std::out_of_range("RingKey: value exceeds ring size");
  }
  return k;
}

RingKey RingKey::random(sim::Rng& rng, unsigned bits) {
  check_bits(bits);
  RingKey k(0, bits);
  for (auto& limb : k.limbs_) limb = rng.next();
  k.mask();
  return k;
}

RingKey RingKey::pow2(unsigned i, unsigned bits) {
  check_bits(bits);
  RingKey k(0, bits);
  if (i < bits) k.limbs_[i / 64] = std::uint64_t{1} << (i % 64);
  return k;
}

RingKey RingKey::operator+(const RingKey& other) const {
  check_same(*this, other);
  RingKey r(0, bits_);
  u128 carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    const u128 v = static_cast<u128>(limbs_[i]) + other.limbs_[i] + carry;
    r.limbs_[i] = static_cast<std::uint64_t>(v);
    carry = v >> 64;
  }
  r.mask();
  return r;
}

std::strong_ordering RingKey::operator<=>(const RingKey& other) const {
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != other.limbs_[i]) return limbs_[i] <=> other.limbs_[i];
  }
  return std::strong_ordering::equal;
}

std::string RingKey::to_string() const {
  auto limbs = limbs_;
  auto is_zero = [&] { return std::all_of(limbs.begin(), limbs.end(), [](auto l) { return l == 0; }); };
  if (is_zero()) return "0";
  std::string digits;
  while (!is_zero()) {
    u128 rem = 0;
    for (std::size_t i = limbs.size(); i-- > 0;) {
      const u128 cur = (rem << 64) | limbs[i];
      limbs[i] = static_cast<std::uint64_t>(cur / 10);
      rem = cur % 10;
    }
    digits.push_back(static_cast<char>('0' + static_cast<int>(rem)));
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

bool in_half_open(const RingKey& x, const RingKey& a, const RingKey& b) {
  check_same(x, a);
  check_same(a, b);
  if (a == b) return true;
  if (a < b) return a < x && x <= b;
  return x > a || x <= b;
}

bool in_open(const RingKey& x, const RingKey& a, const RingKey& b) {
  check_same(x, a);
  check_same(a, b);
  if (a == b) return x != a;
  if (a < b) return a < x && x < b;
  return x > a || x < b;
}

}  // namespace amsim::overlay
