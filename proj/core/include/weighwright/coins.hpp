#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace weighwright {

inline constexpr int kMaxUniverse = 64;

// 1-based coin label.
using CoinId = int;

// Subset of a coin universe of at most 64 coins. Bit (i-1) is set iff coin i
// is a member, so bits() is exactly the sum of 2^(i-1) over the members.
class CoinSet {
 public:
  constexpr CoinSet() = default;
  constexpr explicit CoinSet(std::uint64_t bits) : bits_(bits) {}
  CoinSet(std::initializer_list<CoinId> coins);

  static CoinSet of(std::span<const CoinId> coins);
  static constexpr CoinSet full(int n) {
    return CoinSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr CoinSet single(CoinId c) { return CoinSet(std::uint64_t{1} << (c - 1)); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(CoinId c) const { return c >= 1 && c <= 64 && ((bits_ >> (c - 1)) & 1U); }
  constexpr bool subset_of(CoinSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool fits(int n) const { return subset_of(full(n)); }
  // Least member, or 0 when empty.
  constexpr CoinId min() const { return bits_ ? std::countr_zero(bits_) + 1 : 0; }
  constexpr CoinId max() const { return bits_ ? 64 - std::countl_zero(bits_) : 0; }

  constexpr CoinSet with(CoinId c) const { return CoinSet(bits_ | single(c).bits_); }
  constexpr CoinSet without(CoinId c) const { return CoinSet(bits_ & ~single(c).bits_); }
  constexpr CoinSet complement(int n) const { return CoinSet(~bits_ & full(n).bits_); }

  std::vector<CoinId> coins() const;
  std::string to_string() const;

  friend constexpr CoinSet operator|(CoinSet a, CoinSet b) { return CoinSet(a.bits_ | b.bits_); }
  friend constexpr CoinSet operator&(CoinSet a, CoinSet b) { return CoinSet(a.bits_ & b.bits_); }
  friend constexpr CoinSet operator^(CoinSet a, CoinSet b) { return CoinSet(a.bits_ ^ b.bits_); }
  friend constexpr CoinSet operator-(CoinSet a, CoinSet b) { return CoinSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(CoinSet, CoinSet) = default;
  friend constexpr auto operator<=>(CoinSet a, CoinSet b) { return a.bits_ <=> b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

// The heavy-coin hypothesis; same representation as CoinSet.
using FakeSet = CoinSet;

// Throws std::invalid_argument for ids outside 1..universe.
FakeSet encode_subset(std::span<const CoinId> coins, int universe = kMaxUniverse);
std::vector<CoinId> decode_subset(FakeSet x);

}  // namespace weighwright
