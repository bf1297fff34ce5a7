#include "weighwright/coins.hpp"

#include <stdexcept>

namespace weighwright {

CoinSet::CoinSet(std::initializer_list<CoinId> coins)
    : CoinSet(encode_subset(std::span<const CoinId>(coins.begin(), coins.size()))) {}

CoinSet CoinSet::of(std::span<const CoinId> coins) { return encode_subset(coins); }

std::vector<CoinId> CoinSet::coins() const {
  std::vector<CoinId> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::string CoinSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (CoinId c : coins()) {
    if (!first) s += ',';
    s += std::to_string(c);
    first = false;
  }
  return s + "}";
}

FakeSet encode_subset(std::span<const CoinId> coins, int universe) {
  std::uint64_t bits = 0;
  for (CoinId c : coins) {
    if (c < 1 || c > universe || c > kMaxUniverse)
      throw std::invalid_argument("coin id " + std::to_string(c) + " outside 1.." +
                                  std::to_string(universe));
    bits |= std::uint64_t{1} << (c - 1);
  }
  return FakeSet(bits);
}

std::vector<CoinId> decode_subset(FakeSet x) { return x.coins(); }

}  // namespace weighwright
