#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weighwright/coins.hpp"

namespace weighwright {

// Digit encoding used by every file format: 0 "=", 1 "<" (left lighter),
// 2 ">" (left heavier).
enum class Outcome : std::uint8_t { Balance = 0, LeftLighter = 1, LeftHeavier = 2 };

inline constexpr std::array<Outcome, 3> kOutcomes{Outcome::Balance, Outcome::LeftLighter,
                                                  Outcome::LeftHeavier};

constexpr int digit(Outcome o) { return static_cast<int>(o); }
// Throws std::invalid_argument unless d is 0, 1 or 2.
Outcome outcome_from_digit(int d);
char symbol(Outcome o);
// Accepts "<", "=", ">".
std::optional<Outcome> parse_symbol(std::string_view s);
constexpr Outcome mirror(Outcome o) {
  return o == Outcome::Balance ? o
         : o == Outcome::LeftLighter ? Outcome::LeftHeavier
                                     : Outcome::LeftLighter;
}

// Outcome history from the root; first element is the first weighing.
using Path = std::vector<Outcome>;

std::string path_to_string(const Path& p);  // "(2,2,0)"
std::vector<int> path_digits(const Path& p);
Path path_from_digits(const std::vector<int>& digits);

struct Pan {
  CoinSet coins;
  int refs = 0;  // known-normal reference coins

  int size() const { return coins.size() + refs; }
  std::string to_string() const;  // "{1,2,ref}"
  friend bool operator==(const Pan&, const Pan&) = default;
};

// Two pans of equal total cardinality with disjoint coins. The empty weighing
// is the no-op placeholder; it always balances and is not counted.
class Weighing {
 public:
  Weighing() = default;
  // Throws UnbalancedPans when the pans differ in size or share a coin,
  // std::invalid_argument for negative reference counts.
  Weighing(Pan left, Pan right);

  static Weighing noop() { return {}; }

  const Pan& left() const { return left_; }
  const Pan& right() const { return right_; }
  bool is_noop() const { return left_.size() == 0; }
  int pan_size() const { return left_.size(); }
  int refs() const { return left_.refs + right_.refs; }
  CoinSet coins() const { return left_.coins | right_.coins; }
  Weighing mirrored() const;

  std::string to_string() const;  // "{1,2,3}:{4,5,6}"
  friend bool operator==(const Weighing&, const Weighing&) = default;

 private:
  Pan left_;
  Pan right_;
};

// Compares heavy counts on the two pans; reference coins are normal.
inline Outcome weigh(FakeSet s, const Weighing& w) {
  const int l = (s & w.left().coins).size();
  const int r = (s & w.right().coins).size();
  return l > r ? Outcome::LeftHeavier : l < r ? Outcome::LeftLighter : Outcome::Balance;
}

// Parses "{1,2}:{3,ref}" (also "{1}:{e}" and "{}:{}"). Throws std::invalid_argument
// on syntax errors and UnbalancedPans on invariant violations.
Weighing parse_weighing(std::string_view text);

}  // namespace weighwright
