#include "weighwright/weighing.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

#include "weighwright/errors.hpp"

namespace weighwright {

Outcome outcome_from_digit(int d) {
  if (d < 0 || d > 2) throw std::invalid_argument("outcome digit must be 0, 1 or 2");
  return static_cast<Outcome>(d);
}

char symbol(Outcome o) {
  switch (o) {
    case Outcome::Balance: return '=';
    case Outcome::LeftLighter: return '<';
    case Outcome::LeftHeavier: return '>';
  }
  return '?';
}

std::optional<Outcome> parse_symbol(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s == "=") return Outcome::Balance;
  if (s == "<") return Outcome::LeftLighter;
  if (s == ">") return Outcome::LeftHeavier;
  return std::nullopt;
}

std::string path_to_string(const Path& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += static_cast<char>('0' + digit(p[i]));
  }
  return s + ")";
}

std::vector<int> path_digits(const Path& p) {
  std::vector<int> d;
  d.reserve(p.size());
  for (Outcome o : p) d.push_back(digit(o));
  return d;
}

Path path_from_digits(const std::vector<int>& digits) {
  Path p;
  p.reserve(digits.size());
  for (int d : digits) p.push_back(outcome_from_digit(d));
  return p;
}

std::string Pan::to_string() const {
  std::string s = "{";
  bool first = true;
  for (CoinId c : coins.coins()) {
    if (!first) s += ',';
    s += std::to_string(c);
    first = false;
  }
  for (int i = 0; i < refs; ++i) {
    if (!first) s += ',';
    s += "ref";
    first = false;
  }
  return s + "}";
}

Weighing::Weighing(Pan left, Pan right) : left_(left), right_(right) {
  if (left_.refs < 0 || right_.refs < 0)
    throw std::invalid_argument("reference count must be non-negative");
  if (!(left_.coins & right_.coins).empty())
    throw UnbalancedPans("coin on both pans: " + to_string());
  if (left_.size() != right_.size())
    throw UnbalancedPans("pans of different size: " + to_string());
  // A weighing of references only carries no information; keep the canonical no-op.
  if (left_.coins.empty() && right_.coins.empty()) left_ = right_ = Pan{};
}

Weighing Weighing::mirrored() const {
  Weighing w;
  w.left_ = right_;
  w.right_ = left_;
  return w;
}

std::string Weighing::to_string() const { return left_.to_string() + ":" + right_.to_string(); }

namespace {

Pan parse_pan(std::string_view& s) {
  auto skip = [&] {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  };
  skip();
  if (s.empty() || s.front() != '{') throw std::invalid_argument("expected '{'");
  s.remove_prefix(1);
  Pan pan;
  skip();
  if (!s.empty() && s.front() == '}') {
    s.remove_prefix(1);
    return pan;
  }
  for (;;) {
    skip();
    if (s.substr(0, 3) == "ref") {
      s.remove_prefix(3);
      ++pan.refs;
    } else if (!s.empty() && s.front() == 'e') {
      s.remove_prefix(1);
      ++pan.refs;
    } else {
      int c = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), c);
      if (ec != std::errc{} || c < 1 || c > kMaxUniverse)
        throw std::invalid_argument("expected coin id");
      if (pan.coins.contains(c)) throw std::invalid_argument("duplicate coin in pan");
      pan.coins = pan.coins.with(c);
      s.remove_prefix(static_cast<std::size_t>(p - s.data()));
    }
    skip();
    if (s.empty()) throw std::invalid_argument("unterminated pan");
    if (s.front() == '}') {
      s.remove_prefix(1);
      return pan;
    }
    if (s.front() != ',') throw std::invalid_argument("expected ',' or '}'");
    s.remove_prefix(1);
  }
}

}  // namespace

Weighing parse_weighing(std::string_view text) {
  Pan left = parse_pan(text);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  if (text.empty() || text.front() != ':') throw std::invalid_argument("expected ':' between pans");
  text.remove_prefix(1);
  Pan right = parse_pan(text);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  if (!text.empty()) throw std::invalid_argument("trailing characters after weighing");
  return Weighing(left, right);
}

}  // namespace weighwright
