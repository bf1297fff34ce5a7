#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace weighwright {

struct BoundsRow {
  std::int64_t n;
  std::int64_t lower_g;     // least k with 3^k >= 2^n
  std::int64_t lower_gbar;  // least k with 3^k >= 2^n - 1
  std::int64_t upper;       // ceil(7n/11)
  friend bool operator==(const BoundsRow&, const BoundsRow&) = default;
};

// Exact integer arithmetic throughout; n >= 1, otherwise std::invalid_argument.
std::int64_t lower_g(std::int64_t n);
std::int64_t lower_gbar(std::int64_t n);
std::int64_t upper(std::int64_t n);
BoundsRow bounds_row(std::int64_t n);
std::vector<BoundsRow> bounds_table(std::int64_t from, std::int64_t to);

std::string bounds_tsv(const std::vector<BoundsRow>& rows);   // "n  lower_g  lower_gbar  upper" rows
std::string bounds_json(const std::vector<BoundsRow>& rows);

}  // namespace weighwright
