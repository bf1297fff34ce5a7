#include "weighwright/bounds.hpp"

#include <gmpxx.h>

#include <json.hpp>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace weighwright {

namespace {

// lo = 176251/111202 < log2(3) < hi = 301994/190537, both convergents; the
// inequalities are re-checked with exact powers before first use.
constexpr std::int64_t kLoP = 176251, kLoQ = 111202;
constexpr std::int64_t kHiP = 301994, kHiQ = 190537;

void check_bracket() {
  static std::once_flag once;
  std::call_once(once, [] {
    mpz_class a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), 3, kLoQ);
    mpz_ui_pow_ui(b.get_mpz_t(), 2, kLoP);
    const bool lo_ok = a > b;  // 3^q > 2^p  <=>  log2(3) > p/q
    mpz_ui_pow_ui(a.get_mpz_t(), 3, kHiQ);
    mpz_ui_pow_ui(b.get_mpz_t(), 2, kHiP);
    const bool hi_ok = a < b;
    if (!lo_ok || !hi_ok) throw std::logic_error("log2(3) bracket failed its exact check");
  });
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// 3^k >= 2^n, decided exactly.
bool pow3_at_least_pow2(std::int64_t k, std::int64_t n) {
  // Clear cases from the bracket: k*lo >= n proves it, k*hi < n refutes it.
  if (k * kLoP >= n * kLoQ) return true;
  if (k * kHiP < n * kHiQ) return false;
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 3, static_cast<unsigned long>(k));
  // 3^k is odd, so 3^k >= 2^n iff its bit length exceeds n (k >= 1).
  return static_cast<std::int64_t>(mpz_sizeinbase(p.get_mpz_t(), 2)) > n || (k == 0 && n == 0);
}

}  // namespace

std::int64_t lower_g(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (n > (std::int64_t{1} << 40)) throw std::invalid_argument("n too large");
  check_bracket();
  std::int64_t k = n * kHiQ / kHiP;  // at most n / log2(3)
  if (k < 1) k = 1;
  while (k > 1 && pow3_at_least_pow2(k - 1, n)) --k;
  while (!pow3_at_least_pow2(k, n)) ++k;
  return k;
}

std::int64_t lower_gbar(std::int64_t n) {
  const std::int64_t k = lower_g(n);
  // 3^(k-1) < 2^n; the two differ iff 3^(k-1) >= 2^n - 1, i.e. 3^(k-1) = 2^n - 1,
  // which only n = 1 (1 = 1) and n = 2 (3 = 3) satisfy: mod 8, 3^j is 1 or 3
  // while 2^n - 1 is 7 for n >= 3.
  if (n == 1 || n == 2) return k - 1;
  return k;
}

std::int64_t upper(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  return ceil_div(7 * n, 11);
}

BoundsRow bounds_row(std::int64_t n) { return {n, lower_g(n), lower_gbar(n), upper(n)}; }

std::vector<BoundsRow> bounds_table(std::int64_t from, std::int64_t to) {
  if (from < 1 || from > to) throw std::invalid_argument("need 1 <= from <= to");
  std::vector<BoundsRow> rows;
  rows.reserve(static_cast<std::size_t>(to - from + 1));
  for (std::int64_t n = from; n <= to; ++n) rows.push_back(bounds_row(n));
  return rows;
}

std::string bounds_tsv(const std::vector<BoundsRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) os << r.n << "  " << r.lower_g << "  " << r.lower_gbar << "  " << r.upper << '\n';
  return os.str();
}

std::string bounds_json(const std::vector<BoundsRow>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows)
    j.push_back({{"n", r.n}, {"lower_g", r.lower_g}, {"lower_gbar", r.lower_gbar}, {"upper", r.upper}});
  return j.dump();
}

}  // namespace weighwright
