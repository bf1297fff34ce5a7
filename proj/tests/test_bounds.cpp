#include <doctest.h>

#include "oracles.hpp"
#include "weighwright/bounds.hpp"

using namespace weighwright;

TEST_CASE("bounds on documented values") {
  CHECK(lower_g(1) == 1);
  CHECK(lower_g(3) == 2);
  CHECK(lower_g(11) == 7);
  CHECK(lower_gbar(1) == 0);
  CHECK(lower_gbar(2) == 1);
  CHECK(lower_gbar(11) == 7);
  CHECK(upper(3) == 2);
  CHECK(upper(11) == 7);
  CHECK(upper(25) == 16);
  CHECK(bounds_row(19) == BoundsRow{19, 12, 12, 13});
}

TEST_CASE("bounds agree with big-integer powers") {
  for (std::int64_t n = 1; n <= 400; ++n) {
    CAPTURE(n);
    CHECK(lower_g(n) == oracle::lower_g(n));
    CHECK(lower_gbar(n) == oracle::lower_gbar(n));
    CHECK(upper(n) == oracle::upper(n));
  }
  for (const std::int64_t n : {1000, 1001, 4096, 9999}) {
    CAPTURE(n);
    CHECK(lower_g(n) == oracle::lower_g(n));
    CHECK(lower_gbar(n) == oracle::lower_gbar(n));
  }
}

TEST_CASE("the two lower bounds differ only for one and two coins") {
  for (std::int64_t n = 1; n <= 2000; ++n) CHECK((lower_g(n) - lower_gbar(n) == (n <= 2 ? 1 : 0)));
}

TEST_CASE("property: lower bounds never exceed the upper bound") {
  std::int64_t prev = 0;
  for (std::int64_t n = 1; n <= 1000000; ++n) {
    const auto lg = lower_g(n);
    if (lg > upper(n) || lower_gbar(n) > lg || lg < prev) {
      FAIL("sandwich broken at n = " << n);
    }
    prev = lg;
  }
}

TEST_CASE("tables print as text and JSON") {
  CHECK(bounds_tsv(bounds_table(11, 11)) == "11  7  7  7\n");
  CHECK(bounds_tsv(bounds_table(1, 1)) == "1  1  0  1\n");
  CHECK(bounds_tsv(bounds_table(19, 19)) == "19  12  12  13\n");
  const auto json = bounds_json(bounds_table(1, 2));
  CHECK(json.find("\"lower_gbar\"") != std::string::npos);
  CHECK(bounds_table(5, 9).size() == 5);
}
