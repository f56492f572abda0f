#include <gmpxx.h>

#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "modwalk/cfrac.hpp"
#include "modwalk/rational.hpp"

using namespace modwalk;

namespace {

ContinuedFraction cf(long head, std::vector<std::uint64_t> tail) {
  return ContinuedFraction(mpz_class(head), std::move(tail));
}

}  // namespace

TEST_CASE("expansion of small fractions") {
  CHECK(expand(ExtendedRational(1, 2)) == cf(0, {2}));
  CHECK(expand(ExtendedRational(2, 5)) == cf(0, {2, 2}));
  CHECK(expand(ExtendedRational(10, 7)) == cf(1, {2, 3}));
  CHECK(expand(ExtendedRational(3, 7)) == cf(0, {2, 3}));
  CHECK(expand(ExtendedRational(1)) == cf(0, {1}));
  CHECK(expand(ExtendedRational(5)) == cf(5, {}));
}

TEST_CASE("expansion rejects nonpositive and infinite input") {
  CHECK_THROWS_AS(expand(ExtendedRational(0)), std::domain_error);
  CHECK_THROWS_AS(expand(ExtendedRational(-1, 3)), std::domain_error);
  CHECK_THROWS_AS(expand(ExtendedRational::infinity()), std::domain_error);
}

TEST_CASE("expansion is canonical: trailing quotient at least 2") {
  for (long q = 1; q <= 60; ++q) {
    for (long p = 1; p <= 2 * q; ++p) {
      ContinuedFraction e = expand(ExtendedRational(p, q));
      for (std::uint64_t k : e.tail) CHECK(k >= 1);
      if (e.tail.size() >= 2) CHECK(e.tail.back() >= 2);
    }
  }
}

TEST_CASE("expand and evaluate round trip") {
  for (long q = 1; q <= 150; ++q) {
    for (long p = 1; p <= 3 * q; ++p) {
      ExtendedRational x(p, q);
      CHECK(evaluate(expand(x)) == x);
    }
  }
}

TEST_CASE("evaluation with and without a tail seed") {
  CHECK(evaluate(cf(0, {2})) == ExtendedRational(1, 2));
  CHECK(evaluate(cf(0, {1, 1})) == ExtendedRational(1, 2));
  CHECK(evaluate(cf(0, {1, 1, 1, 1, 1, 1})) == ExtendedRational(8, 13));
  CHECK(evaluate(cf(1, {2, 3})) == ExtendedRational(10, 7));
  CHECK(evaluate(cf(0, {2}), ExtendedRational(1, 2)) == ExtendedRational(2, 5));
  CHECK(evaluate(cf(0, {2, 3}), ExtendedRational(1)) == ExtendedRational(4, 9));
  CHECK(evaluate(cf(3, {})) == ExtendedRational(3));
  CHECK_THROWS_AS(evaluate(cf(0, {2}), ExtendedRational(-1, 2)), std::domain_error);
}

TEST_CASE("single-step tail map") {
  CHECK(apply_A(1, mpq_class(0)) == mpq_class(1));
  CHECK(apply_A(2, mpq_class(1, 2)) == mpq_class(2, 5));
  CHECK(apply_A(3, mpq_class(1)) == mpq_class(1, 4));
}

TEST_CASE("convergent sequences") {
  auto c1 = convergents(cf(0, {2, 2}));
  REQUIRE(c1.size() == 2);
  CHECK(c1[0] == ExtendedRational(1, 2));
  CHECK(c1[1] == ExtendedRational(2, 5));

  auto c2 = convergents(cf(1, {2, 3}));
  REQUIRE(c2.size() == 3);
  CHECK(c2[0] == ExtendedRational(1));
  CHECK(c2[1] == ExtendedRational(3, 2));
  CHECK(c2[2] == ExtendedRational(10, 7));

  auto c3 = convergents(cf(0, {2}));
  REQUIRE(c3.size() == 1);
  CHECK(c3[0] == ExtendedRational(1, 2));
}

TEST_CASE("convergents alternate around the value") {
  // Odd tail depths approach from above (decreasing), even tail depths from
  // below (increasing); the last convergent is the value itself.
  std::vector<ExtendedRational> values = {ExtendedRational(8, 13), ExtendedRational(43, 30),
                                          ExtendedRational(103, 71), ExtendedRational(13, 29),
                                          ExtendedRational(97, 61)};
  for (const auto& x : values) {
    ContinuedFraction e = expand(x);
    REQUIRE(e.depth() >= 3);
    auto conv = convergents(e);
    CHECK(conv.back() == x);
    std::size_t head_offset = e.head == 0 ? 0 : 1;
    ExtendedRational last_above = ExtendedRational::infinity();
    ExtendedRational last_below(-1000000000L);
    for (std::size_t idx = 0; idx + 1 < conv.size(); ++idx) {
      // Tail depth of conv[idx]: idx when a head convergent is present,
      // idx + 1 otherwise.
      std::size_t tail_depth = head_offset ? idx : idx + 1;
      if (tail_depth % 2 == 1) {
        CHECK(conv[idx] > x);
        CHECK(conv[idx] < last_above);
        last_above = conv[idx];
      } else {
        CHECK(conv[idx] < x);
        CHECK(conv[idx] > last_below);
        last_below = conv[idx];
      }
    }
  }
}

TEST_CASE("tent-map shift on expansions") {
  CHECK(shift_decrement(cf(0, {3, 2})) == cf(0, {2, 2}));
  CHECK(shift_decrement(cf(0, {1, 3})) == cf(0, {3}));
  CHECK(shift_decrement(cf(0, {2})) == cf(1, {}));
  CHECK_THROWS_AS(shift_decrement(cf(0, {1})), std::domain_error);
}

TEST_CASE("tent-map shift matches direct expansion off the midpoint") {
  // H_3(x) = min(x/(1-x), (1-x)/x) on (0,1) \ {1/2}.
  int checked = 0;
  for (long q = 3; q <= 60; ++q) {
    for (long p = 1; p < q; ++p) {
      ExtendedRational x(p, q);
      if (x == ExtendedRational(1, 2)) continue;
      mpq_class v = x.to_mpq();
      mpq_class lower = v / (1 - v);
      mpq_class upper = (1 - v) / v;
      mpq_class tent = lower < upper ? lower : upper;
      CHECK(shift_decrement(expand(x)) == expand(ExtendedRational(tent)));
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("reciprocal expansions") {
  CHECK(reciprocal_cf(cf(2, {})) == cf(0, {2}));
  CHECK(reciprocal_cf(cf(1, {2})) == cf(0, {1, 2}));
  CHECK(reciprocal_cf(cf(3, {1, 2})) == cf(0, {3, 1, 2}));
  CHECK_THROWS_AS(reciprocal_cf(cf(0, {2})), std::domain_error);
}

TEST_CASE("continued fraction text form") {
  CHECK(cf(0, {2, 3}).str() == "[0; 2, 3]");
  CHECK(cf(5, {}).str() == "[5]");
}

TEST_CASE("huge quotients overflow explicitly") {
  mpz_class big = mpz_class(1) << 70;
  CHECK_THROWS_AS(expand(ExtendedRational(mpz_class(1), big)), std::overflow_error);
}
