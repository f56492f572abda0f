#include <gmpxx.h>

#include <stdexcept>

#include "doctest.h"
#include "modwalk/dyadic.hpp"
#include "modwalk/rational.hpp"

using namespace modwalk;

TEST_CASE("extended rationals canonicalize") {
  ExtendedRational a(mpz_class(4), mpz_class(-6));
  CHECK(a.num() == -2);
  CHECK(a.den() == 3);
  CHECK(a.str() == "-2/3");
  CHECK(ExtendedRational(0, 5) == ExtendedRational(0));
  CHECK(ExtendedRational(7, 0) == ExtendedRational::infinity());
  CHECK(ExtendedRational(-7, 0) == ExtendedRational::infinity());
  CHECK_THROWS_AS(ExtendedRational(0, 0), std::invalid_argument);
}

TEST_CASE("extended rational parsing and printing") {
  CHECK(ExtendedRational::parse("2/3").str() == "2/3");
  CHECK(ExtendedRational::parse("-5").str() == "-5");
  CHECK(ExtendedRational::parse("inf").is_infinity());
  CHECK(ExtendedRational::parse("-inf").is_infinity());
  CHECK(ExtendedRational::parse("6/4") == ExtendedRational(3, 2));
  CHECK(ExtendedRational::parse("3/0").is_infinity());
  CHECK_THROWS_AS(ExtendedRational::parse("0/0"), std::invalid_argument);
  CHECK_THROWS_AS(ExtendedRational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(ExtendedRational::parse(""), std::invalid_argument);
  CHECK(ExtendedRational::infinity().str() == "inf");
}

TEST_CASE("extended rational ordering puts infinity last") {
  ExtendedRational inf = ExtendedRational::infinity();
  CHECK(ExtendedRational(1, 2) < ExtendedRational(2, 3));
  CHECK(ExtendedRational(-3) < ExtendedRational(0));
  CHECK(ExtendedRational(1000000) < inf);
  CHECK(inf == inf);
  CHECK(!(inf < inf));
}

TEST_CASE("extended rational involutions") {
  ExtendedRational x(3, 4);
  CHECK(x.negated() == ExtendedRational(-3, 4));
  CHECK(x.reciprocal() == ExtendedRational(4, 3));
  CHECK(ExtendedRational(0).reciprocal().is_infinity());
  CHECK(ExtendedRational::infinity().reciprocal() == ExtendedRational(0));
  CHECK(ExtendedRational::infinity().negated().is_infinity());
  CHECK(ExtendedRational(-5, 2).abs() == ExtendedRational(5, 2));
}

TEST_CASE("rational helpers reject junk") {
  CHECK(parse_rational("10/15") == mpq_class(2, 3));
  CHECK(rational_str(mpq_class(2, 3)) == "2/3");
  CHECK(rational_str(mpq_class(-4)) == "-4");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("dyadic rationals stay reduced") {
  DyadicRational d(mpz_class(6), 3);
  CHECK(d.num() == 3);
  CHECK(d.exp() == 2);
  CHECK(DyadicRational(mpz_class(0), 7) == DyadicRational::zero());
  CHECK(DyadicRational::half().doubled() == DyadicRational::one());
  CHECK(DyadicRational::one().halved() == DyadicRational::half());
}

TEST_CASE("dyadic arithmetic and ordering") {
  DyadicRational a(mpz_class(3), 3);  // 3/8
  DyadicRational b(mpz_class(1), 2);  // 1/4
  CHECK(a + b == DyadicRational(mpz_class(5), 3));
  CHECK(a - b == DyadicRational(mpz_class(1), 3));
  CHECK(b < a);
  CHECK(a.negated() < b);
  CHECK(a.to_mpq() == mpq_class(3, 8));
  CHECK(a.to_double() == 0.375);
}

TEST_CASE("dyadic printing") {
  DyadicRational a(mpz_class(7), 4);
  CHECK(a.power_str() == "7/2^4");
  CHECK(a.fraction_str() == "7/16");
  CHECK(DyadicRational::zero().fraction_str() == "0");
  CHECK(DyadicRational::one().fraction_str() == "1");
  CHECK(DyadicRational(mpz_class(5), 0).fraction_str() == "5");
}

TEST_CASE("dyadic from_mpq accepts only dyadic denominators") {
  CHECK(DyadicRational::from_mpq(mpq_class(3, 8)) == DyadicRational(mpz_class(3), 3));
  CHECK(DyadicRational::from_mpq(mpq_class(5)) == DyadicRational(mpz_class(5), 0));
  CHECK_THROWS_AS(DyadicRational::from_mpq(mpq_class(1, 3)), std::domain_error);
  CHECK_THROWS_AS(DyadicRational::from_mpq(mpq_class(1, 6)), std::domain_error);
}
