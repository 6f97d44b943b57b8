#include <doctest.h>

#include <stdexcept>

#include "haargreedy/rational.hpp"

using namespace haargreedy;

TEST_SUITE("rational") {

TEST_CASE("parsing accepts p/q and plain integers, reduced") {
    CHECK(rational_from_string("3/4") == Rational(3, 4));
    CHECK(rational_from_string("-6/8") == Rational(-3, 4));
    CHECK(rational_from_string("2/4") == Rational(1, 2));
    CHECK(rational_from_string("7") == 7);
    CHECK(rational_from_string(" -12 ") == -12);
    CHECK(rational_from_string("+5/10") == Rational(1, 2));
    CHECK(rational_from_string("0/9") == 0);
}

TEST_CASE("parsing rejects malformed input") {
    CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("abc"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("1/"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("/2"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("0x10"), std::invalid_argument);
}

TEST_CASE("fraction_string always carries the denominator") {
    CHECK(fraction_string(Rational(0)) == "0/1");
    CHECK(fraction_string(Rational(3)) == "3/1");
    CHECK(fraction_string(Rational(-3, 4)) == "-3/4");
    CHECK(fraction_string(rational_from_string("102960/32768")) == "6435/2048");
}

TEST_CASE("decimal_string is deterministic scientific notation") {
    CHECK(decimal_string(Rational(0)) == "0.0000000000000000e+00");
    CHECK(decimal_string(Rational(1)) == "1.0000000000000000e+00");
    CHECK(decimal_string(Rational(1, 3)) == "3.3333333333333333e-01");
    CHECK(decimal_string(Rational(2, 3)) == "6.6666666666666667e-01");
    CHECK(decimal_string(Rational(-1, 1024)) == "-9.7656250000000000e-04");
    CHECK(decimal_string(rational_from_string("102960/32768")) ==
          "3.1420898437500000e+00");
    CHECK(decimal_string(Rational(1000)) == "1.0000000000000000e+03");
    CHECK(decimal_string(Rational(1, 2), 3) == "5.00e-01");
}

TEST_CASE("decimal_string carries rounding across the leading digit") {
    Rational almost_one =
        rational_from_string("99999999999999999999/100000000000000000000");
    CHECK(decimal_string(almost_one) == "1.0000000000000000e+00");
    CHECK(decimal_string(Rational(999999, 1000000), 3) == "1.00e+00");
}

TEST_CASE("pow2 covers both signs") {
    CHECK(pow2(0) == 1);
    CHECK(pow2(10) == 1024);
    CHECK(pow2(-3) == Rational(1, 8));
    CHECK(pow2(-128) * pow2(128) == 1);
}

TEST_CASE("rational_abs") {
    CHECK(rational_abs(Rational(-5, 3)) == Rational(5, 3));
    CHECK(rational_abs(Rational(5, 3)) == Rational(5, 3));
    CHECK(rational_abs(Rational(0)) == 0);
}

}  // TEST_SUITE
