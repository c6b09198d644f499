#include "doctest.h"

#include "tsmr/rational.hpp"

using namespace tsmr;

TEST_CASE("rational arithmetic is exact and normalized") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-3, -6) == Rat(1, 2));
    CHECK(Rat(3, -6) == Rat(-1, 2));
    CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
    CHECK(Rat(1, 2) - Rat(1, 3) == Rat(1, 6));
    CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
    CHECK(Rat(2, 3) / Rat(4, 9) == Rat(3, 2));
    CHECK(Rat(7, 3).inv() == Rat(3, 7));
    CHECK(Rat(5, 3) > Rat(3, 2));
    CHECK(Rat(-1, 2) < Rat(0));
    CHECK(Rat(10, 7).str() == "10/7");
    CHECK(Rat(4, 2).str() == "2");
}

TEST_CASE("rational error paths") {
    CHECK_THROWS_AS(Rat(1, 0), NumericError);
    CHECK_THROWS_AS(Rat(1) / Rat(0), NumericError);
    CHECK_THROWS_AS(Rat(0).inv(), NumericError);
    // Overflow is detected, not wrapped.
    const Rat big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * big, NumericError);
}

TEST_CASE("rational parsing") {
    CHECK(Rat::parse("10/7") == Rat(10, 7));
    CHECK(Rat::parse("-3") == Rat(-3));
    CHECK(Rat::parse("-0.5") == Rat(-1, 2));
    CHECK(Rat::parse("0.125") == Rat(1, 8));
    CHECK_THROWS_AS(Rat::parse(""), ParameterError);
}

TEST_CASE("extended rationals and conjugates") {
    const ExtRat inf = ExtRat::infinity();
    CHECK(inf.is_inf());
    CHECK(ExtRat(Rat(1)).conjugate() == inf);
    CHECK(inf.conjugate() == ExtRat(Rat(1)));
    CHECK(ExtRat(Rat(10, 7)).conjugate() == ExtRat(Rat(10, 3)));
    CHECK(ExtRat(Rat(2)).conjugate() == ExtRat(Rat(2)));
    CHECK(inf.reciprocal() == Rat(0));
    CHECK(ExtRat(Rat(2)) < inf);
    CHECK(max(ExtRat(Rat(3)), inf) == inf);
    CHECK(ExtRat::parse("inf").is_inf());
    CHECK(ExtRat::parse("6/5") == ExtRat(Rat(6, 5)));
    CHECK_THROWS_AS(inf.rat(), NumericError);
}
