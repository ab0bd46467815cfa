#include "doctest.h"

#include "tauforge/param_poly.hpp"
#include "tauforge/rational.hpp"

using namespace tauforge;

TEST_CASE("rational arithmetic stays reduced") {
    Rat a(3, 6);
    CHECK(a == Rat(1, 2));
    CHECK(a.den() == 2);
    CHECK((Rat(2, 3) + Rat(1, 6)) == Rat(5, 6));
    CHECK((Rat(1, 2) * Rat(2, 3)) == Rat(1, 3));
    CHECK((Rat(1) / Rat(-4)) == Rat(-1, 4));
    CHECK((-Rat(5, 7)).sign() == -1);
    CHECK_THROWS_AS(Rat(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
}

TEST_CASE("rational parsing round-trips str") {
    CHECK(Rat::parse("-3") == Rat(-3));
    CHECK(Rat::parse("25/128") == Rat(25, 128));
    CHECK(Rat::parse(Rat(-7, 128).str()) == Rat(-7, 128));
    CHECK_THROWS_AS(Rat::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rat::parse("1/0"), std::invalid_argument);
}

TEST_CASE("combinatorial helpers") {
    CHECK(rat_factorial(5) == Rat(120));
    CHECK(rat_factorial(0) == Rat(1));
    CHECK(rat_double_factorial(7) == Rat(105));
    CHECK(rat_double_factorial(-1) == Rat(1));
    CHECK(rat_binomial(4, 2) == Rat(6));
    CHECK(rat_binomial(0, 0) == Rat(1));
    // negative upper index: C(-1,2) = (-1)(-2)/2
    CHECK(rat_binomial(-1, 2) == Rat(1));
    CHECK(rat_binomial(-2, 3) == Rat(-4));
    CHECK(rat_pow_long(3, 4) == Rat(81));
    CHECK(rat_pow_long(2, 0) == Rat(1));
}

TEST_CASE("parameter polynomials form a ring") {
    ParamPoly c = ParamPoly::var();
    ParamPoly p = (c + ParamPoly(3)) * c; // C^2 + 3C
    CHECK(p.degree() == 2);
    CHECK(p.coeff(0) == Rat(0));
    CHECK(p.coeff(1) == Rat(3));
    CHECK(p.coeff(2) == Rat(1));
    CHECK((p - p).is_zero());
    CHECK((p - p).degree() == -1);

    // cancellation must trim trailing zeros so equality is structural
    ParamPoly q = c * c;
    CHECK((p - q) == ParamPoly(3) * c);

    ParamPoly half = p;
    half.div_rat(Rat(2));
    CHECK(half.coeff(1) == Rat(3, 2));
}

TEST_CASE("parameter polynomial display") {
    ParamPoly c = ParamPoly::var();
    CHECK(ParamPoly(Rat(0)).str() == "0");
    CHECK(c.str() == "C");
    ParamPoly p = ParamPoly(Rat(3, 2)) * c + ParamPoly(Rat(1, 2)) * c * c;
    CHECK(p.str() == "3/2*C + 1/2*C^2");
    CHECK((ParamPoly(1) - c).str() == "1 - C");
}
