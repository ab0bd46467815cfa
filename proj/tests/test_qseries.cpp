#include "doctest.h"

#include "tauforge/series.hpp"

using namespace tauforge;

namespace {
WeightedSeries<Rat> q(int n, int order) { return WeightedSeries<Rat>::variable(n, order); }
} // namespace

TEST_CASE("weighted truncation drops heavy terms eagerly") {
    auto f = q(1, 3) * q(1, 3) * q(1, 3); // q1^3, weight 3, still inside
    CHECK(f.coeff(Mono{3}) == Rat(1));
    auto g = f * q(1, 3); // weight 4 falls off the order-3 window
    CHECK(g.is_zero());

    CHECK_THROWS_AS(q(1, 3) * q(1, 4), std::invalid_argument); // mismatched orders
    CHECK_THROWS_AS(q(1, 3).truncated(5), std::invalid_argument); // raising invents data
    CHECK(q(1, 3).truncated(1).order() == 1);

    // resizing upward is the explicit opt-in for the same-information case
    auto lifted = detail::resized(q(1, 3), 5);
    CHECK(lifted.order() == 5);
    CHECK(lifted.coeff(Mono{1}) == Rat(1));
}

TEST_CASE("complete homogeneous pieces of exp(sum q_n z^n)") {
    // h_2 = q_2 + q_1^2/2, h_3 = q_3 + q_1 q_2 + q_1^3/6
    auto h2 = h_poly<Rat>(2, 6);
    CHECK(h2.coeff(Mono{0, 1}) == Rat(1));
    CHECK(h2.coeff(Mono{2}) == Rat(1, 2));
    auto h3 = h_poly<Rat>(3, 6);
    CHECK(h3.coeff(Mono{0, 0, 1}) == Rat(1));
    CHECK(h3.coeff(Mono{1, 1}) == Rat(1));
    CHECK(h3.coeff(Mono{3}) == Rat(1, 6));
    CHECK(h_poly<Rat>(0, 6).constant_term() == Rat(1));
}

TEST_CASE("exp and log are mutually inverse") {
    auto f = q(1, 5) + q(2, 5);
    auto e = series_exp(f);
    CHECK(e.constant_term() == Rat(1));
    CHECK(series_log(e) == f);
    CHECK_THROWS_AS(series_exp(WeightedSeries<Rat>::one(5)), std::invalid_argument);
}

TEST_CASE("partial derivative satisfies the product rule") {
    // d/dq_n loses n units of validity, so the order of the result shrinks
    auto f = q(1, 5) * q(1, 5) + q(2, 5);
    auto g = q(1, 5) * q(2, 5);
    auto lhs = partial(f * g, 1);
    auto rhs = partial(f, 1) * g.truncated(4) + f.truncated(4) * partial(g, 1);
    CHECK(lhs == rhs);
    CHECK(lhs.order() == 4);
    CHECK(partial(q(2, 5), 1).is_zero());
    // d/dq1 of q1^3 is 3 q1^2
    auto cube = q(1, 5) * q(1, 5) * q(1, 5);
    CHECK(partial(cube, 1).coeff(Mono{2}) == Rat(3));
    // d/dq2 of q2^2 is 2 q2, valid to weight 3
    auto sq = q(2, 5) * q(2, 5);
    CHECK(partial(sq, 2).coeff(Mono{0, 1}) == Rat(2));
    CHECK(partial(sq, 2).order() == 3);
}

TEST_CASE("series inverse against the geometric series") {
    auto f = WeightedSeries<Rat>::one(4) - q(1, 4);
    auto g = series_inverse(f);
    CHECK((f * g) == WeightedSeries<Rat>::one(4));
    CHECK(g.coeff(Mono{3}) == Rat(1)); // 1/(1-q1) = sum q1^k
    CHECK_THROWS_AS(series_inverse(q(1, 4)), std::domain_error);
}

TEST_CASE("sign involution multiplies by parity of total degree") {
    auto f = q(1, 4) * q(2, 4) + q(3, 4); // one even monomial, one odd
    auto g = f.negated_vars();
    CHECK(g.coeff(Mono{1, 1}) == Rat(1));
    CHECK(g.coeff(Mono{0, 0, 1}) == Rat(-1));
    CHECK(g.negated_vars() == f);
}

TEST_CASE("laurent coefficients share one truncation order") {
    ZSeries<Rat> z{4, {}};
    z.add(1, q(1, 4));
    z.add(-2, q(2, 4));
    z.add(1, WeightedSeries<Rat>(4) - q(1, 4));
    CHECK(z.at(1).is_zero());
    CHECK(z.at(-2).coeff(Mono{0, 1}) == Rat(1));
    CHECK(z.at(7).is_zero());
}
