#include "doctest.h"

#include "tauforge/models.hpp"

using namespace tauforge;

namespace {
const ParamPoly C = ParamPoly::var();
}

TEST_CASE("generalized bgw building blocks") {
    // a_k = ((-1)^k/k!) prod_{i=1}^{k-1}(C + i(i-1)/2) ... first values
    CHECK(bgw_a(0, C) == ParamPoly(1));
    CHECK(bgw_a(1, C) == -C);
    // theta_n = ((-1)^n/n!) prod_{i=0}^{n-1}(C + i(i+1)/2)
    CHECK(bgw_theta(0, C) == ParamPoly(1));
    CHECK(bgw_theta(1, C) == -C);
    CHECK(bgw_theta(2, C) == ParamPoly(std::vector<Rat>{Rat(0), Rat(1, 2), Rat(1, 2)}));

    CHECK(bgw_affine(0, 0, C) == C);
    CHECK(bgw_affine(0, 0, Rat(1, 8)) == Rat(1, 8));

    CHECK(bgw_g(0, C) == ParamPoly(1));
    CHECK(bgw_g(1, C) == C);
    CHECK(bgw_g(2, C) == ParamPoly(std::vector<Rat>{Rat(0), Rat(3, 2), Rat(1, 2)}));
    CHECK(bgw_g(2, Rat(1, 8)) == Rat(25, 128));
}

TEST_CASE("g sequence solves its first order recursion") {
    CHECK(ode_check(C, 10));
    CHECK(ode_check(Rat(1, 8), 12));
    CHECK(ode_check(Rat(-3), 12));
}

TEST_CASE("kontsevich-witten affine coordinates sit on three residue families") {
    CHECK(wk_affine(2, 0) == Rat(5, 24));
    CHECK(wk_affine(1, 1) == Rat(-7, 24));
    CHECK(wk_affine(0, 2) == Rat(5, 24)); // regression pin
    // support requires m + n = 2 mod 3
    CHECK(wk_affine(0, 0) == Rat(0));
    CHECK(wk_affine(1, 0) == Rat(0));
    CHECK(wk_affine(2, 2) == Rat(0));
    // g_n vanishes off multiples of three
    CHECK(wk_g(1) == Rat(0));
    CHECK(wk_g(2) == Rat(0));
    CHECK(wk_g(3) == Rat(41, 24));
}

TEST_CASE("string equations annihilate the tau functions") {
    auto tau1 = tau_from_affine(bgw_affine_matrix(C), 6);
    CHECK(string_check(tau1, StringVariant::eqstr1, C, 5).is_zero());

    auto taue = tau_E(bgw_affine_matrix(C), bgw_g_sequence(C, 6), 6, TauEMethod::determinant);
    CHECK(string_check(taue, StringVariant::eqstr2, C, 5).is_zero());

    auto wk1 = tau_from_affine(wk_affine_matrix(), 6);
    CHECK(string_check(wk1, StringVariant::wk_string, Rat(0), 5).is_zero());

    // the residual honestly reports a violation for wrong input
    auto off = tau1 + SchurVector<ParamPoly>::unit(Partition({2}), 6);
    CHECK_FALSE(string_check(off, StringVariant::eqstr1, C, 5).is_zero());

    CHECK_THROWS_AS(string_check(tau1, StringVariant::eqstr1, C, 6), std::invalid_argument);
}

TEST_CASE("wave function constraints at a rational parameter") {
    CHECK(virasoro_K_check(Rat(1, 8), 4, 4));
    CHECK(wave_restriction_check(Rat(1, 8), 3, 3));
    CHECK(line_initial_data_check(Rat(1, 8), 6));
    CHECK(line_initial_data_check(Rat(-3), 6));
}

TEST_CASE("even negative half-triangular parameters truncate the expansion") {
    auto rep = polynomiality(2, 10);
    CHECK(rep.parameter == Rat(-3));
    CHECK(rep.window_lo == 7);
    CHECK(rep.window_hi == 10);
    CHECK(rep.ok());
    CHECK_THROWS_AS(polynomiality(1, 8), std::invalid_argument);
}
