#pragma once

#include <optional>
#include <string>
#include <type_traits>

#include "tauforge/param_poly.hpp"
#include "tauforge/rational.hpp"

namespace tauforge {

/// Coefficient-ring contract shared by every templated module. A scalar must
/// be an exact commutative ring with a canonical embedding of Rat. Division
/// is only ever required by a rational or by a unit that the caller has
/// already certified (series with constant term 1, pivots of a Rat matrix).
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rat> {
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static Rat from_rat(const Rat& r) { return r; }
    static bool is_zero(const Rat& s) { return s.is_zero(); }
    static Rat mul_rat(const Rat& s, const Rat& r) { return s * r; }
    static Rat div_rat(const Rat& s, const Rat& r) { return s / r; }
    static std::optional<Rat> try_invert(const Rat& s) {
        if (s.is_zero()) return std::nullopt;
        return s.inverse();
    }
    static std::string str(const Rat& s) { return s.str(); }
};

template <>
struct ScalarOps<ParamPoly> {
    static ParamPoly zero() { return ParamPoly(); }
    static ParamPoly one() { return ParamPoly(Rat(1)); }
    static ParamPoly from_rat(const Rat& r) { return ParamPoly(r); }
    static bool is_zero(const ParamPoly& s) { return s.is_zero(); }
    static ParamPoly mul_rat(const ParamPoly& s, const Rat& r) {
        return s * ParamPoly(r);
    }
    static ParamPoly div_rat(const ParamPoly& s, const Rat& r) {
        ParamPoly t(s);
        t.div_rat(r);
        return t;
    }
    static std::optional<ParamPoly> try_invert(const ParamPoly& s) {
        if (!s.is_constant() || s.is_zero()) return std::nullopt;
        return ParamPoly(s.coeff(0).inverse());
    }
    static std::string str(const ParamPoly& s) { return s.str(); }
};

template <class S>
concept CoeffRing = requires(S a, S b, Rat r) {
    { ScalarOps<S>::zero() } -> std::same_as<S>;
    { ScalarOps<S>::one() } -> std::same_as<S>;
    { ScalarOps<S>::from_rat(r) } -> std::same_as<S>;
    { ScalarOps<S>::is_zero(a) } -> std::same_as<bool>;
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { -a } -> std::convertible_to<S>;
    { a == b } -> std::convertible_to<bool>;
};

} // namespace tauforge
