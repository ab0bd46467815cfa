#pragma once

#include <stdexcept>
#include <vector>

#include "tauforge/param_poly.hpp"
#include "tauforge/rational.hpp"
#include "tauforge/satokit.hpp"
#include "tauforge/scalar.hpp"
#include "tauforge/schur.hpp"
#include "tauforge/series.hpp"

namespace tauforge {

// ---------------------------------------------------------------------------
// Generalized BGW family, parametric in C (exact rational or symbolic).

/// a_k = ((-1)^k / k!) prod_{i=1}^k (C + i(i-1)/2); a_0 = 1.
template <CoeffRing S>
S bgw_a(int k, const S& c) {
    if (k < 0) throw std::invalid_argument("bgw_a: negative index");
    S prod = ScalarOps<S>::one();
    for (int i = 1; i <= k; ++i)
        prod = prod * (c + ScalarOps<S>::from_rat(Rat(static_cast<long>(i) * (i - 1), 2)));
    Rat scale = Rat(k % 2 == 0 ? 1 : -1) / rat_factorial(k);
    return ScalarOps<S>::mul_rat(prod, scale);
}

/// theta_n = ((-1)^n / n!) prod_{i=0}^{n-1} (C + i(i+1)/2); theta_0 = 1.
template <CoeffRing S>
S bgw_theta(int n, const S& c) {
    if (n < 0) throw std::invalid_argument("bgw_theta: negative index");
    S prod = ScalarOps<S>::one();
    for (int i = 0; i < n; ++i)
        prod = prod * (c + ScalarOps<S>::from_rat(Rat(static_cast<long>(i) * (i + 1), 2)));
    Rat scale = Rat(n % 2 == 0 ? 1 : -1) / rat_factorial(n);
    return ScalarOps<S>::mul_rat(prod, scale);
}

/// Affine coordinates of the tau function normalized by the scaling
/// constraint (see string_check, eqstr1). The overall sign is calibrated so
/// that A_{0,0} = C, which that constraint forces on the s_(1) coefficient.
template <CoeffRing S>
S bgw_affine(int m, int n, const S& c) {
    if (m < 0 || n < 0) throw std::invalid_argument("bgw_affine: negative index");
    S acc = ScalarOps<S>::zero();
    for (int r = m + 1; r <= m + n + 1; ++r) {
        int s = m + n + 1 - r;
        Rat weight(r - s, r + s);
        acc = acc + ScalarOps<S>::mul_rat(bgw_a(r, c) * bgw_a(s, c), weight);
    }
    return (m % 2 == 0) ? ScalarOps<S>::zero() - acc : acc;
}

/// g_0 = 1; g_n = (n-1)! sum_{k=1}^n prod_{i=1}^k (C + i(i-1)/2) / (k!(k-1)!).
template <CoeffRing S>
S bgw_g(int n, const S& c) {
    if (n < 0) throw std::invalid_argument("bgw_g: negative index");
    if (n == 0) return ScalarOps<S>::one();
    S acc = ScalarOps<S>::zero();
    S prod = ScalarOps<S>::one();
    for (int k = 1; k <= n; ++k) {
        prod = prod * (c + ScalarOps<S>::from_rat(Rat(static_cast<long>(k) * (k - 1), 2)));
        acc = acc + ScalarOps<S>::mul_rat(prod, Rat(1) / (rat_factorial(k) * rat_factorial(k - 1)));
    }
    return ScalarOps<S>::mul_rat(acc, rat_factorial(n - 1));
}

template <CoeffRing S>
AffineMatrix<S> bgw_affine_matrix(const S& c) {
    return AffineMatrix<S>([c](int m, int n) { return bgw_affine(m, n, c); });
}

template <CoeffRing S>
GSequence<S> bgw_g_sequence(const S& c, int N) {
    std::vector<S> g;
    g.reserve(N + 1);
    for (int n = 0; n <= N; ++n) g.push_back(bgw_g(n, c));
    return GSequence<S>::from_g(std::move(g));
}

/// Coefficientwise form of g'(z) + g(z) = theta(-z):
/// g_n - (n-1) g_{n-1} = (-1)^n theta_n for all n <= N.
template <CoeffRing S>
bool ode_check(const S& c, int N) {
    for (int n = 0; n <= N; ++n) {
        S lhs = bgw_g(n, c);
        if (n >= 1) lhs = lhs - ScalarOps<S>::mul_rat(bgw_g(n - 1, c), Rat(n - 1));
        S rhs = bgw_theta(n, c);
        if (n % 2 != 0) rhs = ScalarOps<S>::zero() - rhs;
        if (!ScalarOps<S>::is_zero(lhs - rhs)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Topological (intersection-theoretic) family; everything is rational.

namespace detail {

/// The Gamma-quotient sum entering the affine coordinates; all arguments stay
/// integral, so the quotient is a falling factorial.
inline Rat wk_b_sum(int n, int m) {
    Rat acc(0);
    for (int j = 1; j <= n; ++j) {
        Rat falling(1);
        for (int t = m + n + 2 - j; t <= m + n; ++t) falling *= Rat(t);
        Rat term = rat_pow_long(108, j) * rat_pow_long(2, n - j) *
                   rat_double_factorial(6 * (n - j) + 1) / rat_factorial(2 * (n - j)) * falling;
        acc += term;
    }
    return acc / Rat(6);
}

/// Shared prefactor of both index families (without the sign).
inline Rat wk_prefactor(int m, int n) {
    Rat r = rat_double_factorial(6 * m + 1) / rat_factorial(2 * m + 2 * n);
    for (int j = 0; j < n; ++j) r *= Rat(m + j);
    for (int j = 1; j <= n; ++j) r *= Rat(2 * m + 2 * j - 1);
    return r / rat_pow_long(36, m + n);
}

inline Rat wk_family(int m, int n, bool middle) {
    // bracket = B(n,m) + 2^n (6n+1)!! / ((6m +- 1)(2n)!)
    Rat bracket = wk_b_sum(n, m) + rat_pow_long(2, n) * rat_double_factorial(6 * n + 1) /
                                       (Rat(6 * m + (middle ? -1 : 1)) * rat_factorial(2 * n));
    Rat v = wk_prefactor(m, n) * bracket;
    bool negative = middle ? (n % 2 == 0) : (n % 2 != 0);
    return negative ? -v : v;
}

} // namespace detail

/// Affine coordinates of the topological tau function. Nonzero only on the
/// three index families with k + l = 2 mod 3; entries outside them are 0.
inline Rat wk_affine(int k, int l) {
    if (k < 0 || l < 0) throw std::invalid_argument("wk_affine: negative index");
    if ((k + l) % 3 != 2) return Rat(0);
    switch (k % 3) {
        case 2: return detail::wk_family((k + 1) / 3, l / 3, false);
        case 0: return detail::wk_family(k / 3 + 1, (l - 2) / 3, false);
        default: return detail::wk_family((k + 2) / 3, (l - 1) / 3, true);
    }
}

/// g_n of the topological pair: zero unless n = 3m.
inline Rat wk_g(int n) {
    if (n < 0) throw std::invalid_argument("wk_g: negative index");
    if (n % 3 != 0) return Rat(0);
    int m = n / 3;
    Rat acc(0);
    for (int i = 0; i <= m; ++i) {
        Rat term = rat_pow_long(3, i) * rat_factorial(6 * (m - i)) /
                   (rat_pow_long(288, m - i) * rat_factorial(2 * (m - i)) * rat_factorial(3 * (m - i)));
        for (int j = 1; j <= i; ++j) term *= Rat(2 * (m - j) + 1, 2);
        acc += term;
    }
    return acc;
}

inline AffineMatrix<Rat> wk_affine_matrix() {
    return AffineMatrix<Rat>([](int m, int n) { return wk_affine(m, n); });
}

inline GSequence<Rat> wk_g_sequence(int N) {
    std::vector<Rat> g;
    g.reserve(N + 1);
    for (int n = 0; n <= N; ++n) g.push_back(wk_g(n));
    return GSequence<Rat>::from_g(std::move(g));
}

// ---------------------------------------------------------------------------
// Linear constraints.

enum class StringVariant { eqstr1, eqstr2, wk_string };

/// Residual of the scaling/string constraint on a truncated expansion:
///   eqstr1     sum over odd n of n q_n d/dq_n  - d/dq_1 + C
///   eqstr2     sum over all n of n q_n d/dq_n  - d/dq_1 + C
///   wk_string  sum_{n>=1} (2n+1) q_{2n+1} d/dq_{2n-1} - d/dq_1 + q_1^2/2
/// evaluated to weight N; the lone -d/dq_1 limits N to order - 1. C is
/// ignored by wk_string.
template <CoeffRing S>
WeightedSeries<S> string_check(const SchurVector<S>& v, StringVariant variant, const S& c, int N) {
    auto tau = to_series(v);
    if (N > tau.order() - 1)
        throw std::invalid_argument("string_check: residual order must stay below the truncation");
    WeightedSeries<S> r(N);
    r -= detail::resized(partial(tau, 1), N);
    if (variant == StringVariant::wk_string) {
        auto q1 = WeightedSeries<S>::variable(1, N);
        r += (q1 * q1 * detail::resized(tau, N)).scaled_rat(Rat(1, 2));
        for (int n = 1; 2 * n + 1 <= N; ++n) {
            auto pd = detail::resized(partial(tau, 2 * n - 1), N);
            r += (WeightedSeries<S>::variable(2 * n + 1, N) * pd).scaled_rat(Rat(2 * n + 1));
        }
        return r;
    }
    int step = (variant == StringVariant::eqstr1) ? 2 : 1;
    for (int n = 1; n <= N; n += step) {
        auto pd = detail::resized(partial(tau, n), N);
        r += (WeightedSeries<S>::variable(n, N) * pd).scaled_rat(Rat(n));
    }
    r += detail::resized(tau, N).scaled(c);
    return r;
}

namespace detail {

/// tau(q -+ [z^-1]) e^{+-sum q_n z^n} as a Laurent object; dual flips both
/// signs.
template <CoeffRing S>
ZSeries<S> wave_kernel(const WeightedSeries<S>& tau, bool dual) {
    ZSeries<S> shifted = miwa_shift(tau, dual ? +1 : -1);
    ZSeries<S> expz;
    expz.order = tau.order();
    for (int k = 0; k <= tau.order(); ++k) {
        auto h = h_poly<S>(k, tau.order());
        if (dual) h = h.negated_vars();
        expz.add(k, h);
    }
    return shifted * expz;
}

} // namespace detail

/// Checks (sum_n n (q_n - d_{n,1}) d/dq_n + C) K = (z d/dz -+ z) K on the
/// kernel K built from tau (dual = false) or its sign-reversed companion
/// (dual = true, right-hand side z d/dz + z). Compared per z power t over
/// |t| <= Nz, each to the weight where both sides are exact.
template <CoeffRing S>
bool virasoro_constraint_holds(const WeightedSeries<S>& tau, const S& c, int Nz, bool dual) {
    int Nq = tau.order();
    ZSeries<S> K = detail::wave_kernel(tau, dual);
    for (int t = -Nz; t <= Nz; ++t) {
        // K_t is exact to weight Nq + min(t, 0); the derivative costs one more
        int W = Nq - 1 + std::min(t, 0);
        if (W < 0) continue;
        auto Kt = K.at(t);
        WeightedSeries<S> lhs(W);
        lhs -= detail::resized(partial(Kt, 1), W);
        for (int n = 1; n <= W; ++n)
            lhs += (WeightedSeries<S>::variable(n, W) * detail::resized(partial(Kt, n), W)).scaled_rat(Rat(n));
        lhs += detail::resized(Kt, W).scaled(c);
        WeightedSeries<S> rhs = detail::resized(Kt, W).scaled_rat(Rat(t));
        auto Km = detail::resized(K.at(t - 1), W);
        if (dual) rhs += Km;
        else rhs -= Km;
        if (!(lhs == rhs)) return false;
    }
    return true;
}

/// Both halves of the constraint pair on the truncated model tau function.
template <CoeffRing S>
bool virasoro_K_check(const S& c, int Nq, int Nz) {
    auto tau = to_series(tau_from_affine(bgw_affine_matrix(c), Nq));
    return virasoro_constraint_holds(tau, c, Nz, false) &&
           virasoro_constraint_holds(tau, c, Nz, true);
}

// ---------------------------------------------------------------------------
// Wave-function restriction.

namespace detail {

/// x-coefficients of theta_n (1-x)^{-n} up to degree deg.
template <CoeffRing S>
std::vector<S> wave_u_row(int n, const S& c, int deg) {
    S th = bgw_theta(n, c);
    std::vector<S> row(deg + 1, ScalarOps<S>::zero());
    for (int a = 0; a <= deg; ++a)
        row[a] = ScalarOps<S>::mul_rat(th, rat_binomial(n - 1 + a, a));
    return row;
}

template <CoeffRing S>
std::vector<S> poly_dx(const std::vector<S>& p) {
    std::vector<S> r;
    for (size_t a = 1; a < p.size(); ++a) r.push_back(ScalarOps<S>::mul_rat(p[a], Rat(static_cast<long>(a))));
    if (r.empty()) r.push_back(ScalarOps<S>::zero());
    return r;
}

/// Multiplication by (1-x)^2, truncated to the input length.
template <CoeffRing S>
std::vector<S> poly_mul_one_minus_x_sq(const std::vector<S>& p) {
    std::vector<S> r(p.size(), ScalarOps<S>::zero());
    for (size_t a = 0; a < p.size(); ++a) {
        r[a] = r[a] + p[a];
        if (a + 1 < p.size()) r[a + 1] = r[a + 1] - ScalarOps<S>::mul_rat(p[a], Rat(2));
        if (a + 2 < p.size()) r[a + 2] = r[a + 2] + p[a];
    }
    return r;
}

} // namespace detail

/// Verifies the closed form of the restricted wave function
///   f = e^{xz} u,  u(x, z) = sum_n theta_n z^-n (1-x)^-n:
/// (a) u solves the restricted Lax equation, in the polynomial form
///     (1-x)^2 u_xx + 2z (1-x)^2 u_x + 2C u = 0, through x-degree Nx - 2 and
///     z^-1-order Nz - 1;
/// (b) u matches the shifted-quotient expansion of the model tau function on
///     the q_1 line, entry j to x-degree Nx.
template <CoeffRing S>
bool wave_restriction_check(const S& c, int Nx, int Nz) {
    if (Nx < 2 || Nz < 1) throw std::invalid_argument("wave_restriction_check: orders too small");
    std::vector<std::vector<S>> u;
    for (int n = 0; n <= Nz; ++n) u.push_back(detail::wave_u_row(n, c, Nx));
    for (int n = 0; n < Nz; ++n) {
        auto lhs = detail::poly_mul_one_minus_x_sq(detail::poly_dx(detail::poly_dx(u[n])));
        auto mid = detail::poly_mul_one_minus_x_sq(detail::poly_dx(u[n + 1]));
        for (int a = 0; a <= Nx - 2; ++a) {
            S val = lhs[a] + ScalarOps<S>::mul_rat(mid[a], Rat(2)) + ScalarOps<S>::mul_rat(u[n][a], Rat(2)) * c;
            if (!ScalarOps<S>::is_zero(val)) return false;
        }
    }
    int Nq = Nx + Nz;
    auto tau = to_series(tau_from_affine(bgw_affine_matrix(c), Nq));
    auto data = line_shift_data(tau);
    for (int j = 0; j <= Nz; ++j)
        for (int a = 0; a <= Nx; ++a)
            if (!ScalarOps<S>::is_zero(data.quotient[j][a] - u[j][a])) return false;
    return true;
}

/// Restrictions of the model pair to the q_1 line: tau_1 is the binomial
/// series (1-x)^{-C}, its second log-derivative is C/(1-x)^2, and the
/// log-derivative of the quotient component vanishes.
template <CoeffRing S>
bool line_initial_data_check(const S& c, int N) {
    if (N < 2) throw std::invalid_argument("line_initial_data_check: order too small");
    auto a = bgw_affine_matrix(c);
    auto tau1 = to_series(tau_from_affine(a, N));
    auto line = restrict_to_line(tau1);
    S rising = ScalarOps<S>::one();
    for (int k = 0; k <= N; ++k) {
        if (k > 0) rising = rising * (c + ScalarOps<S>::from_rat(Rat(k - 1)));
        if (!ScalarOps<S>::is_zero(line[k] - ScalarOps<S>::mul_rat(rising, Rat(1) / rat_factorial(k))))
            return false;
    }
    auto wline = restrict_to_line(partial(partial(series_log(tau1), 1), 1));
    for (int k = 0; k <= N - 2; ++k)
        if (!ScalarOps<S>::is_zero(wline[k] - ScalarOps<S>::mul_rat(c, Rat(k + 1)))) return false;
    auto taue = to_series(tau_E(a, bgw_g_sequence(c, N), N, TauEMethod::determinant));
    auto rholine = restrict_to_line(partial(series_log(taue * series_inverse(tau1)), 1));
    for (const S& v : rholine)
        if (!ScalarOps<S>::is_zero(v)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Polynomiality at the degenerate parameter C = -m(m+1)/2, m even.

struct PolynomialityReport {
    int m = 0;
    Rat parameter;        // the specialized C
    Rat a_m_sum;          // finite-sum form
    Rat a_m_taylor;       // Taylor coefficient of -z (1+z^2)^{-3/2}
    bool g_stabilizes = false;      // g_k = (k-1)! a_m for m <= k <= N
    bool tail_vanishes = false;     // tau_E coefficients zero on the window
    int window_lo = 0, window_hi = 0;

    bool ok() const {
        return a_m_sum == a_m_taylor && a_m_sum.is_zero() && g_stabilizes && tail_vanishes;
    }
};

namespace detail {

/// [z^k] (1+z^2)^{-3/2}: binomial series with half-integer exponent.
inline Rat half_binomial_coeff(int t) {
    Rat r(1);
    for (int s = 0; s < t; ++s) r *= (Rat(-3, 2) - Rat(s)) / Rat(s + 1);
    return r;
}

} // namespace detail

/// For even m and C = -m(m+1)/2 the g-series truncates and the extended tau
/// function is a polynomial; the report carries the two a_m evaluations, the
/// g-stabilization scan, and a vanishing scan of the tau coefficients over a
/// weight window above the polynomial degree.
inline PolynomialityReport polynomiality(int m, int N) {
    if (m < 0 || m % 2 != 0) throw std::invalid_argument("polynomiality: m must be even and nonnegative");
    PolynomialityReport rep;
    rep.m = m;
    rep.parameter = Rat(-static_cast<long>(m) * (m + 1), 2);
    Rat prod(1);
    for (int k = 1; k <= m; ++k) {
        prod *= rep.parameter + Rat(static_cast<long>(k) * (k - 1), 2);
        rep.a_m_sum += prod / (rat_factorial(k) * rat_factorial(k - 1));
    }
    // -z (1+z^2)^{-3/2} is odd, so even coefficients vanish identically
    rep.a_m_taylor = (m % 2 == 0) ? Rat(0) : -detail::half_binomial_coeff((m - 1) / 2);
    rep.g_stabilizes = true;
    for (int k = std::max(m, 1); k <= N; ++k)
        if (bgw_g(k, rep.parameter) != rat_factorial(k - 1) * rep.a_m_sum) rep.g_stabilizes = false;
    rep.window_lo = (m == 0) ? 1 : 2 * m + 3;
    rep.window_hi = std::max(rep.window_lo, N);
    auto a = bgw_affine_matrix(rep.parameter);
    auto g = bgw_g_sequence(rep.parameter, rep.window_hi);
    rep.tail_vanishes = true;
    for (int w = rep.window_lo; w <= rep.window_hi; ++w)
        for (const auto& la : partitions_of(w)) {
            FrobeniusForm f = la.frobenius();
            std::vector<std::vector<Rat>> mat(f.rank(), std::vector<Rat>(f.rank()));
            for (int i = 0; i < f.rank(); ++i)
                for (int j = 0; j < f.rank(); ++j) mat[i][j] = hook_coefficient(a, g, f.arms[i], f.legs[j]);
            if (!det_small(mat).is_zero()) rep.tail_vanishes = false;
            Rat pre(0);
            for (int k = 0; k <= w; ++k)
                for (const auto& mu : t_preimage(la, k)) pre += Rat(mu.sign) * g.g(k) * plucker(mu.part, a);
            if (!pre.is_zero()) rep.tail_vanishes = false;
        }
    return rep;
}

} // namespace tauforge
