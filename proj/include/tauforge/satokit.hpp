#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tauforge/partition.hpp"
#include "tauforge/scalar.hpp"
#include "tauforge/schur.hpp"
#include "tauforge/series.hpp"

namespace tauforge {

/// Affine coordinates A_{m,n} (m, n >= 0) of a big-cell point of the Sato
/// Grassmannian, wrapped around a pure evaluator. Entries are memoised in a
/// cache shared by all copies; memoisation is invisible to results.
template <CoeffRing S>
class AffineMatrix {
public:
    using Evaluator = std::function<S(int, int)>;

    explicit AffineMatrix(Evaluator eval)
        : eval_(std::move(eval)), memo_(std::make_shared<std::map<std::pair<int, int>, S>>()) {}

    const S& at(int m, int n) const {
        if (m < 0 || n < 0) throw std::invalid_argument("AffineMatrix: negative index");
        auto key = std::make_pair(m, n);
        auto it = memo_->find(key);
        if (it == memo_->end()) it = memo_->emplace(key, eval_(m, n)).first;
        return it->second;
    }

private:
    Evaluator eval_;
    std::shared_ptr<std::map<std::pair<int, int>, S>> memo_;
};

/// The coefficient pair (g, b) linked by sum_n g_n z^-n = exp(sum_k b_k z^-k),
/// truncated at index N. Normalised so that g_0 = 1 (hence no constant term in
/// the logarithm). Also carries the coefficients of the reciprocal series,
/// which evaluate complete homogeneous polynomials at -b.
template <CoeffRing S>
class GSequence {
public:
    static GSequence from_g(std::vector<S> g) {
        require_unit_head(g);
        GSequence r;
        r.g_ = std::move(g);
        int N = r.order();
        r.b_.assign(N + 1, ScalarOps<S>::zero());
        for (int n = 1; n <= N; ++n) {
            S acc = ScalarOps<S>::mul_rat(r.g_[n], Rat(n));
            for (int k = 1; k < n; ++k) acc = acc - ScalarOps<S>::mul_rat(r.b_[k] * r.g_[n - k], Rat(k));
            r.b_[n] = ScalarOps<S>::mul_rat(acc, Rat(1, n));
        }
        r.finish();
        // exp/log round-trip; an inconsistency here is a programming error
        GSequence back = from_b(r.b_);
        for (int n = 0; n <= N; ++n)
            if (!ScalarOps<S>::is_zero(back.g_[n] - r.g_[n]))
                throw std::logic_error("GSequence: log/exp round trip failed");
        return r;
    }

    /// Entry b[0] is ignored; the exponential has no constant term.
    static GSequence from_b(std::vector<S> b) {
        if (b.empty()) b.push_back(ScalarOps<S>::zero());
        GSequence r;
        int N = static_cast<int>(b.size()) - 1;
        r.b_ = std::move(b);
        r.b_[0] = ScalarOps<S>::zero();
        r.g_.assign(N + 1, ScalarOps<S>::zero());
        r.g_[0] = ScalarOps<S>::one();
        for (int n = 1; n <= N; ++n) {
            S acc = ScalarOps<S>::zero();
            for (int k = 1; k <= n; ++k) acc = acc + ScalarOps<S>::mul_rat(r.b_[k] * r.g_[n - k], Rat(k));
            r.g_[n] = ScalarOps<S>::mul_rat(acc, Rat(1, n));
        }
        r.finish();
        return r;
    }

    int order() const { return static_cast<int>(g_.size()) - 1; }

    const S& g(int n) const { return entry(g_, n); }
    const S& b(int k) const { return entry(b_, k); }
    /// Coefficients of 1 / sum_n g_n z^-n; equal to h_n evaluated at -b.
    const S& g_inverse(int n) const { return entry(ginv_, n); }

    /// Schur polynomial evaluated at the alphabet b (negate = false) or -b
    /// (negate = true), through the h-determinant over g resp. 1/g.
    S schur_at(const Partition& mu, bool negate) const {
        const std::vector<S>& seq = negate ? ginv_ : g_;
        int r = mu.length();
        if (r == 0) return ScalarOps<S>::one();
        std::vector<std::vector<S>> m(r, std::vector<S>(r, ScalarOps<S>::zero()));
        for (int i = 1; i <= r; ++i)
            for (int j = 1; j <= r; ++j) {
                int idx = mu.part(i) - i + j;
                if (idx < 0) continue;
                m[i - 1][j - 1] = entry(seq, idx);
            }
        return det_small(m);
    }

private:
    GSequence() = default;

    static void require_unit_head(const std::vector<S>& g) {
        if (g.empty() || !ScalarOps<S>::is_zero(g[0] - ScalarOps<S>::one()))
            throw std::invalid_argument("GSequence: leading coefficient must be 1");
    }

    const S& entry(const std::vector<S>& v, int n) const {
        if (n < 0 || n >= static_cast<int>(v.size()))
            throw std::out_of_range("GSequence: index beyond truncation");
        return v[n];
    }

    void finish() {
        int N = order();
        ginv_.assign(N + 1, ScalarOps<S>::zero());
        ginv_[0] = ScalarOps<S>::one();
        for (int n = 1; n <= N; ++n) {
            S acc = ScalarOps<S>::zero();
            for (int k = 1; k <= n; ++k) acc = acc + g_[k] * ginv_[n - k];
            ginv_[n] = ScalarOps<S>::zero() - acc;
        }
    }

    std::vector<S> g_, b_, ginv_;
};

/// Insertion form of the shift operator on a single Schur label: the image of
/// s_la under T_n is sign * s_mu, or nothing when it vanishes. With la_0 = +inf
/// and la_{l+1} = 0 there is at most one admissible insertion slot i, namely
/// where the strictly decreasing sequence la_i - i crosses n.
inline std::optional<SignedPartition> shift_insert(int n, const Partition& la) {
    if (n < 0) throw std::invalid_argument("shift_insert: negative index");
    int l = la.length();
    for (int i = 0; i <= l; ++i) {
        bool upper = (i == 0) || (la.part(i) > n + i);
        if (!upper) continue;
        if (n + i < la.part(i + 1)) continue;
        std::vector<int> parts;
        parts.reserve(l + 1);
        for (int t = 1; t <= i; ++t) parts.push_back(la.part(t) - 1);
        if (n + i > 0) parts.push_back(n + i);
        for (int t = i + 1; t <= l; ++t) parts.push_back(la.part(t));
        return SignedPartition{Partition(parts), (i % 2 == 0) ? 1 : -1};
    }
    return std::nullopt;
}

/// Linear extension of the insertion rule; raises weight by n, entries pushed
/// past the truncation order are dropped.
template <CoeffRing S>
SchurVector<S> apply_T(int n, const SchurVector<S>& v) {
    SchurVector<S> out(v.order());
    for (const auto& [la, c] : v.terms()) {
        auto im = shift_insert(n, la);
        if (!im) continue;
        out.add(im->part, im->sign < 0 ? ScalarOps<S>::zero() - c : c);
    }
    return out;
}

/// Determinant form of the same operator: det(h_{k_i - i + j}) over the row
/// indices (n, la_1, ..., la_l), re-expanded in the Schur basis. Must agree
/// with apply_T.
inline SchurVector<Rat> apply_T_det(int n, const Partition& la) {
    if (n < 0) throw std::invalid_argument("apply_T_det: negative index");
    std::vector<int> k;
    k.reserve(la.length() + 1);
    k.push_back(n);
    for (int p : la.parts()) k.push_back(p);
    int order = la.weight() + n;
    return to_schur_basis(detail::jacobi_trudi_det(k, order, false));
}

/// All signed mu with T_k(s_mu) = sign * s_la, found by forward application
/// over the weight |la| - k slice.
inline std::vector<SignedPartition> t_preimage(const Partition& la, int k) {
    std::vector<SignedPartition> out;
    int w = la.weight() - k;
    if (w < 0) return out;
    for (const auto& mu : partitions_of(w)) {
        auto im = shift_insert(k, mu);
        if (im && im->part == la) out.push_back({mu, im->sign});
    }
    return out;
}

/// Kernel form of T_0: the z^0 coefficient of F(q - [z^-1]) e^{sum q_n z^n}.
template <CoeffRing S>
WeightedSeries<S> residue_T0(const WeightedSeries<S>& f) {
    return residue_against_exp(miwa_shift(f, -1), +1);
}

/// The companion contraction with both signs reversed: the z^0 coefficient of
/// F(q + [z^-1]) e^{-sum q_n z^n}. On a rank-r Frobenius label with n_r >= 1 it
/// shifts (m|n) to (-1)^r (m+1|n-1); it kills n_r = 0 labels and fixes 1.
template <CoeffRing S>
WeightedSeries<S> residue_T0_dual(const WeightedSeries<S>& f) {
    return residue_against_exp(miwa_shift(f, +1), -1);
}

/// Conjugation of T_0 by the multiplication operator e^{sum k b_k q_k},
/// evaluated through the expansion sum_n g_n T_n. Needs g up to the truncation
/// order of v.
template <CoeffRing S>
SchurVector<S> conjugated_T0(const GSequence<S>& g, const SchurVector<S>& v) {
    int N = v.order();
    if (g.order() < N)
        throw std::invalid_argument("conjugated_T0: g sequence shorter than truncation order");
    SchurVector<S> out(N);
    for (int n = 0; n <= N; ++n) {
        if (ScalarOps<S>::is_zero(g.g(n))) continue;
        out += apply_T(n, v).scaled(g.g(n));
    }
    return out;
}

/// Same conjugation evaluated directly: multiply by e^{-sum k b_k q_k}, apply
/// the kernel form of T_0, multiply back. Oracle for conjugated_T0.
template <CoeffRing S>
SchurVector<S> conjugated_T0_via_residue(const GSequence<S>& g, const SchurVector<S>& v) {
    int N = v.order();
    if (g.order() < N)
        throw std::invalid_argument("conjugated_T0_via_residue: g sequence shorter than truncation order");
    std::vector<S> plus, minus;
    for (int k = 1; k <= N; ++k) {
        S kb = ScalarOps<S>::mul_rat(g.b(k), Rat(k));
        plus.push_back(kb);
        minus.push_back(ScalarOps<S>::zero() - kb);
    }
    auto shifted = residue_T0(exp_linear(minus, N) * to_series(v));
    return to_schur_basis(exp_linear(plus, N) * shifted);
}

/// Plucker coefficient of s_la: (-1)^{sum of legs} times the determinant of
/// the Frobenius minor of the affine coordinates. The empty label gives 1.
template <CoeffRing S>
S plucker(const Partition& la, const AffineMatrix<S>& a) {
    FrobeniusForm f = la.frobenius();
    int r = f.rank();
    if (r == 0) return ScalarOps<S>::one();
    std::vector<std::vector<S>> m(r, std::vector<S>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m[i][j] = a.at(f.arms[i], f.legs[j]);
    S d = det_small(m);
    int legsum = 0;
    for (int n : f.legs) legsum += n;
    return (legsum % 2 != 0) ? ScalarOps<S>::zero() - d : d;
}

/// Schur expansion of the tau function attached to the affine coordinates,
/// truncated at weight N.
template <CoeffRing S>
SchurVector<S> tau_from_affine(const AffineMatrix<S>& a, int N) {
    SchurVector<S> out(N);
    for (const auto& la : partitions_up_to(N)) out.add(la, plucker(la, a));
    return out;
}

/// Coefficient of the hook s_(m|n) in the extended tau function. For n >= 1 it
/// combines the two hook preimages; the (-1)^{n-1} is the shared sign of their
/// rank-one Plucker minors.
template <CoeffRing S>
S hook_coefficient(const AffineMatrix<S>& a, const GSequence<S>& g, int m, int n) {
    if (m < 0 || n < 0) throw std::invalid_argument("hook_coefficient: negative index");
    if (n == 0) return g.g(m + 1);
    S d = g.g(m + 1) * a.at(0, n - 1) - a.at(m + 1, n - 1);
    return (n % 2 == 0) ? ScalarOps<S>::zero() - d : d;
}

enum class TauEMethod { conjugate, preimage, determinant, littlewood_richardson };

namespace detail {

template <CoeffRing S>
SchurVector<S> tau_e_conjugate(const AffineMatrix<S>& a, const GSequence<S>& g, int N) {
    return conjugated_T0_via_residue(g, tau_from_affine(a, N));
}

template <CoeffRing S>
SchurVector<S> tau_e_preimage(const AffineMatrix<S>& a, const GSequence<S>& g, int N) {
    SchurVector<S> out(N);
    for (const auto& la : partitions_up_to(N)) {
        S acc = ScalarOps<S>::zero();
        for (int k = 0; k <= la.weight(); ++k) {
            if (ScalarOps<S>::is_zero(g.g(k))) continue;
            for (const auto& mu : t_preimage(la, k)) {
                S term = g.g(k) * plucker(mu.part, a);
                acc = acc + (mu.sign < 0 ? ScalarOps<S>::zero() - term : term);
            }
        }
        out.add(la, acc);
    }
    return out;
}

template <CoeffRing S>
SchurVector<S> tau_e_determinant(const AffineMatrix<S>& a, const GSequence<S>& g, int N) {
    SchurVector<S> out(N);
    for (const auto& la : partitions_up_to(N)) {
        FrobeniusForm f = la.frobenius();
        int r = f.rank();
        if (r == 0) {
            out.add(la, ScalarOps<S>::one());
            continue;
        }
        std::vector<std::vector<S>> m(r, std::vector<S>(r));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) m[i][j] = hook_coefficient(a, g, f.arms[i], f.legs[j]);
        out.add(la, det_small(m));
    }
    return out;
}

template <CoeffRing S>
SchurVector<S> tau_e_littlewood_richardson(const AffineMatrix<S>& a, const GSequence<S>& g, int N) {
    SchurVector<S> out(N);
    for (const auto& beta : partitions_up_to(N)) {
        auto im = shift_insert(0, beta);
        if (!im) continue;
        S p = ScalarOps<S>::zero();
        for (int wmu = 0; wmu <= beta.weight(); ++wmu)
            for (const auto& mu : partitions_of(wmu)) {
                S smu = g.schur_at(mu, true);
                if (ScalarOps<S>::is_zero(smu)) continue;
                for (const auto& al : partitions_of(beta.weight() - wmu)) {
                    Rat c = lr_coefficient(mu, al, beta);
                    if (c.is_zero()) continue;
                    p = p + ScalarOps<S>::mul_rat(smu * plucker(al, a), c);
                }
            }
        if (ScalarOps<S>::is_zero(p)) continue;
        if (im->sign < 0) p = ScalarOps<S>::zero() - p;
        for (int wnu = 0; wnu + beta.weight() <= N; ++wnu)
            for (const auto& nu : partitions_of(wnu)) {
                S snu = g.schur_at(nu, false);
                if (ScalarOps<S>::is_zero(snu)) continue;
                S scale = p * snu;
                for (const auto& [la, c] : lr_expand(nu, im->part).terms())
                    out.add(la, ScalarOps<S>::mul_rat(scale, c));
            }
    }
    return out;
}

} // namespace detail

/// Schur expansion of the extended tau function, by any of the four
/// equivalent assemblies:
///   conjugate              route the tau series through the conjugated kernel
///   preimage               sum g_k * pi_mu over shift preimages of each label
///   determinant            determinants of the hook-coefficient minors
///   littlewood_richardson  double Cauchy expansion with LR coefficients
template <CoeffRing S>
SchurVector<S> tau_E(const AffineMatrix<S>& a, const GSequence<S>& g, int N, TauEMethod method) {
    if (g.order() < N) throw std::invalid_argument("tau_E: g sequence shorter than truncation order");
    switch (method) {
        case TauEMethod::conjugate: return detail::tau_e_conjugate(a, g, N);
        case TauEMethod::preimage: return detail::tau_e_preimage(a, g, N);
        case TauEMethod::determinant: return detail::tau_e_determinant(a, g, N);
        case TauEMethod::littlewood_richardson: return detail::tau_e_littlewood_richardson(a, g, N);
    }
    throw std::invalid_argument("tau_E: unknown method");
}

/// Affine coordinates of the image of a tau function under T_0: first column
/// zero, the rest the diagonally shifted entries. The sign is fixed by
/// matching Frobenius minors: T_0 sends the coefficient of s_{(m+1|n-1)} to
/// (-1)^r times the s_{(m|n)} slot, and the minor of the shifted matrix
/// absorbs exactly that (-1)^r through the leg weights n_j - 1.
template <CoeffRing S>
AffineMatrix<S> w_prime_transform(const AffineMatrix<S>& a) {
    return AffineMatrix<S>([a](int k, int l) {
        if (l == 0) return ScalarOps<S>::zero();
        return a.at(k + 1, l - 1);
    });
}

/// Residual of the bilinear pairing
///   res_{z=inf} tau(q - [z^-1]) tau(q' + [z^-1]) e^{sum (q_n - q'_n) z^n} dz
/// truncated at joint weight N; identically zero to that weight exactly when
/// the expansion is a tau function of the flow hierarchy. The input must carry
/// at least one extra weight, since the weight-(N+1) part of tau feeds the
/// weight-N part of the residual through the shifts.
template <CoeffRing S>
BiSeries<S> bilinear_residual(const SchurVector<S>& v, int N) {
    if (v.order() < N + 1)
        throw std::invalid_argument("bilinear_residual: input truncated below N+1");
    auto tau = to_series(v);
    ZSeries<S> za = miwa_shift(tau, -1);
    ZSeries<S> zb = miwa_shift(tau, +1);
    BiSeries<S> out(N);
    S minus_one = ScalarOps<S>::zero() - ScalarOps<S>::one();
    for (const auto& [ea, fa] : za.coeff) {
        for (const auto& [eb, fb] : zb.coeff) {
            int km = -ea - eb - 1; // z exponents must cancel to z^-1
            if (km < 0) continue;
            for (int k = 0; k <= km; ++k) {
                auto left = fa * h_poly<S>(k, tau.order());
                if (left.is_zero()) continue;
                auto right = fb * h_poly<S>(km - k, tau.order()).negated_vars();
                if (right.is_zero()) continue;
                out.add_tensor(left, right, minus_one);
            }
        }
    }
    return out;
}

/// Restriction of a tau function to the q_1 line together with the
/// x-expansions of its shifted quotients: quotient[j][a] is the coefficient of
/// x^a in the z^-j part of tau(x - 1/z, -1/(2z^2), ...) / tau(x, 0, ...).
/// Entry j is exact to degree order - j.
template <CoeffRing S>
struct LineShiftData {
    int order = 0;
    std::vector<std::vector<S>> quotient;
};

namespace detail {

/// Truncated quotient of polynomial x-expansions; the denominator must be a
/// unit at the origin.
template <CoeffRing S>
std::vector<S> line_divide(const std::vector<S>& num, const std::vector<S>& den, int len) {
    auto inv = ScalarOps<S>::try_invert(den.empty() ? ScalarOps<S>::zero() : den[0]);
    if (!inv) throw std::domain_error("line_divide: restriction is not a unit at the origin");
    std::vector<S> q(len, ScalarOps<S>::zero());
    for (int a = 0; a < len; ++a) {
        S acc = a < static_cast<int>(num.size()) ? num[a] : ScalarOps<S>::zero();
        for (int t = 1; t <= a; ++t) {
            if (t >= static_cast<int>(den.size())) break;
            acc = acc - den[t] * q[a - t];
        }
        q[a] = acc * (*inv);
    }
    return q;
}

} // namespace detail

template <CoeffRing S>
LineShiftData<S> line_shift_data(const WeightedSeries<S>& tau1) {
    int N = tau1.order();
    auto den = restrict_to_line(tau1);
    if (den.empty() || !ScalarOps<S>::try_invert(den[0]))
        throw std::domain_error("line_shift_data: tau vanishes at the origin");
    ZSeries<S> shifted = miwa_shift(tau1, -1);
    LineShiftData<S> out;
    out.order = N;
    out.quotient.resize(N + 1);
    for (int j = 0; j <= N; ++j) {
        auto num = restrict_to_line(shifted.at(-j));
        out.quotient[j] = detail::line_divide(num, den, N - j + 1);
    }
    return out;
}

/// Recovers g from the two line restrictions: the extended component satisfies
///   tau2(x) = sum_n g_n E_n(x),  E_n(x) = sum_j quotient[j](x) x^{n+j}/(n+j)!
/// and E_n = x^n/n! + higher order makes the system triangular.
template <CoeffRing S>
GSequence<S> extract_g(const LineShiftData<S>& tau1_line, const std::vector<S>& tau2_line, int N) {
    if (tau1_line.order < N)
        throw std::invalid_argument("extract_g: shift data truncated below N");
    if (static_cast<int>(tau2_line.size()) < N + 1)
        throw std::invalid_argument("extract_g: tau2 restriction truncated below N");
    // basis[n][a] = [x^a] E_n(x) for a <= N
    std::vector<std::vector<S>> basis(N + 1, std::vector<S>(N + 1, ScalarOps<S>::zero()));
    for (int n = 0; n <= N; ++n)
        for (int j = 0; n + j <= N; ++j) {
            Rat f = rat_factorial(n + j).inverse();
            const auto& d = tau1_line.quotient[j];
            for (int a = n + j; a <= N; ++a) {
                int da = a - n - j;
                if (da >= static_cast<int>(d.size())) break;
                basis[n][a] = basis[n][a] + ScalarOps<S>::mul_rat(d[da], f);
            }
        }
    std::vector<S> g(N + 1, ScalarOps<S>::zero());
    for (int n = 0; n <= N; ++n) {
        S acc = tau2_line[n];
        for (int k = 0; k < n; ++k) acc = acc - g[k] * basis[k][n];
        // diagonal entry of E_n is 1/n!
        g[n] = ScalarOps<S>::mul_rat(acc, rat_factorial(n));
    }
    return GSequence<S>::from_g(std::move(g));
}

} // namespace tauforge
