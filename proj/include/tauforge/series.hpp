#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tauforge/rational.hpp"
#include "tauforge/scalar.hpp"

namespace tauforge {

/// Exponent vector of a monomial in q_1, q_2, ...; index i holds the exponent
/// of q_{i+1}, trailing zeros trimmed. The weight of q_n is n.
using Mono = std::vector<int>;

inline int mono_weight(const Mono& m) {
    int w = 0;
    for (size_t i = 0; i < m.size(); ++i) w += static_cast<int>(i + 1) * m[i];
    return w;
}

inline void mono_trim(Mono& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

inline Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

/// Formal power series in q_1, q_2, ... truncated at a fixed total weight.
///
/// Terms of weight > order() are dropped eagerly; zero coefficients are never
/// stored. Arithmetic requires both operands to carry the same truncation
/// order, so validity of every coefficient is an invariant, not a convention.
template <class S>
class WeightedSeries {
public:
    using Terms = std::map<Mono, S>;

    WeightedSeries() : order_(0) {}
    explicit WeightedSeries(int order) : order_(order) {
        if (order < 0) throw std::invalid_argument("WeightedSeries: negative order");
    }

    static WeightedSeries constant(const S& c, int order) {
        WeightedSeries f(order);
        f.add_term(Mono{}, c);
        return f;
    }
    static WeightedSeries one(int order) {
        return constant(ScalarOps<S>::one(), order);
    }
    /// The variable q_n.
    static WeightedSeries variable(int n, int order) {
        if (n < 1) throw std::invalid_argument("variable index must be >= 1");
        WeightedSeries f(order);
        Mono m(n, 0);
        m[n - 1] = 1;
        f.add_term(m, ScalarOps<S>::one());
        return f;
    }

    int order() const { return order_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    S coeff(const Mono& m) const {
        Mono k = m;
        mono_trim(k);
        auto it = terms_.find(k);
        return it == terms_.end() ? ScalarOps<S>::zero() : it->second;
    }
    S constant_term() const { return coeff(Mono{}); }

    void add_term(Mono m, const S& c) {
        mono_trim(m);
        if (mono_weight(m) > order_ || ScalarOps<S>::is_zero(c)) return;
        auto [it, fresh] = terms_.emplace(std::move(m), c);
        if (!fresh) {
            it->second = it->second + c;
            if (ScalarOps<S>::is_zero(it->second)) terms_.erase(it);
        }
    }

    WeightedSeries truncated(int m) const {
        if (m > order_)
            throw std::invalid_argument("truncated: cannot raise truncation order");
        WeightedSeries r(m);
        for (const auto& [mono, c] : terms_)
            if (mono_weight(mono) <= m) r.terms_.emplace(mono, c);
        return r;
    }

    WeightedSeries operator-() const {
        WeightedSeries r(order_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    WeightedSeries& operator+=(const WeightedSeries& o) {
        check_order(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    WeightedSeries& operator-=(const WeightedSeries& o) {
        check_order(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend WeightedSeries operator+(WeightedSeries a, const WeightedSeries& b) {
        return a += b;
    }
    friend WeightedSeries operator-(WeightedSeries a, const WeightedSeries& b) {
        return a -= b;
    }
    friend WeightedSeries operator*(const WeightedSeries& a, const WeightedSeries& b) {
        a.check_order(b);
        WeightedSeries r(a.order_);
        for (const auto& [ma, ca] : a.terms_) {
            int wa = mono_weight(ma);
            for (const auto& [mb, cb] : b.terms_) {
                if (wa + mono_weight(mb) > a.order_) continue;
                r.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        return r;
    }

    WeightedSeries scaled(const S& c) const {
        WeightedSeries r(order_);
        if (ScalarOps<S>::is_zero(c)) return r;
        for (const auto& [m, v] : terms_) r.add_term(m, v * c);
        return r;
    }
    WeightedSeries scaled_rat(const Rat& c) const {
        WeightedSeries r(order_);
        if (c.is_zero()) return r;
        for (const auto& [m, v] : terms_) r.add_term(m, ScalarOps<S>::mul_rat(v, c));
        return r;
    }

    friend bool operator==(const WeightedSeries& a, const WeightedSeries& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    /// q_n -> -q_n for every n; multiplies each monomial by (-1)^(total degree).
    WeightedSeries negated_vars() const {
        WeightedSeries r(order_);
        for (const auto& [m, c] : terms_) {
            int deg = 0;
            for (int e : m) deg += e;
            r.terms_.emplace(m, deg % 2 ? -c : c);
        }
        return r;
    }

    void check_order(const WeightedSeries& o) const {
        if (order_ != o.order_)
            throw std::invalid_argument("series arithmetic on mismatched truncation orders");
    }

private:
    int order_;
    Terms terms_;
};

/// d/dq_n. The result is valid only to weight order - n, and the truncation
/// order records that.
template <class S>
WeightedSeries<S> partial(const WeightedSeries<S>& f, int n) {
    if (n < 1) throw std::invalid_argument("partial: variable index must be >= 1");
    if (f.order() < n)
        throw std::invalid_argument("partial: truncation order too small for d/dq_n");
    WeightedSeries<S> r(f.order() - n);
    for (const auto& [m, c] : f.terms()) {
        if (static_cast<int>(m.size()) < n || m[n - 1] == 0) continue;
        Mono d = m;
        int e = d[n - 1];
        d[n - 1] -= 1;
        r.add_term(std::move(d), ScalarOps<S>::mul_rat(c, Rat(e)));
    }
    return r;
}

/// exp(f) for f with zero constant term.
template <class S>
WeightedSeries<S> series_exp(const WeightedSeries<S>& f) {
    if (!ScalarOps<S>::is_zero(f.constant_term()))
        throw std::invalid_argument("series_exp: nonzero constant term");
    int N = f.order();
    WeightedSeries<S> r = WeightedSeries<S>::one(N);
    WeightedSeries<S> pw = WeightedSeries<S>::one(N);
    Rat mfac(1);
    for (int m = 1; m <= N; ++m) {
        pw = pw * f;
        if (pw.is_zero()) break;
        mfac *= Rat(m);
        r += pw.scaled_rat(mfac.inverse());
    }
    return r;
}

/// log(f) for f with constant term 1.
template <class S>
WeightedSeries<S> series_log(const WeightedSeries<S>& f) {
    int N = f.order();
    WeightedSeries<S> u = f - WeightedSeries<S>::one(N);
    if (!ScalarOps<S>::is_zero(u.constant_term()))
        throw std::invalid_argument("series_log: constant term must be 1");
    WeightedSeries<S> r(N);
    WeightedSeries<S> pw = WeightedSeries<S>::one(N);
    for (int m = 1; m <= N; ++m) {
        pw = pw * u;
        if (pw.is_zero()) break;
        Rat c(m % 2 ? 1 : -1, m);
        r += pw.scaled_rat(c);
    }
    return r;
}

/// 1/f; the constant term must be a unit of the coefficient ring.
template <class S>
WeightedSeries<S> series_inverse(const WeightedSeries<S>& f) {
    int N = f.order();
    auto ci = ScalarOps<S>::try_invert(f.constant_term());
    if (!ci)
        throw std::domain_error("series_inverse: constant term is not a unit");
    WeightedSeries<S> g = f.scaled(*ci); // 1 + u
    WeightedSeries<S> u = WeightedSeries<S>::one(N) - g;
    WeightedSeries<S> r = WeightedSeries<S>::one(N);
    WeightedSeries<S> pw = WeightedSeries<S>::one(N);
    for (int m = 1; m <= N; ++m) {
        pw = pw * u;
        if (pw.is_zero()) break;
        r += pw;
    }
    return r.scaled(*ci);
}

template <class S>
WeightedSeries<S> series_div(const WeightedSeries<S>& a, const WeightedSeries<S>& b) {
    return a * series_inverse(b);
}

namespace detail {
/// Same terms under a different truncation order. Raising the order does not
/// create information: the caller must only consume weights where the source
/// was exact (e.g. when a following multiplication lifts past the gap).
template <class S>
WeightedSeries<S> resized(const WeightedSeries<S>& f, int order) {
    if (f.order() == order) return f;
    WeightedSeries<S> r(order);
    for (const auto& [m, c] : f.terms()) r.add_term(m, c);
    return r;
}

// h_0..h_N over Rat at truncation order N, from k h_k = sum_n n q_n h_{k-n}.
inline const std::vector<WeightedSeries<Rat>>& h_basis_rat(int N) {
    static std::map<int, std::vector<WeightedSeries<Rat>>> cache;
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    std::vector<WeightedSeries<Rat>> h;
    h.reserve(N + 1);
    h.push_back(WeightedSeries<Rat>::one(N));
    for (int k = 1; k <= N; ++k) {
        WeightedSeries<Rat> acc(N);
        for (int n = 1; n <= k; ++n)
            acc += (WeightedSeries<Rat>::variable(n, N) * h[k - n]).scaled_rat(Rat(n));
        h.push_back(acc.scaled_rat(Rat(1, k)));
    }
    return cache.emplace(N, std::move(h)).first->second;
}
} // namespace detail

/// Complete homogeneous polynomial h_k: the z^k coefficient of exp(sum q_n z^n).
template <class S>
WeightedSeries<S> h_poly(int k, int order) {
    WeightedSeries<S> r(order);
    if (k < 0) return r;
    if (k > order) return r; // weight-homogeneous of weight k
    const auto& h = detail::h_basis_rat(order)[k];
    for (const auto& [m, c] : h.terms()) r.add_term(m, ScalarOps<S>::from_rat(c));
    return r;
}

/// exp(sum_k c_k q_k) truncated at the order of the ambient computation;
/// coefficients beyond index order are irrelevant and may be omitted.
template <class S>
WeightedSeries<S> exp_linear(const std::vector<S>& c, int order) {
    WeightedSeries<S> lin(order);
    for (size_t i = 0; i < c.size() && static_cast<int>(i) < order; ++i) {
        Mono m(i + 1, 0);
        m[i] = 1;
        lin.add_term(std::move(m), c[i]);
    }
    return series_exp(lin);
}

/// Coefficients of the restriction to the q_1 line (q_2 = q_3 = ... = 0):
/// entry p is the coefficient of q_1^p, for p = 0..order.
template <class S>
std::vector<S> restrict_to_line(const WeightedSeries<S>& f) {
    std::vector<S> line(f.order() + 1, ScalarOps<S>::zero());
    for (const auto& [m, c] : f.terms()) {
        if (m.size() > 1) continue;
        line[m.empty() ? 0 : m[0]] = c;
    }
    return line;
}

/// Laurent object in z whose coefficients are weighted series; the key is the
/// z exponent. All coefficient series share one truncation order.
template <class S>
struct ZSeries {
    int order = 0;
    std::map<int, WeightedSeries<S>> coeff;

    WeightedSeries<S> at(int zexp) const {
        auto it = coeff.find(zexp);
        return it == coeff.end() ? WeightedSeries<S>(order) : it->second;
    }

    void add(int zexp, const WeightedSeries<S>& f) {
        if (f.is_zero()) return;
        auto [it, fresh] = coeff.emplace(zexp, f);
        if (!fresh) {
            it->second += f;
            if (it->second.is_zero()) coeff.erase(it);
        }
    }

    friend ZSeries operator*(const ZSeries& a, const ZSeries& b) {
        if (a.order != b.order)
            throw std::invalid_argument("ZSeries: mismatched truncation orders");
        ZSeries r;
        r.order = a.order;
        for (const auto& [za, fa] : a.coeff)
            for (const auto& [zb, fb] : b.coeff) r.add(za + zb, fa * fb);
        return r;
    }
};

/// Substitutes q_n -> q_n + dir/(n z^n) (dir = -1 gives the shift q - [z^{-1}]).
/// Every z exponent produced is <= 0.
template <class S>
ZSeries<S> miwa_shift(const WeightedSeries<S>& f, int dir) {
    if (dir != 1 && dir != -1) throw std::invalid_argument("miwa_shift: dir must be +-1");
    ZSeries<S> out;
    out.order = f.order();
    for (const auto& [m, c] : f.terms()) {
        // expand each factor q_n^e binomially; accumulate (mono, zexp, rat)
        struct Partial {
            Mono mono;
            int zexp;
            Rat scale;
        };
        std::vector<Partial> acc{{Mono{}, 0, Rat(1)}};
        for (size_t i = 0; i < m.size(); ++i) {
            int e = m[i];
            if (e == 0) continue;
            int n = static_cast<int>(i) + 1;
            std::vector<Partial> next;
            for (const auto& p : acc) {
                Rat shift_pow(1);
                for (int j = 0; j <= e; ++j) {
                    Partial np = p;
                    if (e - j > 0) {
                        if (np.mono.size() < i + 1) np.mono.resize(i + 1, 0);
                        np.mono[i] = e - j;
                    }
                    np.zexp = p.zexp - n * j;
                    np.scale = p.scale * rat_binomial(e, j) * shift_pow;
                    next.push_back(std::move(np));
                    shift_pow *= Rat(dir, n);
                }
            }
            acc = std::move(next);
        }
        for (auto& p : acc) {
            WeightedSeries<S> t(f.order());
            t.add_term(p.mono, ScalarOps<S>::mul_rat(c, p.scale));
            out.add(p.zexp, t);
        }
    }
    return out;
}

/// -res_{z=inf} G(z) e^{sign * sum q_n z^n} dz / z  with res_{z=inf} z^-1 dz = -1,
/// i.e. the z^0 coefficient of G(z) * sum_k h_k^{(sign)} z^k.
template <class S>
WeightedSeries<S> residue_against_exp(const ZSeries<S>& g, int sign) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("residue_against_exp: sign must be +-1");
    WeightedSeries<S> r(g.order);
    for (const auto& [zexp, f] : g.coeff) {
        if (zexp > 0) continue; // e^{...} has only z^k with k >= 0
        WeightedSeries<S> h = h_poly<S>(-zexp, g.order);
        if (sign < 0) h = h.negated_vars();
        r += f * h;
    }
    return r;
}

/// Series in two independent alphabets q and q', stored as a tensor map with a
/// joint weight truncation. Used by the Cauchy identity and the bilinear
/// pairing, which genuinely need doubled variables.
template <class S>
struct BiSeries {
    using Key = std::pair<Mono, Mono>;
    int order = 0;
    std::map<Key, S> terms;

    explicit BiSeries(int ord = 0) : order(ord) {}

    static BiSeries one(int ord) {
        BiSeries b(ord);
        b.terms.emplace(Key{Mono{}, Mono{}}, ScalarOps<S>::one());
        return b;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(Mono a, Mono b, const S& c) {
        mono_trim(a);
        mono_trim(b);
        if (mono_weight(a) + mono_weight(b) > order || ScalarOps<S>::is_zero(c)) return;
        Key k{std::move(a), std::move(b)};
        auto [it, fresh] = terms.emplace(std::move(k), c);
        if (!fresh) {
            it->second = it->second + c;
            if (ScalarOps<S>::is_zero(it->second)) terms.erase(it);
        }
    }

    /// this += (f in q) tensor (g in q'), scaled.
    void add_tensor(const WeightedSeries<S>& f, const WeightedSeries<S>& g, const S& scale) {
        if (ScalarOps<S>::is_zero(scale)) return;
        for (const auto& [ma, ca] : f.terms()) {
            int wa = mono_weight(ma);
            if (wa > order) continue;
            for (const auto& [mb, cb] : g.terms()) {
                if (wa + mono_weight(mb) > order) continue;
                add_term(ma, mb, ca * cb * scale);
            }
        }
    }

    BiSeries& operator+=(const BiSeries& o) {
        if (order != o.order)
            throw std::invalid_argument("BiSeries: mismatched truncation orders");
        for (const auto& [k, c] : o.terms) add_term(k.first, k.second, c);
        return *this;
    }
    BiSeries& operator-=(const BiSeries& o) {
        if (order != o.order)
            throw std::invalid_argument("BiSeries: mismatched truncation orders");
        for (const auto& [k, c] : o.terms) add_term(k.first, k.second, -c);
        return *this;
    }

    friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
        if (a.order != b.order)
            throw std::invalid_argument("BiSeries: mismatched truncation orders");
        BiSeries r(a.order);
        for (const auto& [ka, ca] : a.terms)
            for (const auto& [kb, cb] : b.terms)
                r.add_term(mono_mul(ka.first, kb.first), mono_mul(ka.second, kb.second),
                           ca * cb);
        return r;
    }

    friend bool operator==(const BiSeries& a, const BiSeries& b) {
        return a.order == b.order && a.terms == b.terms;
    }
};

template <class S>
BiSeries<S> biseries_exp(const BiSeries<S>& f) {
    auto it = f.terms.find(typename BiSeries<S>::Key{Mono{}, Mono{}});
    if (it != f.terms.end())
        throw std::invalid_argument("biseries_exp: nonzero constant term");
    BiSeries<S> r = BiSeries<S>::one(f.order);
    BiSeries<S> pw = BiSeries<S>::one(f.order);
    Rat mfac(1);
    for (int m = 1; m <= f.order; ++m) {
        pw = pw * f;
        if (pw.is_zero()) break;
        mfac *= Rat(m);
        Rat inv = mfac.inverse();
        BiSeries<S> term(f.order);
        for (const auto& [k, c] : pw.terms)
            term.add_term(k.first, k.second, ScalarOps<S>::mul_rat(c, inv));
        r += term;
    }
    return r;
}

} // namespace tauforge
