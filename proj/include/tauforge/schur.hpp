#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "tauforge/partition.hpp"
#include "tauforge/series.hpp"

namespace tauforge {

/// Finite linear combination of Schur polynomials, truncated by weight.
/// Zero coefficients are never stored; iteration order is the canonical
/// partition order.
template <class S>
class SchurVector {
public:
    using Terms = std::map<Partition, S>;

    SchurVector() : order_(0) {}
    explicit SchurVector(int order) : order_(order) {}

    static SchurVector unit(const Partition& p, int order) {
        SchurVector v(order);
        v.add(p, ScalarOps<S>::one());
        return v;
    }

    int order() const { return order_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    S coeff(const Partition& p) const {
        auto it = terms_.find(p);
        return it == terms_.end() ? ScalarOps<S>::zero() : it->second;
    }

    void add(const Partition& p, const S& c) {
        if (p.weight() > order_ || ScalarOps<S>::is_zero(c)) return;
        auto [it, fresh] = terms_.emplace(p, c);
        if (!fresh) {
            it->second = it->second + c;
            if (ScalarOps<S>::is_zero(it->second)) terms_.erase(it);
        }
    }

    SchurVector operator-() const {
        SchurVector r(order_);
        for (const auto& [p, c] : terms_) r.terms_.emplace(p, -c);
        return r;
    }
    SchurVector& operator+=(const SchurVector& o) {
        if (order_ != o.order_)
            throw std::invalid_argument("SchurVector: mismatched truncation orders");
        for (const auto& [p, c] : o.terms_) add(p, c);
        return *this;
    }
    SchurVector& operator-=(const SchurVector& o) {
        if (order_ != o.order_)
            throw std::invalid_argument("SchurVector: mismatched truncation orders");
        for (const auto& [p, c] : o.terms_) add(p, -c);
        return *this;
    }
    friend SchurVector operator+(SchurVector a, const SchurVector& b) { return a += b; }
    friend SchurVector operator-(SchurVector a, const SchurVector& b) { return a -= b; }

    SchurVector scaled(const S& c) const {
        SchurVector r(order_);
        for (const auto& [p, v] : terms_) r.add(p, v * c);
        return r;
    }

    friend bool operator==(const SchurVector& a, const SchurVector& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

private:
    int order_;
    Terms terms_;
};

namespace detail {

// q_n -> (-1)^{n+1} q_n; sends the h generating series to the e one.
inline WeightedSeries<Rat> alternate_vars(const WeightedSeries<Rat>& f) {
    WeightedSeries<Rat> r(f.order());
    for (const auto& [m, c] : f.terms()) {
        int even_deg = 0;
        for (size_t i = 1; i < m.size(); i += 2) even_deg += m[i];
        r.add_term(m, even_deg % 2 ? -c : c);
    }
    return r;
}

// det(h_{k_i - i + j})_{i,j <= n} by subset dynamic programming over columns.
inline WeightedSeries<Rat> jacobi_trudi_det(const std::vector<int>& k, int order,
                                            bool elementary) {
    int n = static_cast<int>(k.size());
    if (n == 0) return WeightedSeries<Rat>::one(order);
    if (n > 20) throw std::invalid_argument("jacobi_trudi_det: matrix too large");
    auto entry = [&](int i, int j) { // 1-based
        WeightedSeries<Rat> h = h_poly<Rat>(k[i - 1] - i + j, order);
        return elementary ? alternate_vars(h) : h;
    };
    std::vector<WeightedSeries<Rat>> dp(size_t(1) << n);
    dp[0] = WeightedSeries<Rat>::one(order);
    for (unsigned mask = 1; mask < dp.size(); ++mask) {
        int i = __builtin_popcount(mask); // row being expanded
        WeightedSeries<Rat> acc(order);
        int t = 0;
        for (int j = 1; j <= n; ++j) {
            if (!(mask & (1u << (j - 1)))) continue;
            ++t; // j is the t-th smallest column of the subset
            WeightedSeries<Rat> contrib = entry(i, j) * dp[mask & ~(1u << (j - 1))];
            if ((i + t) % 2 == 0)
                acc += contrib;
            else
                acc -= contrib;
        }
        dp[mask] = std::move(acc);
    }
    return dp.back();
}

} // namespace detail

/// Schur polynomial s_lambda in the q variables (Jacobi-Trudi determinant),
/// truncated at the given order. Cached per (lambda, order).
inline const WeightedSeries<Rat>& schur_poly_rat(const Partition& p, int order) {
    static std::map<std::pair<Partition, int>, WeightedSeries<Rat>> cache;
    auto key = std::make_pair(p, order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    // use whichever of the h / e determinants is smaller
    WeightedSeries<Rat> s(order);
    if (p.weight() <= order) {
        if (p.length() <= p.part(1)) {
            s = detail::jacobi_trudi_det(p.parts(), order, false);
        } else {
            s = detail::jacobi_trudi_det(p.conjugate().parts(), order, true);
        }
    }
    return cache.emplace(std::move(key), std::move(s)).first->second;
}

template <class S>
WeightedSeries<S> schur_poly(const Partition& p, int order) {
    const auto& s = schur_poly_rat(p, order);
    WeightedSeries<S> r(order);
    for (const auto& [m, c] : s.terms()) r.add_term(m, ScalarOps<S>::from_rat(c));
    return r;
}

template <class S>
WeightedSeries<S> to_series(const SchurVector<S>& v) {
    WeightedSeries<S> r(v.order());
    for (const auto& [p, c] : v.terms()) r += schur_poly<S>(p, v.order()).scaled(c);
    return r;
}

namespace detail {

// Exact LU (with row pivoting) of the weight-w change of basis from Schur
// coefficients to monomial coefficients. Rows are monomials, columns are
// partitions, both in canonical order. The matrix is over Rat even when the
// series being converted is not.
struct SliceLU {
    std::vector<Partition> parts;
    std::vector<Mono> monos;
    std::vector<std::vector<Rat>> lu; // L below the diagonal, U on and above
    std::vector<int> perm;            // row permutation applied first
};

inline Mono mono_of_partition(const Partition& p) {
    Mono m;
    if (!p.empty()) m.resize(p.part(1), 0);
    for (int x : p.parts()) m[x - 1] += 1;
    return m;
}

inline const SliceLU& slice_lu(int w) {
    static std::map<int, SliceLU> cache;
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;

    SliceLU s;
    s.parts = partitions_of(w);
    for (const auto& p : s.parts) s.monos.push_back(mono_of_partition(p));
    int n = static_cast<int>(s.parts.size());
    std::map<Mono, int> mono_index;
    for (int i = 0; i < n; ++i) mono_index.emplace(s.monos[i], i);

    s.lu.assign(n, std::vector<Rat>(n, Rat(0)));
    for (int col = 0; col < n; ++col) {
        const auto& sp = schur_poly_rat(s.parts[col], w);
        for (const auto& [m, c] : sp.terms()) {
            if (mono_weight(m) != w) continue;
            s.lu[mono_index.at(m)][col] = c;
        }
    }

    s.perm.resize(n);
    for (int i = 0; i < n; ++i) s.perm[i] = i;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!s.lu[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::logic_error("slice_lu: singular Schur transition matrix");
        std::swap(s.lu[col], s.lu[piv]);
        std::swap(s.perm[col], s.perm[piv]);
        for (int r = col + 1; r < n; ++r) {
            if (s.lu[r][col].is_zero()) continue;
            Rat f = s.lu[r][col] / s.lu[col][col];
            s.lu[r][col] = f;
            for (int c2 = col + 1; c2 < n; ++c2)
                s.lu[r][c2] -= f * s.lu[col][c2];
        }
    }
    return cache.emplace(w, std::move(s)).first->second;
}

} // namespace detail

/// Expands a weighted series over the Schur basis, weight slice by weight
/// slice. Exact: the change of basis is solved with a cached rational LU, so
/// the scalar type only needs addition and division by rationals.
template <class S>
SchurVector<S> to_schur_basis(const WeightedSeries<S>& f) {
    SchurVector<S> out(f.order());
    for (int w = 0; w <= f.order(); ++w) {
        const auto& lu = detail::slice_lu(w);
        int n = static_cast<int>(lu.parts.size());
        std::vector<S> b(n, ScalarOps<S>::zero());
        bool any = false;
        for (int i = 0; i < n; ++i) {
            b[i] = f.coeff(lu.monos[lu.perm[i]]);
            any = any || !ScalarOps<S>::is_zero(b[i]);
        }
        if (!any) continue;
        for (int i = 0; i < n; ++i) // L y = Pb
            for (int j = 0; j < i; ++j)
                if (!lu.lu[i][j].is_zero())
                    b[i] = b[i] - ScalarOps<S>::mul_rat(b[j], lu.lu[i][j]);
        for (int i = n - 1; i >= 0; --i) { // U x = y
            for (int j = i + 1; j < n; ++j)
                if (!lu.lu[i][j].is_zero())
                    b[i] = b[i] - ScalarOps<S>::mul_rat(b[j], lu.lu[i][j]);
            b[i] = ScalarOps<S>::div_rat(b[i], lu.lu[i][i]);
        }
        for (int i = 0; i < n; ++i) out.add(lu.parts[i], b[i]);
    }
    return out;
}

/// Littlewood-Richardson expansion s_lambda s_mu = sum c^nu s_nu, computed by
/// multiplying the polynomials and re-expanding (exact at weight
/// |lambda| + |mu|).
inline const SchurVector<Rat>& lr_expand(const Partition& la, const Partition& mu) {
    static std::map<std::pair<Partition, Partition>, SchurVector<Rat>> cache;
    auto key = (mu < la) ? std::make_pair(mu, la) : std::make_pair(la, mu); // product is symmetric
    auto it = cache.find(key);
    if (it == cache.end()) {
        int N = la.weight() + mu.weight();
        WeightedSeries<Rat> prod = schur_poly<Rat>(la, N) * schur_poly<Rat>(mu, N);
        it = cache.emplace(key, to_schur_basis(prod)).first;
    }
    return it->second;
}

inline Rat lr_coefficient(const Partition& la, const Partition& mu, const Partition& nu) {
    if (nu.weight() != la.weight() + mu.weight()) return Rat(0);
    return lr_expand(la, mu).coeff(nu);
}

/// Verifies the Cauchy kernel identity exp(sum k q_k q'_k) = sum_l s_l(q)s_l(q')
/// through joint weight 2N (all partitions with |lambda| <= N).
inline bool cauchy_check(int N) {
    BiSeries<Rat> lin(2 * N);
    for (int k = 1; k <= N; ++k) {
        Mono m(k, 0);
        m[k - 1] = 1;
        lin.add_term(m, m, Rat(k));
    }
    BiSeries<Rat> lhs = biseries_exp(lin);
    BiSeries<Rat> rhs(2 * N);
    for (const auto& p : partitions_up_to(N)) {
        const auto& sp = schur_poly_rat(p, N);
        rhs.add_tensor(sp, sp, Rat(1));
    }
    return lhs == rhs;
}

/// Determinant of a small matrix over any coefficient ring (subset DP, no
/// divisions).
template <class S>
S det_small(const std::vector<std::vector<S>>& m) {
    int n = static_cast<int>(m.size());
    if (n == 0) return ScalarOps<S>::one();
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("det_small: not square");
    if (n > 20) throw std::invalid_argument("det_small: matrix too large");
    std::vector<S> dp(size_t(1) << n, ScalarOps<S>::zero());
    dp[0] = ScalarOps<S>::one();
    for (unsigned mask = 1; mask < dp.size(); ++mask) {
        int i = __builtin_popcount(mask);
        S acc = ScalarOps<S>::zero();
        int t = 0;
        for (int j = 1; j <= n; ++j) {
            if (!(mask & (1u << (j - 1)))) continue;
            ++t;
            S contrib = m[i - 1][j - 1] * dp[mask & ~(1u << (j - 1))];
            acc = ((i + t) % 2 == 0) ? acc + contrib : acc - contrib;
        }
        dp[mask] = std::move(acc);
    }
    return dp.back();
}

} // namespace tauforge
