#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tauforge/rational.hpp"
#include "tauforge/satokit.hpp"
#include "tauforge/scalar.hpp"
#include "tauforge/series.hpp"

namespace tauforge {

/// Jet variable id: w^(k) is 2k, rho^(k) is 2k+1. x-derivation adds 2.
inline int w_jet_id(int k) { return 2 * k; }
inline int rho_jet_id(int k) { return 2 * k + 1; }

inline std::string jet_name(int id) {
    std::string base = (id % 2 == 0) ? "w" : "rho";
    int k = id / 2;
    if (k == 0) return base;
    if (k == 1) return base + "_x";
    if (k == 2) return base + "_xx";
    return base + "_" + std::to_string(k) + "x";
}

/// Polynomial in the jet variables of the two dependent fields. Monomials are
/// ascending-sorted id multisets.
template <CoeffRing S>
class JetPoly {
public:
    using Mono = std::vector<int>;
    using Terms = std::map<Mono, S>;

    JetPoly() = default;

    static JetPoly constant(const S& c) {
        JetPoly p;
        p.add_term({}, c);
        return p;
    }
    static JetPoly variable(int id) {
        JetPoly p;
        p.add_term({id}, ScalarOps<S>::one());
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    S coeff(Mono m) const {
        std::sort(m.begin(), m.end());
        auto it = terms_.find(m);
        return it == terms_.end() ? ScalarOps<S>::zero() : it->second;
    }

    void add_term(Mono m, const S& c) {
        if (ScalarOps<S>::is_zero(c)) return;
        std::sort(m.begin(), m.end());
        auto [it, fresh] = terms_.emplace(std::move(m), c);
        if (!fresh) {
            it->second = it->second + c;
            if (ScalarOps<S>::is_zero(it->second)) terms_.erase(it);
        }
    }

    JetPoly& operator+=(const JetPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    JetPoly& operator-=(const JetPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, ScalarOps<S>::zero() - c);
        return *this;
    }
    friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
    friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }

    friend JetPoly operator*(const JetPoly& a, const JetPoly& b) {
        JetPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Mono m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                r.add_term(std::move(m), ca * cb);
            }
        return r;
    }

    JetPoly scaled_rat(const Rat& r) const {
        JetPoly p;
        for (const auto& [m, c] : terms_) p.add_term(m, ScalarOps<S>::mul_rat(c, r));
        return p;
    }

    bool operator==(const JetPoly& o) const { return terms_ == o.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += ScalarOps<S>::str(c);
            for (size_t i = 0; i < m.size();) {
                size_t j = i;
                while (j < m.size() && m[j] == m[i]) ++j;
                out += "*" + jet_name(m[i]);
                if (j - i > 1) out += "^" + std::to_string(j - i);
                i = j;
            }
        }
        return out;
    }

private:
    Terms terms_;
};

/// Total x-derivative: product rule, each id raised by 2.
template <CoeffRing S>
JetPoly<S> d_x(const JetPoly<S>& p) {
    JetPoly<S> r;
    for (const auto& [m, c] : p.terms())
        for (size_t i = 0; i < m.size(); ++i) {
            if (i > 0 && m[i] == m[i - 1]) continue;   // fold equal ids into one term
            size_t mult = 0;
            for (int id : m) mult += (id == m[i]);
            auto m2 = m;
            m2[i] += 2;
            r.add_term(std::move(m2), ScalarOps<S>::mul_rat(c, Rat(static_cast<long>(mult))));
        }
    return r;
}

/// Formal partial derivative with respect to a single jet variable.
template <CoeffRing S>
JetPoly<S> jet_partial(const JetPoly<S>& p, int id) {
    JetPoly<S> r;
    for (const auto& [m, c] : p.terms()) {
        size_t mult = 0;
        for (int v : m) mult += (v == id);
        if (mult == 0) continue;
        auto m2 = m;
        m2.erase(std::find(m2.begin(), m2.end(), id));
        r.add_term(std::move(m2), ScalarOps<S>::mul_rat(c, Rat(static_cast<long>(mult))));
    }
    return r;
}

namespace detail {

/// Descending-lex order on descending-sorted id vectors; a strict prefix loses.
/// Raising the largest id of a monomial is strictly monotone for this order,
/// which is what the greedy antiderivative below relies on.
inline bool jet_mono_less(const std::vector<int>& a, const std::vector<int>& b) {
    auto ia = a.rbegin();
    auto ib = b.rbegin();
    for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
        if (*ia != *ib) return *ia < *ib;
    }
    return ia == a.rend() && ib != b.rend();
}

} // namespace detail

/// Antiderivative in x: returns P with d_x(P) = p, no constant term. Works
/// greedily from the largest monomial; throws if p is not a total derivative,
/// naming the obstructing term.
template <CoeffRing S>
JetPoly<S> integrate_x(JetPoly<S> p) {
    JetPoly<S> out;
    while (!p.is_zero()) {
        auto lead = p.terms().begin();
        for (auto it = p.terms().begin(); it != p.terms().end(); ++it)
            if (detail::jet_mono_less(lead->first, it->first)) lead = it;
        auto m = lead->first;
        S c = lead->second;
        int top = m.back();
        if (top < 2) {
            JetPoly<S> bad;
            bad.add_term(m, ScalarOps<S>::one());
            throw std::domain_error("integrate_x: not a total x-derivative, obstruction at " + bad.str());
        }
        m.back() = top - 2;
        size_t mult = 0;
        for (int id : m) mult += (id == top - 2);
        JetPoly<S> step;
        step.add_term(m, ScalarOps<S>::mul_rat(c, Rat(1, static_cast<long>(mult))));
        out += step;
        p -= d_x(step);
    }
    return out;
}

/// K_1 = w, K_{2n} = 0, d_x K_{2n+1} = (2w d_x + w_x + 1/4 d_x^3) K_{2n-1}.
inline const JetPoly<Rat>& kdv_K(int n) {
    if (n < 1) throw std::invalid_argument("kdv_K: index must be positive");
    static std::map<int, JetPoly<Rat>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    JetPoly<Rat> val;
    if (n == 1) {
        val = JetPoly<Rat>::variable(w_jet_id(0));
    } else if (n % 2 == 0) {
        val = JetPoly<Rat>();
    } else {
        const auto& prev = kdv_K(n - 2);
        auto w = JetPoly<Rat>::variable(w_jet_id(0));
        auto wx = JetPoly<Rat>::variable(w_jet_id(1));
        auto rhs = (w * d_x(prev)).scaled_rat(Rat(2)) + wx * prev +
                   d_x(d_x(d_x(prev))).scaled_rat(Rat(1, 4));
        val = integrate_x(rhs);
    }
    return cache.emplace(n, std::move(val)).first->second;
}

namespace detail {

/// d_x^2 + 2 rho d_x + rho^2 + rho_x + 2w, the step operator of the R chain.
inline JetPoly<Rat> burgers_step(const JetPoly<Rat>& p) {
    auto rho = JetPoly<Rat>::variable(rho_jet_id(0));
    auto rhox = JetPoly<Rat>::variable(rho_jet_id(1));
    auto w = JetPoly<Rat>::variable(w_jet_id(0));
    return d_x(d_x(p)) + (rho * d_x(p)).scaled_rat(Rat(2)) +
           (rho * rho + rhox + w.scaled_rat(Rat(2))) * p;
}

} // namespace detail

/// R_1 = rho, R_2 = rho^2 + rho_x + 2w; odd steps feed in (rho + 3/2 d_x) K.
inline const JetPoly<Rat>& burgers_R(int n) {
    if (n < 1) throw std::invalid_argument("burgers_R: index must be positive");
    static std::map<int, JetPoly<Rat>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    JetPoly<Rat> val;
    auto rho = JetPoly<Rat>::variable(rho_jet_id(0));
    if (n == 1) {
        val = rho;
    } else if (n == 2) {
        auto rhox = JetPoly<Rat>::variable(rho_jet_id(1));
        auto w = JetPoly<Rat>::variable(w_jet_id(0));
        val = rho * rho + rhox + w.scaled_rat(Rat(2));
    } else if (n % 2 == 1) {
        const auto& K = kdv_K(n - 2);
        val = detail::burgers_step(burgers_R(n - 2)) + rho * K + d_x(K).scaled_rat(Rat(3, 2));
    } else {
        val = detail::burgers_step(burgers_R(n - 2));
    }
    return cache.emplace(n, std::move(val)).first->second;
}

/// d p / d q_n by the chain rule through the flows
///   d w^(i) / d q_n   = d_x^{i+1} K_n   (zero for even n),
///   d rho^(i) / d q_n = d_x^{i+1} R_n.
inline JetPoly<Rat> flow_derive(const JetPoly<Rat>& p, int n) {
    if (n < 1) throw std::invalid_argument("flow_derive: index must be positive");
    std::vector<int> ids;
    for (const auto& [m, c] : p.terms())
        for (int id : m)
            if (ids.empty() || ids.back() != id) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    JetPoly<Rat> out;
    std::vector<JetPoly<Rat>> dK, dR;      // d_x^{k+1} K_n, d_x^{k+1} R_n
    auto derived = [](std::vector<JetPoly<Rat>>& pow, const JetPoly<Rat>& base,
                      int k) -> const JetPoly<Rat>& {
        if (pow.empty()) pow.push_back(d_x(base));
        while (static_cast<int>(pow.size()) <= k) pow.push_back(d_x(pow.back()));
        return pow[k];
    };
    for (int id : ids) {
        int k = id / 2;
        if (id % 2 == 0) {
            if (n % 2 == 0) continue;
            out += jet_partial(p, id) * derived(dK, kdv_K(n), k);
        } else {
            out += jet_partial(p, id) * derived(dR, burgers_R(n), k);
        }
    }
    return out;
}

/// d R_i / d q_j = d R_j / d q_i, the compatibility behind the tau-vector.
inline bool symmetry_check(int i, int j) {
    return flow_derive(burgers_R(i), j) == flow_derive(burgers_R(j), i);
}

/// Substitutes truncated series for the fields: w^(k) and rho^(k) become the
/// k-fold q_1-derivatives of w and rho. Every jet series must still be exact
/// at the target order T; that bounds T by order(w) - 2 deg etc., checked here.
template <CoeffRing S>
WeightedSeries<S> evaluate_on(const JetPoly<Rat>& p, const WeightedSeries<S>& w,
                              const WeightedSeries<S>& rho, int T) {
    std::map<int, WeightedSeries<S>> jets;
    auto jet = [&](int id) -> const WeightedSeries<S>& {
        auto it = jets.find(id);
        if (it != jets.end()) return it->second;
        int k = id / 2;
        WeightedSeries<S> v = (id % 2 == 0) ? w : rho;
        for (int t = 0; t < k; ++t) v = partial(v, 1);
        if (v.order() < T)
            throw std::invalid_argument("evaluate_on: " + jet_name(id) + " is not exact at the target order");
        return jets.emplace(id, v.truncated(T)).first->second;
    };
    WeightedSeries<S> out(T);
    for (const auto& [m, c] : p.terms()) {
        auto term = WeightedSeries<S>::one(T);
        for (int id : m) term = term * jet(id);
        out += term.scaled_rat(c);
    }
    return out;
}

/// Verifies that the pair built from an affine instance solves the hierarchy
/// in tau form: with w = d^2/dq_1^2 log tau_1 and rho = d/dq_1 log tau_2,
///   d log tau_2 / d q_i = R_i(w, rho)   for i = 1..max_flow (weight N - i),
///   d log tau_1 / d q_{2k} = 0          for 2k <= max_flow.
template <CoeffRing S>
bool tau2_flow_check(const AffineMatrix<S>& a, const GSequence<S>& g, int N, int max_flow) {
    if (max_flow >= N) throw std::invalid_argument("tau2_flow_check: flow index must stay below the order");
    auto tau1 = to_series(tau_from_affine(a, N));
    auto tauE = to_series(tau_E(a, g, N, TauEMethod::determinant));
    auto log_tau1 = series_log(tau1);
    auto log_tau2 = series_log(tauE * series_inverse(tau1));
    auto w = partial(partial(log_tau1, 1), 1);
    auto rho = partial(log_tau2, 1);
    for (int i = 1; i <= max_flow; ++i) {
        int T = N - i;
        auto lhs = partial(log_tau2, i).truncated(T);
        if (!(lhs == evaluate_on(burgers_R(i), w, rho, T))) return false;
    }
    for (int k = 2; k <= max_flow; k += 2)
        if (!partial(log_tau1, k).is_zero()) return false;
    return true;
}

} // namespace tauforge
