#include "tauforge/verify.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include "tauforge/hierarchy.hpp"
#include "tauforge/models.hpp"
#include "tauforge/param_poly.hpp"
#include "tauforge/partition.hpp"
#include "tauforge/satokit.hpp"
#include "tauforge/schur.hpp"
#include "tauforge/series.hpp"

namespace tauforge {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CheckResult item(int crit, std::string name, bool pass, std::string detail = "") {
    return CheckResult{crit, std::move(name), pass, std::move(detail)};
}

AffineMatrix<Rat> random_affine(std::uint64_t seed) {
    return AffineMatrix<Rat>([seed](int m, int n) {
        return hash_rat(seed, static_cast<std::uint64_t>(m) + 1, static_cast<std::uint64_t>(n) + 1);
    });
}

GSequence<Rat> random_g(std::uint64_t seed, int N) {
    std::vector<Rat> g{Rat(1)};
    for (int n = 1; n <= N; ++n) g.push_back(hash_rat(seed, 0, n));
    return GSequence<Rat>::from_g(std::move(g));
}

std::vector<Rat> random_b(std::uint64_t seed, int N) {
    static const Rat pool[6] = {Rat(1), Rat(-1), Rat(1, 2), Rat(-1, 2), Rat(2), Rat(-2)};
    std::vector<Rat> b{Rat(0)};
    for (int n = 1; n <= N; ++n) b.push_back(pool[mix64(seed ^ mix64(n)) % 6]);
    return b;
}

template <CoeffRing S>
std::string first_diff(const SchurVector<S>& a, const SchurVector<S>& b) {
    for (const auto& la : partitions_up_to(std::min(a.order(), b.order()))) {
        S x = a.coeff(la);
        S y = b.coeff(la);
        if (!ScalarOps<S>::is_zero(x - y))
            return la.str() + ": " + ScalarOps<S>::str(x) + " vs " + ScalarOps<S>::str(y);
    }
    return "";
}

ParamPoly lin(long a1, long a0) { return ParamPoly(std::vector<Rat>{Rat(a0), Rat(a1)}); }
ParamPoly quad(long a2, long a1, long a0) {
    return ParamPoly(std::vector<Rat>{Rat(a0), Rat(a1), Rat(a2)});
}
ParamPoly cubic(long a3, long a2, long a1, long a0) {
    return ParamPoly(std::vector<Rat>{Rat(a0), Rat(a1), Rat(a2), Rat(a3)});
}

/// The printed weight <= 6 coefficient table of the one-parameter model.
/// Three rows are corrected where the printed table is inconsistent with its
/// own scaling constraint: (3,3) is read at degree 6 (stray factor), and the
/// (4,1) and (2,2,1,1) values are the ones the constraint derives from their
/// neighbors; every other row is verbatim.
const std::vector<std::pair<Partition, ParamPoly>>& appendix_a_table() {
    static const auto rows = [] {
        ParamPoly C = ParamPoly::var();
        auto row = [&](std::vector<int> parts, std::vector<ParamPoly> factors, long den) {
            ParamPoly v(1);
            for (const auto& f : factors) v = v * f;
            return std::make_pair(Partition(std::move(parts)), v.div_rat(Rat(den)));
        };
        std::vector<std::pair<Partition, ParamPoly>> t;
        t.push_back(row({1}, {C}, 1));
        t.push_back(row({2}, {C, lin(1, 3)}, 2));
        t.push_back(row({1, 1}, {C, lin(1, -1)}, 2));
        t.push_back(row({3}, {C, lin(1, 3), lin(1, 7)}, 6));
        t.push_back(row({2, 1}, {C, lin(1, 3), lin(2, -1)}, 6));
        t.push_back(row({1, 1, 1}, {C, lin(1, 1), lin(1, -3)}, 6));
        t.push_back(row({4}, {C, lin(1, 3), lin(1, 9), lin(1, 10)}, 24));
        t.push_back(row({3, 1}, {C, lin(1, 3), quad(1, 7, -2)}, 8));
        t.push_back(row({2, 2}, {C, C, lin(1, 1), lin(1, 3)}, 12));
        t.push_back(row({2, 1, 1}, {C, lin(1, 1), lin(1, 3), lin(1, -2)}, 8));
        t.push_back(row({1, 1, 1, 1}, {C, lin(1, 1), lin(1, 3), lin(1, -6)}, 24));
        t.push_back(row({5}, {C, lin(1, 3), lin(1, 10), quad(1, 27, 186)}, 120));
        // printed bracket duplicates the (2,1,1,1) row; the value below is the
        // one forced by the scaling constraint from the (4) and (5) rows
        t.push_back(row({4, 1}, {C, lin(1, 3), lin(1, 10), quad(2, 19, -3)}, 60));
        t.push_back(row({3, 2}, {C, C, lin(1, 1), lin(1, 3), lin(1, 8)}, 24));
        t.push_back(row({3, 1, 1}, {C, lin(1, 1), lin(1, 3), quad(1, 6, -10)}, 20));
        t.push_back(row({2, 2, 1}, {C, C, C, lin(1, 1), lin(1, 3)}, 24));
        t.push_back(row({2, 1, 1, 1}, {C, lin(1, 1), lin(1, 3), quad(2, -3, -30)}, 60));
        t.push_back(row({1, 1, 1, 1, 1}, {C, lin(1, 1), lin(1, 3), lin(1, 6), lin(1, -10)}, 120));
        t.push_back(row({6}, {C, lin(1, 3), lin(1, 10), lin(1, 21), quad(1, 31, 270)}, 720));
        t.push_back(row({5, 1}, {C, lin(1, 3), lin(1, 10), cubic(1, 28, 201, -18)}, 144));
        t.push_back(row({4, 2}, {C, C, lin(1, 1), lin(1, 3), lin(1, 10), lin(1, 11)}, 80));
        t.push_back(row({4, 1, 1}, {C, lin(1, 1), lin(1, 3), lin(1, 10), quad(1, 9, -9)}, 72));
        t.push_back(row({3, 3}, {C, C, lin(1, 1), lin(1, 3), lin(1, 3), lin(1, 10)}, 144));
        t.push_back(row({3, 2, 1}, {C, C, lin(1, 1), lin(1, 3), quad(4, 34, 15)}, 180));
        t.push_back(row({3, 1, 1, 1}, {C, lin(1, 1), lin(1, 3), cubic(1, 7, -15, -90)}, 72));
        t.push_back(row({2, 2, 2}, {C, C, lin(1, 1), lin(1, 3), quad(1, 1, 6)}, 144));
        // printed denominator repeats the 144 of the neighboring rows; the
        // scaling constraint from the (2,2,1) row forces 80
        t.push_back(row({2, 2, 1, 1}, {C, C, lin(1, 1), lin(1, 3), quad(1, 1, -10)}, 80));
        t.push_back(row({2, 1, 1, 1, 1}, {C, lin(1, 1), lin(1, 3), lin(1, 6), quad(1, -5, -30)}, 144));
        t.push_back(row({1, 1, 1, 1, 1, 1}, {C, lin(1, 1), lin(1, 3), lin(1, 6), lin(1, 10), lin(1, -15)}, 720));
        return t;
    }();
    return rows;
}

/// The printed weight <= 6 expansion of the topological tau function;
/// partitions of weight 6 missing from the display carry coefficient 0.
const std::vector<std::pair<Partition, Rat>>& wk_printed_table() {
    static const std::vector<std::pair<Partition, Rat>> rows = {
        {Partition(std::vector<int>{}), Rat(1)},
        {Partition({3}), Rat(41, 24)},
        {Partition({2, 1}), Rat(-5, 24)},
        {Partition({1, 1, 1}), Rat(-7, 24)},
        {Partition({6}), Rat(9241, 1152)},
        {Partition({5, 1}), Rat(-385, 1152)},
        {Partition({4, 2}), Rat(0)},
        {Partition({4, 1, 1}), Rat(-455, 1152)},
        {Partition({3, 3}), Rat(205, 576)},
        {Partition({3, 2, 1}), Rat(287, 576)},
        {Partition({3, 1, 1, 1}), Rat(25, 1152)},
        {Partition({2, 2, 2}), Rat(-35, 576)},
        {Partition({2, 2, 1, 1}), Rat(0)},
        {Partition({2, 1, 1, 1, 1}), Rat(-385, 1152)},
        {Partition({1, 1, 1, 1, 1, 1}), Rat(-455, 1152)},
    };
    return rows;
}

} // namespace

Rat hash_rat(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
    static const Rat pool[16] = {
        Rat(0),     Rat(1),      Rat(-1),    Rat(2),     Rat(-2),    Rat(1, 2),
        Rat(-1, 2), Rat(1, 3),   Rat(-1, 3), Rat(3),     Rat(2, 3),  Rat(-3, 2),
        Rat(1, 4),  Rat(-2, 5),  Rat(5, 2),  Rat(-5)};
    return pool[mix64(seed ^ mix64(i ^ mix64(j))) % 16];
}

std::vector<CheckResult> suite_appendix_a() {
    std::vector<CheckResult> out;
    ParamPoly C = ParamPoly::var();
    auto t = tau_E(bgw_affine_matrix(C), bgw_g_sequence(C, 6), 6, TauEMethod::determinant);
    for (const auto& [la, want] : appendix_a_table()) {
        ParamPoly got = t.coeff(la);
        out.push_back(item(1, "appendix-a " + la.str(), got == want,
                           got == want ? "" : "got " + got.str() + ", table " + want.str()));
    }
    return out;
}

std::vector<CheckResult> suite_wk_terms() {
    std::vector<CheckResult> out;
    auto t = tau_E(wk_affine_matrix(), wk_g_sequence(6), 6, TauEMethod::determinant);
    for (const auto& [la, want] : wk_printed_table()) {
        Rat got = t.coeff(la);
        out.push_back(item(2, "wk-terms " + la.str(), got == want,
                           got == want ? "" : "got " + got.str() + ", printed " + want.str()));
    }
    bool off = true;
    std::string bad;
    for (int w : {1, 2, 4, 5})
        for (const auto& la : partitions_of(w))
            if (!t.coeff(la).is_zero() && off) {
                off = false;
                bad = la.str();
            }
    out.push_back(item(2, "wk-terms off-support weights vanish", off, bad));
    return out;
}

std::vector<CheckResult> suite_operators() {
    std::vector<CheckResult> out;
    for (int w = 0; w <= 8; ++w) {
        bool pass = true;
        std::string detail;
        for (const auto& la : partitions_of(w)) {
            auto comb = apply_T(0, SchurVector<Rat>::unit(la, w));
            auto resi = to_schur_basis(residue_T0(to_series(SchurVector<Rat>::unit(la, w))));
            if (!(comb == resi)) {
                pass = false;
                detail = "T_0(s_" + la.str() + "): " + first_diff(comb, resi);
                break;
            }
        }
        out.push_back(item(4, "T_0 residue equivalence, weight " + std::to_string(w), pass, detail));
    }
    for (int n = 0; n <= 8; ++n) {
        bool pass = true;
        std::string detail;
        for (int w = 0; w + n <= 8; ++w)
            for (const auto& la : partitions_of(w)) {
                auto ins = apply_T(n, SchurVector<Rat>::unit(la, w + n));
                auto det = apply_T_det(n, la);
                if (!(ins == det)) {
                    pass = false;
                    detail = "T_" + std::to_string(n) + "(s_" + la.str() + "): " + first_diff(ins, det);
                    break;
                }
            }
        out.push_back(item(4, "T_" + std::to_string(n) + " insertion = determinant", pass, detail));
    }
    for (int k = 0; k < 5; ++k) {
        auto g = GSequence<Rat>::from_b(random_b(0xb0 + k, 6));
        SchurVector<Rat> v(6);
        for (const auto& la : partitions_up_to(6))
            v.add(la, hash_rat(0x5e + k, la.weight(), la.length()));
        auto lhs = conjugated_T0(g, v);
        auto rhs = conjugated_T0_via_residue(g, v);
        out.push_back(item(4, "conjugation identity, b-vector " + std::to_string(k + 1), lhs == rhs,
                           lhs == rhs ? "" : first_diff(lhs, rhs)));
    }
    return out;
}

namespace {

template <CoeffRing S>
CheckResult four_methods_item(const std::string& name, const AffineMatrix<S>& a,
                              const GSequence<S>& g, int N) {
    auto conj = tau_E(a, g, N, TauEMethod::conjugate);
    auto pre = tau_E(a, g, N, TauEMethod::preimage);
    auto det = tau_E(a, g, N, TauEMethod::determinant);
    auto lr = tau_E(a, g, N, TauEMethod::littlewood_richardson);
    std::string detail;
    if (!(conj == pre)) detail = "conjugate vs preimage: " + first_diff(conj, pre);
    else if (!(pre == det)) detail = "preimage vs determinant: " + first_diff(pre, det);
    else if (!(det == lr)) detail = "determinant vs lr: " + first_diff(det, lr);
    return item(3, name, detail.empty(), detail);
}

} // namespace

std::vector<CheckResult> suite_identities() {
    std::vector<CheckResult> out;
    ParamPoly C = ParamPoly::var();
    out.push_back(four_methods_item<ParamPoly>("four methods, one-parameter model (symbolic)",
                                               bgw_affine_matrix(C), bgw_g_sequence(C, 6), 6));
    out.push_back(four_methods_item<Rat>("four methods, topological model", wk_affine_matrix(),
                                         wk_g_sequence(6), 6));
    for (int k = 0; k < 5; ++k)
        out.push_back(four_methods_item<Rat>("four methods, random instance " + std::to_string(k + 1),
                                             random_affine(0xa0 + k), random_g(0x60 + k, 6), 6));

    // det(c_{m_i,n_j}) = sum_k g_k sum_{mu in T_k^{-1}(la)} sgn(mu) pi_mu,
    // compared per partition for arbitrary data.
    for (int k = 0; k < 10; ++k) {
        auto a = random_affine(0x1d + k);
        auto g = random_g(0x2d + k, 6);
        bool pass = true;
        std::string detail;
        for (const auto& la : partitions_up_to(6)) {
            FrobeniusForm f = la.frobenius();
            std::vector<std::vector<Rat>> m(f.rank(), std::vector<Rat>(f.rank()));
            for (int i = 0; i < f.rank(); ++i)
                for (int j = 0; j < f.rank(); ++j)
                    m[i][j] = hook_coefficient(a, g, f.arms[i], f.legs[j]);
            Rat lhs = det_small(m);
            Rat rhs(0);
            for (int t = 0; t <= la.weight(); ++t)
                for (const auto& mu : t_preimage(la, t))
                    rhs += Rat(mu.sign) * g.g(t) * plucker(mu.part, a);
            if (lhs != rhs) {
                pass = false;
                detail = la.str() + ": det " + lhs.str() + ", preimage sum " + rhs.str();
                break;
            }
        }
        out.push_back(item(5, "hook determinant = preimage sum, instance " + std::to_string(k + 1),
                           pass, detail));
    }

    for (int k = 0; k < 5; ++k) {
        auto a = random_affine(0x33 + k);
        auto lhs = apply_T(0, tau_from_affine(a, 6));
        auto rhs = tau_from_affine(w_prime_transform(a), 6);
        out.push_back(item(6, "dual-point transform, instance " + std::to_string(k + 1), lhs == rhs,
                           lhs == rhs ? "" : first_diff(lhs, rhs)));
    }
    return out;
}

std::vector<CheckResult> suite_models() {
    std::vector<CheckResult> out;
    ParamPoly C = ParamPoly::var();

    out.push_back(item(7, "g' + g = theta(-z), symbolic, order 10", ode_check(C, 10)));

    {
        auto tau1 = tau_from_affine(bgw_affine_matrix(C), 7);
        auto r = string_check(tau1, StringVariant::eqstr1, C, 6);
        out.push_back(item(7, "odd scaling constraint on tau_1, weight 6", r.is_zero()));
    }
    {
        auto t = tau_E(bgw_affine_matrix(C), bgw_g_sequence(C, 7), 7, TauEMethod::determinant);
        auto r = string_check(t, StringVariant::eqstr2, C, 6);
        out.push_back(item(7, "full scaling constraint on tau_E, weight 6", r.is_zero()));
    }
    {
        auto tau1 = tau_from_affine(wk_affine_matrix(), 7);
        auto r = string_check(tau1, StringVariant::wk_string, Rat(0), 6);
        out.push_back(item(7, "string constraint on topological tau_1, weight 6", r.is_zero()));
    }
    out.push_back(item(7, "Virasoro kernel pair, orders (4,4)", virasoro_K_check(C, 4, 4)));
    out.push_back(item(7, "wave-function restriction, orders (4,4)", wave_restriction_check(C, 4, 4)));

    out.push_back(item(8, "line initial data (w = C/(1-x)^2, rho = 0)", line_initial_data_check(C, 6)));

    for (int m : {0, 2}) {
        auto rep = polynomiality(m, 10);
        std::string detail = "a_m sum " + rep.a_m_sum.str() + ", series " + rep.a_m_taylor.str() +
                             ", window [" + std::to_string(rep.window_lo) + "," +
                             std::to_string(rep.window_hi) + "]";
        out.push_back(item(10, "polynomiality m = " + std::to_string(m) +
                                   " (C = " + rep.parameter.str() + ")",
                           rep.ok(), detail));
    }

    {
        Rat c(1, 8);
        auto data = line_shift_data(to_series(tau_from_affine(bgw_affine_matrix(c), 4)));
        std::vector<Rat> tau2line(5, Rat(0));
        tau2line[0] = Rat(1);
        auto gs = extract_g(data, tau2line, 4);
        bool pass = true;
        for (int n = 0; n <= 4 && pass; ++n) pass = gs.g(n) == bgw_g(n, c);
        out.push_back(item(11, "g-extraction at C = 1/8", pass));
    }
    {
        auto data = line_shift_data(to_series(tau_from_affine(bgw_affine_matrix(C), 4)));
        std::vector<ParamPoly> tau2line(5, ParamPoly());
        tau2line[0] = ParamPoly(1);
        auto gs = extract_g(data, tau2line, 4);
        bool pass = true;
        for (int n = 0; n <= 4 && pass; ++n) pass = gs.g(n) == bgw_g(n, C);
        out.push_back(item(11, "g-extraction, symbolic", pass));
    }
    return out;
}

std::vector<CheckResult> suite_hierarchy() {
    std::vector<CheckResult> out;
    for (int n = 1; n <= 4; ++n)
        out.push_back(item(9, "K_" + std::to_string(2 * n) + " = 0", kdv_K(2 * n).is_zero()));
    {
        JetPoly<Rat> want;
        want.add_term({w_jet_id(0), w_jet_id(0)}, Rat(3, 2));
        want.add_term({w_jet_id(2)}, Rat(1, 4));
        out.push_back(item(9, "K_3 = 3/2 w^2 + 1/4 w_xx", kdv_K(3) == want));
    }
    {
        JetPoly<Rat> want;
        want.add_term({rho_jet_id(0), rho_jet_id(0)}, Rat(1));
        want.add_term({rho_jet_id(1)}, Rat(1));
        want.add_term({w_jet_id(0)}, Rat(2));
        out.push_back(item(9, "R_2 = rho^2 + rho_x + 2w", burgers_R(2) == want));
    }
    for (int i = 1; i <= 6; ++i)
        for (int j = i; j <= 6; ++j)
            out.push_back(item(9, "flow symmetry dR_" + std::to_string(i) + "/dq_" + std::to_string(j) +
                                      " = dR_" + std::to_string(j) + "/dq_" + std::to_string(i),
                               symmetry_check(i, j)));
    out.push_back(item(9, "q_1 flow is d_x on K_5", flow_derive(kdv_K(5), 1) == d_x(kdv_K(5))));
    out.push_back(item(9, "q_1 flow is d_x on R_5", flow_derive(burgers_R(5), 1) == d_x(burgers_R(5))));
    out.push_back(item(9, "integrate_x inverts d_x on K_5", integrate_x(d_x(kdv_K(5))) == kdv_K(5)));
    out.push_back(item(9, "integrate_x inverts d_x on R_4", integrate_x(d_x(burgers_R(4))) == burgers_R(4)));

    ParamPoly C = ParamPoly::var();
    out.push_back(item(9, "tau-vector flows, one-parameter model (symbolic), N = 5",
                       tau2_flow_check(bgw_affine_matrix(C), bgw_g_sequence(C, 5), 5, 4)));
    out.push_back(item(9, "tau-vector flows, topological model, N = 6",
                       tau2_flow_check(wk_affine_matrix(), wk_g_sequence(6), 6, 5)));
    return out;
}

std::vector<CheckResult> suite_bilinear() {
    std::vector<CheckResult> out;
    {
        auto v = tau_from_affine(bgw_affine_matrix(Rat(1, 8)), 5);
        out.push_back(item(12, "bilinear residual, one-parameter model at C = 1/8",
                           bilinear_residual(v, 4).is_zero()));
    }
    auto wk = tau_from_affine(wk_affine_matrix(), 5);
    out.push_back(item(12, "bilinear residual, topological model", bilinear_residual(wk, 4).is_zero()));
    {
        auto perturbed = wk;
        perturbed.add(Partition({2}), Rat(1));
        out.push_back(item(12, "bilinear residual detects a perturbed vector",
                           !bilinear_residual(perturbed, 4).is_zero()));
    }
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "appendix-a", "wk-terms", "operators", "identities", "models", "hierarchy", "bilinear"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string& name, bool include_slow) {
    static const std::map<std::string, std::vector<CheckResult> (*)()> table = {
        {"appendix-a", suite_appendix_a}, {"wk-terms", suite_wk_terms},
        {"operators", suite_operators},   {"identities", suite_identities},
        {"models", suite_models},         {"hierarchy", suite_hierarchy},
        {"bilinear", suite_bilinear}};
    if (name == "all") {
        std::vector<CheckResult> out;
        for (const auto& s : suite_names()) {
            if (s == "bilinear" && !include_slow) continue;
            auto part = table.at(s)();
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown suite: " + name);
    return it->second();
}

} // namespace tauforge
