#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "tauforge/rational.hpp"

namespace tauforge {

/// Polynomial in one formal parameter C with Rat coefficients.
///
/// Coefficients are stored ascending by degree with no trailing zeros, so
/// structural equality is polynomial equality. This is a ring, not a field:
/// only division by nonzero rationals (and by degree-0 units) is exact.
class ParamPoly {
public:
    ParamPoly() {}
    ParamPoly(const Rat& c) { if (!c.is_zero()) coeffs_.push_back(c); }
    ParamPoly(long n) : ParamPoly(Rat(n)) {}
    explicit ParamPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    /// The parameter itself.
    static ParamPoly var() { return ParamPoly(std::vector<Rat>{Rat(0), Rat(1)}); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; } // -1 for zero
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    Rat coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rat(0);
        return coeffs_[k];
    }

    ParamPoly operator-() const {
        ParamPoly r(*this);
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    ParamPoly& operator+=(const ParamPoly& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    ParamPoly& operator-=(const ParamPoly& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    ParamPoly& operator*=(const ParamPoly& o) { *this = *this * o; return *this; }

    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
        if (a.is_zero() || b.is_zero()) return ParamPoly();
        std::vector<Rat> r(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return ParamPoly(std::move(r));
    }

    friend bool operator==(const ParamPoly& a, const ParamPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }
    friend bool operator<(const ParamPoly& a, const ParamPoly& b) {
        return a.coeffs_.size() != b.coeffs_.size()
                   ? a.coeffs_.size() < b.coeffs_.size()
                   : std::lexicographical_compare(a.coeffs_.begin(), a.coeffs_.end(),
                                                  b.coeffs_.begin(), b.coeffs_.end());
    }

    ParamPoly& div_rat(const Rat& r) {
        if (r.is_zero()) throw std::domain_error("ParamPoly: division by zero rational");
        for (auto& c : coeffs_) c /= r;
        return *this;
    }

    /// Evaluates at a rational parameter value (Horner).
    Rat eval(const Rat& c) const {
        Rat r(0);
        for (size_t i = coeffs_.size(); i-- > 0;) r = r * c + coeffs_[i];
        return r;
    }

    /// Canonical human form, ascending degree: "1/2 + C - 3/2*C^2".
    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        bool first = true;
        for (size_t k = 0; k < coeffs_.size(); ++k) {
            const Rat& c = coeffs_[k];
            if (c.is_zero()) continue;
            Rat a = c.sign() < 0 ? -c : c;
            if (first) {
                out += (c.sign() < 0) ? "-" : "";
                first = false;
            } else {
                out += (c.sign() < 0) ? " - " : " + ";
            }
            if (k == 0) {
                out += a.str();
            } else {
                if (!a.is_one()) out += a.str() + "*";
                out += (k == 1) ? "C" : "C^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Rat> coeffs_;
};

} // namespace tauforge
