#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace tauforge {

/// Arbitrary-precision rational, always reduced, denominator > 0.
///
/// Thin value wrapper over mpq_class so that construction, parsing and
/// printing are canonical in one place. Equality is structural, which
/// coincides with numeric equality because values are kept reduced.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long n, long d) : v_(n, d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpz_class& n) : v_(n) {}
    Rat(const mpz_class& n, const mpz_class& d) : v_(n, d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Parses "p", "-p" or "p/q". Throws on malformed input or q = 0.
    static Rat parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("Rat: empty string");
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("Rat: cannot parse '" + s + "'");
        if (q.get_den() == 0) throw std::invalid_argument("Rat: zero denominator");
        q.canonicalize();
        return Rat(q);
    }

    const mpz_class num() const { return v_.get_num(); }
    const mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat inverse() const {
        if (is_zero()) throw std::domain_error("Rat: inverse of zero");
        return Rat(mpq_class(1) / v_);
    }

    Rat pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        mpq_class r(1), b(v_);
        for (long k = e; k > 0; k >>= 1) {
            if (k & 1) r *= b;
            b *= b;
        }
        return Rat(r);
    }

    /// "p/q", or "p" when the denominator is 1.
    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

private:
    mpq_class v_;
};

inline Rat rat_factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial of negative");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(r);
}

/// (2k+1)!! style odd double factorial; n may be any non-negative integer.
inline Rat rat_double_factorial(long n) {
    if (n < -1) throw std::invalid_argument("double factorial of negative");
    mpz_class r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
    return Rat(r);
}

inline Rat rat_binomial(long n, long k) {
    if (k < 0) return Rat(0);
    mpz_class r;
    if (n >= 0) {
        if (k > n) return Rat(0);
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                     static_cast<unsigned long>(k));
        return Rat(r);
    }
    // binomial(n,k) = (-1)^k binomial(k-n-1, k) for n < 0
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(k - n - 1),
                 static_cast<unsigned long>(k));
    return (k % 2 == 0) ? Rat(r) : -Rat(r);
}

inline Rat rat_pow_long(long base, long e) { return Rat(base).pow(e); }

} // namespace tauforge
