#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>

namespace reglab {

// Exact rational number. Always reduced, denominator always positive,
// zero stored as 0/1. Serializes as a decimal-free "p/q" string.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d) : v_(n, d) { require_nonzero_den(); v_.canonicalize(); }
    Rational(const mpz_class& n, const mpz_class& d) : v_(n, d) {
        require_nonzero_den();
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { require_nonzero_den(); v_.canonicalize(); }

    static Rational parse(const std::string& text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string::npos)
                return Rational(mpz_class(text), mpz_class(1));
            return Rational(mpz_class(text.substr(0, slash)),
                            mpz_class(text.substr(slash + 1)));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("not a rational: \"" + text + "\"");
        }
    }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        return Rational(mpq_class(1 / v_));
    }

    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        Rational base = e > 0 ? *this : inverse();
        unsigned long k = e > 0 ? static_cast<unsigned long>(e)
                                : static_cast<unsigned long>(-e);
        Rational acc(1);
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

private:
    void require_nonzero_den() {
        if (sgn(v_.get_den()) == 0) throw std::domain_error("zero denominator");
    }

    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace reglab
