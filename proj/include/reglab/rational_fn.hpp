#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "reglab/poly.hpp"

namespace reglab {

// Rational function over a field K, stored reduced with monic denominator.
template <class K>
class RationalFn {
public:
    RationalFn() : num_(Poly<K>::zero()), den_(Poly<K>::one()) {}
    RationalFn(const K& c) : num_(Poly<K>(c)), den_(Poly<K>::one()) {}
    RationalFn(long c) : RationalFn(K(c)) {}
    RationalFn(Poly<K> num, Poly<K> den = Poly<K>::one()) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        reduce();
    }

    static RationalFn x() { return RationalFn(Poly<K>::x()); }

    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    K constant_value() const {
        if (!is_constant()) throw std::domain_error("rational function is not constant");
        return num_.coeff(0) / den_.coeff(0);
    }

    // Degree as a map P1 -> P1.
    int map_degree() const { return std::max(num_.degree(), den_.degree()); }

    K eval(const K& x) const {
        const K d = den_.eval(x);
        if (d.is_zero()) throw std::domain_error("evaluation at a pole");
        return num_.eval(x) / d;
    }

    RationalFn inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero function");
        return RationalFn(den_, num_);
    }

    RationalFn operator-() const { return RationalFn(-num_, den_); }

    friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
        return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
        return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
        if (b.is_zero()) throw std::domain_error("division by zero function");
        return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const RationalFn& a, const RationalFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RationalFn pow(long e) const {
        if (e >= 0) return RationalFn(num_.pow(e), den_.pow(e));
        return inverse().pow(-e);
    }

    std::string str(const std::string& var = "y") const {
        if (den_ == Poly<K>::one()) return num_.str(var);
        return "(" + num_.str(var) + ") / (" + den_.str(var) + ")";
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = Poly<K>::one();
            return;
        }
        const Poly<K> g = Poly<K>::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly<K>::divrem(num_, g).first;
            den_ = Poly<K>::divrem(den_, g).first;
        }
        const K lead = den_.leading();
        if (!lead.is_one()) {
            const K inv = K(1) / lead;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly<K> num_;
    Poly<K> den_;
};

}  // namespace reglab
