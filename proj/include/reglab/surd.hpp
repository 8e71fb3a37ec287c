#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>

#include "reglab/rational.hpp"

namespace reglab {

// Removes the largest square factor it can find: n = s^2 * d.
// Trial division up to a fixed bound, then a perfect-square fold of the
// cofactor. The returned d is guaranteed not to be a perfect square, which
// is the property the exact zero test of Surd relies on; it is squarefree
// for every magnitude this toolkit actually produces.
inline std::pair<mpz_class, mpz_class> extract_square(mpz_class n) {
    if (sgn(n) <= 0) throw std::domain_error("extract_square expects n > 0");
    mpz_class s(1), d(1);
    for (unsigned long i = 2; i <= 1024; ++i) {
        const unsigned long ii = i * i;
        if (mpz_class(ii) > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), ii)) {
            n /= ii;
            s *= i;
        }
        if (mpz_divisible_ui_p(n.get_mpz_t(), i)) {
            n /= i;
            d *= i;
        }
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        s *= r;
    } else {
        d *= n;
    }
    return {s, d};
}

// Real quadratic surd a + b*sqrt(d) with rational a, b and integer d >= 0.
// Rationals are stored with b = 0, d = 0. Arithmetic between two genuinely
// irrational values requires matching d; every computation in this toolkit
// lives inside a single Q(sqrt(d)) at a time.
class Surd {
public:
    Surd() = default;
    Surd(long n) : a_(n) {}
    Surd(const Rational& a) : a_(a) {}
    Surd(Rational a, Rational b, mpz_class d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
        normalize();
    }

    static Surd sqrt_of(const mpz_class& d) { return Surd(Rational(0), Rational(1), d); }

    const Rational& rat_part() const { return a_; }
    const Rational& surd_coef() const { return b_; }
    const mpz_class& radicand() const { return d_; }

    bool is_rational() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_one() const { return is_rational() && a_.is_one(); }

    Rational as_rational() const {
        if (!is_rational()) throw std::domain_error("surd is irrational");
        return a_;
    }

    Surd conjugate() const { return Surd(a_, -b_, d_); }

    // a^2 - b^2 d, the field norm down to Q.
    Rational field_norm() const { return a_ * a_ - b_ * b_ * Rational(d_, 1); }

    int sign() const {
        if (b_.is_zero()) return a_.sign();
        if (a_.is_zero()) return b_.sign();
        if (a_.sign() == b_.sign()) return a_.sign();
        const int c = field_norm().sign();  // sign of a^2 - b^2 d
        return c == 0 ? 0 : (c > 0 ? a_.sign() : b_.sign());
    }

    Surd operator-() const { return Surd(-a_, -b_, d_); }

    friend Surd operator+(const Surd& x, const Surd& y) {
        const mpz_class d = common_radicand(x, y);
        return Surd(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }
    friend Surd operator*(const Surd& x, const Surd& y) {
        const mpz_class d = common_radicand(x, y);
        const Rational dd(d, 1);
        return Surd(x.a_ * y.a_ + x.b_ * y.b_ * dd, x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    friend Surd operator/(const Surd& x, const Surd& y) { return x * y.inverse(); }

    Surd& operator+=(const Surd& o) { return *this = *this + o; }
    Surd& operator-=(const Surd& o) { return *this = *this - o; }
    Surd& operator*=(const Surd& o) { return *this = *this * o; }
    Surd& operator/=(const Surd& o) { return *this = *this / o; }

    Surd inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero surd");
        const Rational n = field_norm();  // nonzero: d is never a perfect square
        return Surd(a_ / n, -b_ / n, d_);
    }

    Surd pow(long e) const {
        if (e == 0) return Surd(1);
        Surd base = e > 0 ? *this : inverse();
        unsigned long k = e > 0 ? static_cast<unsigned long>(e)
                                : static_cast<unsigned long>(-e);
        Surd acc(1);
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    // Exact sign of x - y, defined across different radicands as well:
    // sign(A + B*sqrt(d) - C*sqrt(e)) splits into same-sign / squared cases.
    static int cmp_value(const Surd& x, const Surd& y) {
        if (compatible(x, y)) return (x - y).sign();
        // x - y = (a + b sqrt(dx)) + (-c sqrt(dy)) with both irrational parts present.
        const Surd lhs(x.a_ - y.a_, x.b_, x.d_);
        const int sl = lhs.sign();
        const int sr = (-y.b_).sign();
        if (sl == 0) return sr;
        if (sr == 0) return sl;
        if (sl == sr) return sl;
        // |lhs| vs |y.b_| sqrt(dy): compare lhs^2 - b^2 dy, a surd over dx.
        const Surd diff = lhs * lhs - Surd(y.b_ * y.b_ * Rational(y.d_, 1));
        const int c = diff.sign();
        return c == 0 ? 0 : (c > 0 ? sl : sr);
    }

    friend bool operator==(const Surd& x, const Surd& y) { return cmp_value(x, y) == 0; }
    friend std::strong_ordering operator<=>(const Surd& x, const Surd& y) {
        const int c = cmp_value(x, y);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    std::string str() const {
        if (is_rational()) return a_.str();
        const std::string root = "sqrt(" + d_.get_str() + ")";
        const Rational mag = b_.sign() < 0 ? -b_ : b_;
        const std::string term = mag.is_one() ? root : mag.str() + "*" + root;
        std::string out;
        if (!a_.is_zero()) out += a_.str();
        if (b_.sign() < 0)
            out += (out.empty() ? "-" : " - ") + term;
        else
            out += (out.empty() ? "" : " + ") + term;
        return out;
    }

private:
    void normalize() {
        if (b_.is_zero()) {
            d_ = 0;
            return;
        }
        if (sgn(d_) < 0) throw std::domain_error("negative radicand");
        if (d_ == 0) {
            b_ = Rational(0);
            return;
        }
        auto [s, d] = extract_square(d_);
        b_ *= Rational(s, 1);
        d_ = d;
        if (d_ == 1) {
            a_ += b_;
            b_ = Rational(0);
            d_ = 0;
        }
    }

    static bool compatible(const Surd& x, const Surd& y) {
        return x.is_rational() || y.is_rational() || x.d_ == y.d_;
    }

    static mpz_class common_radicand(const Surd& x, const Surd& y) {
        if (x.is_rational()) return y.d_;
        if (y.is_rational()) return x.d_;
        if (x.d_ != y.d_)
            throw std::domain_error("surds over different radicands: sqrt(" +
                                    x.d_.get_str() + ") vs sqrt(" + y.d_.get_str() + ")");
        return x.d_;
    }

    Rational a_;
    Rational b_;
    mpz_class d_ = 0;
};

}  // namespace reglab
