#pragma once

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "reglab/rational.hpp"
#include "reglab/surd.hpp"

namespace reglab {

// Closed interval [lo, hi] with MPFR endpoints; every operation rounds
// outward, so enclosures stay valid at any precision.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 128) : prec_(prec) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    Interval(const Interval& o) : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval(Interval&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    Interval& operator=(Interval o) noexcept {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static Interval of(const Rational& r, mpfr_prec_t prec) {
        Interval x(prec);
        mpfr_set_q(x.lo_, r.raw().get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(x.hi_, r.raw().get_mpq_t(), MPFR_RNDU);
        return x;
    }

    static Interval sqrt_of(const mpz_class& d, mpfr_prec_t prec) {
        if (sgn(d) < 0) throw std::domain_error("sqrt of negative integer");
        Interval x(prec);
        mpfr_set_z(x.lo_, d.get_mpz_t(), MPFR_RNDD);
        mpfr_sqrt(x.lo_, x.lo_, MPFR_RNDD);
        mpfr_set_z(x.hi_, d.get_mpz_t(), MPFR_RNDU);
        mpfr_sqrt(x.hi_, x.hi_, MPFR_RNDU);
        return x;
    }

    static Interval of(const Surd& s, mpfr_prec_t prec) {
        Interval x = of(s.rat_part(), prec);
        if (!s.surd_coef().is_zero())
            x = x + of(s.surd_coef(), prec) * sqrt_of(s.radicand(), prec);
        return x;
    }

    mpfr_prec_t precision() const { return prec_; }
    const __mpfr_struct* lo() const { return lo_; }
    const __mpfr_struct* hi() const { return hi_; }

    bool contains_zero() const {
        return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
    }
    bool is_positive() const { return mpfr_sgn(lo_) > 0; }
    bool is_negative() const { return mpfr_sgn(hi_) < 0; }

    Interval operator-() const {
        Interval r(prec_);
        mpfr_neg(r.lo_, hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        return a + (-b);
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_t t;
        mpfr_init2(t, r.prec_);
        bool first = true;
        for (const auto* x : {a.lo_, a.hi_}) {
            for (const auto* y : {b.lo_, b.hi_}) {
                mpfr_mul(t, x, y, MPFR_RNDD);
                if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
                mpfr_mul(t, x, y, MPFR_RNDU);
                if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        }
        mpfr_clear(t);
        return r;
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) throw std::domain_error("interval division by zero");
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_t t;
        mpfr_init2(t, r.prec_);
        bool first = true;
        for (const auto* x : {a.lo_, a.hi_}) {
            for (const auto* y : {b.lo_, b.hi_}) {
                mpfr_div(t, x, y, MPFR_RNDD);
                if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
                mpfr_div(t, x, y, MPFR_RNDU);
                if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        }
        mpfr_clear(t);
        return r;
    }

    Interval abs() const {
        Interval r(prec_);
        if (mpfr_sgn(lo_) >= 0) return *this;
        if (mpfr_sgn(hi_) <= 0) return -*this;
        mpfr_set_zero(r.lo_, 1);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        if (mpfr_cmp(hi_, r.hi_) > 0) mpfr_set(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    // Natural log; requires a strictly positive interval.
    Interval log() const {
        if (mpfr_sgn(lo_) <= 0) throw std::domain_error("log of interval touching 0");
        Interval r(prec_);
        mpfr_log(r.lo_, lo_, MPFR_RNDD);
        mpfr_log(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    double mid_double() const {
        mpfr_t m;
        mpfr_init2(m, prec_);
        mpfr_add(m, lo_, hi_, MPFR_RNDN);
        mpfr_div_ui(m, m, 2, MPFR_RNDN);
        const double v = mpfr_get_d(m, MPFR_RNDN);
        mpfr_clear(m);
        return v;
    }

    double rad_double() const {
        mpfr_t m;
        mpfr_init2(m, prec_);
        mpfr_sub(m, hi_, lo_, MPFR_RNDU);
        mpfr_div_ui(m, m, 2, MPFR_RNDU);
        const double v = mpfr_get_d(m, MPFR_RNDU);
        mpfr_clear(m);
        return v;
    }

    std::string mid_str(int digits = 20) const {
        mpfr_t m;
        mpfr_init2(m, prec_);
        mpfr_add(m, lo_, hi_, MPFR_RNDN);
        mpfr_div_ui(m, m, 2, MPFR_RNDN);
        const std::string s = format(m, digits);
        mpfr_clear(m);
        return s;
    }

    std::string rad_str(int digits = 6) const {
        mpfr_t m;
        mpfr_init2(m, prec_);
        mpfr_sub(m, hi_, lo_, MPFR_RNDU);
        mpfr_div_ui(m, m, 2, MPFR_RNDU);
        const std::string s = format(m, digits);
        mpfr_clear(m);
        return s;
    }

private:
    static std::string format(mpfr_t v, int digits) {
        char buf[128];
        mpfr_snprintf(buf, sizeof buf, "%.*Re", digits, v);
        return buf;
    }

    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

// log|s| for a nonzero surd. The exact sign is known, so the enclosure of
// |s| can always be separated from 0 by raising the working precision.
inline Interval log_abs(const Surd& s, mpfr_prec_t prec) {
    if (s.is_zero()) throw std::domain_error("log|0|");
    for (mpfr_prec_t p = prec;; p *= 2) {
        Interval v = Interval::of(s, p).abs();
        if (v.is_positive()) return v.log();
        if (p > (1 << 24)) throw std::runtime_error("log_abs: enclosure did not separate from 0");
    }
}

// Cofactor-expansion determinant of a 3x3 interval matrix. The expansion
// order is fixed so that row negation mirrors the interval exactly.
inline Interval det3(const Interval m[3][3]) {
    Interval a = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    Interval b = m[1][0] * m[2][2] - m[1][2] * m[2][0];
    Interval c = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    return m[0][0] * a - m[0][1] * b + m[0][2] * c;
}

}  // namespace reglab
