#pragma once

#include <stdexcept>
#include <vector>

#include "reglab/moebius.hpp"
#include "reglab/point.hpp"
#include "reglab/poly.hpp"
#include "reglab/surd.hpp"

namespace reglab {

// The monic quadratic (y-a-1)(y-b)(y-c) - (y-a)(y-b-1)(y-c-1): the cleared
// form of (y-a-1)/(y-a) = (y-b-1)(y-c-1)/((y-b)(y-c)). The cubic terms
// cancel identically, the y^2 coefficient is 1.
inline Poly<Rational> cross_ratio_quadratic(const Rational& a, const Rational& b,
                                            const Rational& c) {
    using P = Poly<Rational>;
    const P lin_a = P::linear_root(a);
    const P lin_a1 = P::linear_root(a + Rational(1));
    const P lin_b = P::linear_root(b);
    const P lin_b1 = P::linear_root(b + Rational(1));
    const P lin_c = P::linear_root(c);
    const P lin_c1 = P::linear_root(c + Rational(1));
    const P q = lin_a1 * lin_b * lin_c - lin_a * lin_b1 * lin_c1;
    if (q.degree() != 2 || !q.leading().is_one())
        throw std::logic_error("cross-ratio quadratic lost its shape");
    return q;
}

// Roots of a rational quadratic, kept exact. Real roots are quadratic surds
// in ascending order; a negative discriminant is stored as the conjugate
// pair re +- i*im and flagged.
struct QuadraticRoots {
    bool complex_pair = false;
    bool double_root = false;
    Surd root_low;   // real case (equal to root_high for a double root)
    Surd root_high;
    Rational re;     // complex case: roots = re +- i*im
    Surd im;         // positive

    // (y - low)(y - high), for the re-expansion check.
    Poly<Surd> expand() const {
        if (complex_pair) throw std::domain_error("expand() on a complex pair");
        return Poly<Surd>(std::vector<Surd>{root_low * root_high,
                                            Surd(0) - (root_low + root_high), Surd(1)});
    }
};

inline QuadraticRoots quadratic_roots(const Poly<Rational>& q) {
    if (q.degree() != 2) throw std::invalid_argument("quadratic_roots: degree != 2");
    const Rational a = q.coeff(2), b = q.coeff(1), c = q.coeff(0);
    const Rational disc = b * b - Rational(4) * a * c;
    QuadraticRoots out;
    const Rational p = -b / (Rational(2) * a);
    if (disc.is_zero()) {
        out.double_root = true;
        out.root_low = out.root_high = Surd(p);
        return out;
    }
    // sqrt(|n|/m) = (s/m) sqrt(d) with |n| m = s^2 d
    const Rational ad = abs(disc);
    auto [s, d] = extract_square(ad.num() * ad.den());
    const Rational mag = abs(Rational(s, ad.den()) / (Rational(2) * a));
    if (disc.sign() > 0) {
        const Surd half = Surd(Rational(0), mag, d);
        out.root_low = Surd(p) - half;
        out.root_high = Surd(p) + half;
        return out;
    }
    out.complex_pair = true;
    out.re = p;
    out.im = Surd(Rational(0), mag, d);
    return out;
}

// Fixed points of a Moebius map over Q. The identity fixes everything;
// otherwise there are one or two projective fixed points, possibly a
// complex-conjugate pair.
struct FixedPoints {
    bool all_points = false;
    bool complex_pair = false;
    std::vector<PointP1<Surd>> points;
};

inline FixedPoints moebius_fixed_points(const MoebiusMap<Rational>& m) {
    FixedPoints out;
    if (m.is_identity()) {
        out.all_points = true;
        return out;
    }
    if (m.c().is_zero()) {
        out.points.push_back(PointP1<Surd>::infinity());
        if (!(m.a() == m.d()))
            out.points.push_back(PointP1<Surd>::finite(Surd(m.b() / (m.d() - m.a()))));
        return out;
    }
    // c y^2 + (d - a) y - b = 0
    const Poly<Rational> q(std::vector<Rational>{-m.b(), m.d() - m.a(), m.c()});
    const QuadraticRoots r = quadratic_roots(q);
    if (r.complex_pair) {
        out.complex_pair = true;
        return out;
    }
    out.points.push_back(PointP1<Surd>::finite(r.root_low));
    if (!r.double_root) out.points.push_back(PointP1<Surd>::finite(r.root_high));
    return out;
}

}  // namespace reglab
