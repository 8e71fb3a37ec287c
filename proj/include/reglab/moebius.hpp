#pragma once

#include <stdexcept>
#include <string>

#include "reglab/point.hpp"
#include "reglab/rational_fn.hpp"

namespace reglab {

// Fractional-linear map y -> (a y + b) / (c y + d) with exact coefficients.
template <class K>
class MoebiusMap {
public:
    MoebiusMap(K a, K b, K c, K d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
        if ((a_ * d_ - b_ * c_).is_zero())
            throw std::domain_error("degenerate Moebius map (ad - bc = 0)");
    }

    static MoebiusMap identity() { return MoebiusMap(K(1), K(0), K(0), K(1)); }
    static MoebiusMap translation(const K& t) { return MoebiusMap(K(1), t, K(0), K(1)); }
    static MoebiusMap scaling(const K& s) { return MoebiusMap(s, K(0), K(0), K(1)); }
    static MoebiusMap inversion() { return MoebiusMap(K(0), K(1), K(1), K(0)); }

    const K& a() const { return a_; }
    const K& b() const { return b_; }
    const K& c() const { return c_; }
    const K& d() const { return d_; }

    bool is_identity() const {
        return b_.is_zero() && c_.is_zero() && a_ == d_;
    }

    PointP1<K> apply(const PointP1<K>& p) const {
        if (p.is_infinity()) {
            if (c_.is_zero()) return PointP1<K>::infinity();
            return PointP1<K>::finite(a_ / c_);
        }
        const K den = c_ * p.value() + d_;
        if (den.is_zero()) return PointP1<K>::infinity();
        return PointP1<K>::finite((a_ * p.value() + b_) / den);
    }

    // this after other: (this o other)(y) = this(other(y))
    MoebiusMap compose(const MoebiusMap& o) const {
        return MoebiusMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                          c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
    }

    MoebiusMap inverse() const { return MoebiusMap(d_, K(0) - b_, K(0) - c_, a_); }

    RationalFn<K> as_rational_fn() const {
        return RationalFn<K>(Poly<K>(std::vector<K>{b_, a_}), Poly<K>(std::vector<K>{d_, c_}));
    }

    friend bool operator==(const MoebiusMap& m, const MoebiusMap& n) {
        // equal as projective maps: coefficient vectors proportional
        return (m.a_ * n.b_ == m.b_ * n.a_) && (m.a_ * n.c_ == m.c_ * n.a_) &&
               (m.a_ * n.d_ == m.d_ * n.a_) && (m.b_ * n.c_ == m.c_ * n.b_) &&
               (m.b_ * n.d_ == m.d_ * n.b_) && (m.c_ * n.d_ == m.d_ * n.c_);
    }

    std::string str() const {
        return "(" + a_.str() + "*y + " + b_.str() + ") / (" + c_.str() + "*y + " + d_.str() + ")";
    }

private:
    K a_, b_, c_, d_;
};

}  // namespace reglab
