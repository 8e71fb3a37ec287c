#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace reglab {

// Point on the projective line over K: a finite value or the point at
// infinity. Infinity is a first-class citizen, not a sentinel value.
template <class K>
class PointP1 {
public:
    static PointP1 finite(K v) {
        PointP1 p;
        p.infinite_ = false;
        p.value_ = std::move(v);
        return p;
    }
    static PointP1 infinity() { return PointP1(); }

    bool is_infinity() const { return infinite_; }
    const K& value() const {
        if (infinite_) throw std::domain_error("value of the point at infinity");
        return value_;
    }

    friend bool operator==(const PointP1& a, const PointP1& b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || a.value_ == b.value_;
    }
    friend bool operator<(const PointP1& a, const PointP1& b) {
        if (a.infinite_ != b.infinite_) return !a.infinite_;  // finite points first
        if (a.infinite_) return false;
        return a.value_ < b.value_;
    }

    std::string str() const { return infinite_ ? "inf" : value_.str(); }

private:
    PointP1() = default;
    bool infinite_ = true;
    K value_{};
};

}  // namespace reglab
