#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "reglab/rational.hpp"

namespace reglab {

// Univariate polynomial over a field K, coefficients lowest degree first,
// trailing zeros trimmed. K needs field arithmetic, construction from long,
// is_zero() and operator==.
template <class K>
class Poly {
public:
    Poly() = default;
    Poly(const K& c) { coeffs_.push_back(c); trim(); }
    Poly(long c) : Poly(K(c)) {}
    explicit Poly(std::vector<K> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(K(1)); }
    // x - r
    static Poly linear_root(const K& r) { return Poly(std::vector<K>{K(0) - r, K(1)}); }
    static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<K>& coeffs() const { return coeffs_; }
    K coeff(int i) const {
        return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : K(0);
    }
    const K& leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
        return coeffs_.back();
    }
    K constant() const { return coeff(0); }

    K eval(const K& x) const {
        K acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<K> d(coeffs_.size() - 1);
        for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * K(static_cast<long>(i));
        return Poly(std::move(d));
    }

    Poly operator-() const {
        std::vector<K> c(coeffs_.size());
        for (size_t i = 0; i < coeffs_.size(); ++i) c[i] = K(0) - coeffs_[i];
        return Poly(std::move(c));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> c(std::max(a.coeffs_.size(), b.coeffs_.size()), K(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] = c[i] + a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] = c[i] + b.coeffs_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<K> c(a.coeffs_.size() + b.coeffs_.size() - 1, K(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] = c[i + j] + a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const K& s) { return a * Poly(s); }
    friend Poly operator*(const K& s, const Poly& a) { return a * Poly(s); }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.coeffs_.size() != b.coeffs_.size()) return false;
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            if (!(a.coeffs_[i] == b.coeffs_[i])) return false;
        return true;
    }

    Poly pow(unsigned long e) const {
        Poly acc = one();
        Poly base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // Euclidean division; K is a field.
    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        Poly q;
        Poly r = a;
        const int db = b.degree();
        while (!r.is_zero() && r.degree() >= db) {
            const int shift = r.degree() - db;
            const K factor = r.leading() / b.leading();
            std::vector<K> mono(shift + 1, K(0));
            mono[shift] = factor;
            const Poly m{std::vector<K>(mono)};
            q = q + m;
            r = r - m * b;
        }
        return {q, r};
    }

    Poly monic() const {
        if (is_zero()) return *this;
        const K inv = K(1) / leading();
        std::vector<K> c(coeffs_.size());
        for (size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i] * inv;
        return Poly(std::move(c));
    }

    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            auto [q, r] = divrem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    std::string str(const std::string& var = "y") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const K& c = coeffs_[i];
            if (c.is_zero()) continue;
            if (!out.empty()) out += " + ";
            if (i == 0) {
                out += "(" + c.str() + ")";
            } else {
                if (!c.is_one()) out += "(" + c.str() + ")*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<K> coeffs_;
};

// Squarefree decomposition over a characteristic-zero field: returns
// pairwise-coprime squarefree factors with multiplicities (Yun).
template <class K>
std::vector<std::pair<Poly<K>, int>> squarefree_decomposition(const Poly<K>& p) {
    std::vector<std::pair<Poly<K>, int>> out;
    if (p.is_constant()) return out;
    Poly<K> a = p.monic();
    Poly<K> g = Poly<K>::gcd(a, a.derivative());
    Poly<K> w = Poly<K>::divrem(a, g).first;
    int mult = 1;
    while (w.degree() > 0) {
        Poly<K> y = Poly<K>::gcd(w, g);
        Poly<K> factor = Poly<K>::divrem(w, y).first;
        if (factor.degree() > 0) out.emplace_back(factor.monic(), mult);
        w = std::move(y);
        g = Poly<K>::divrem(g, w).first;
        ++mult;
    }
    return out;
}

// Bivariate polynomial in (x, y) represented as a polynomial in y whose
// coefficients are polynomials in x.
template <class K>
using PolyXY = Poly<Poly<K>>;

namespace detail {

// Determinant by cofactor expansion over any commutative ring element type.
// Fine for the small Sylvester matrices this toolkit builds.
template <class R>
R det_cofactor(std::vector<std::vector<R>> m) {
    const size_t n = m.size();
    if (n == 0) return R(1);
    if (n == 1) return m[0][0];
    R acc(0);
    int sign = 1;
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<R>> minor(n - 1, std::vector<R>(n - 1, R(0)));
        for (size_t r = 1; r < n; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[r - 1][cc++] = m[r][c];
            }
        }
        R term = m[0][j] * det_cofactor(std::move(minor));
        acc = sign > 0 ? acc + term : acc - term;
        sign = -sign;
    }
    return acc;
}

}  // namespace detail

// Resultant with respect to the outer (y) variable of two polynomials whose
// coefficients live in any commutative ring R (Sylvester determinant).
template <class R>
R resultant(const Poly<R>& p, const Poly<R>& q) {
    if (p.is_zero() || q.is_zero()) return R(0);
    const int dp = p.degree();
    const int dq = q.degree();
    if (dp == 0) return p.coeff(0).pow(dq);
    if (dq == 0) return q.coeff(0).pow(dp);
    const int n = dp + dq;
    std::vector<std::vector<R>> m(n, std::vector<R>(n, R(0)));
    for (int row = 0; row < dq; ++row)
        for (int i = 0; i <= dp; ++i) m[row][row + i] = p.coeff(dp - i);
    for (int row = 0; row < dp; ++row)
        for (int i = 0; i <= dq; ++i) m[dq + row][row + i] = q.coeff(dq - i);
    return detail::det_cofactor(std::move(m));
}

}  // namespace reglab
