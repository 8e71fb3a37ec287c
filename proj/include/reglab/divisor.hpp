#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "reglab/point.hpp"
#include "reglab/quadratic.hpp"
#include "reglab/rational_fn.hpp"

namespace reglab {

inline std::optional<Rational> field_sqrt(const Rational& s) {
    if (s.sign() < 0) return std::nullopt;
    if (s.is_zero()) return Rational(0);
    mpz_class n = s.num(), d = s.den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
}

// Square root within Q(sqrt(d)) when it exists there.
inline std::optional<Surd> field_sqrt(const Surd& s) {
    if (s.sign() < 0) return std::nullopt;
    if (s.is_zero()) return Surd(0);
    if (s.is_rational()) {
        if (auto r = field_sqrt(s.as_rational())) return Surd(*r);
        return std::nullopt;
    }
    const Rational a = s.rat_part(), b = s.surd_coef();
    const Rational dd(s.radicand(), 1);
    if (a.is_zero()) {
        // sqrt(b sqrt(d)) is rational in the field only in trivial cases; skip
        return std::nullopt;
    }
    // (u + v sqrt(d))^2 = a + b sqrt(d)  with  u^2 = (a +- t)/2, t^2 = a^2 - b^2 d
    const auto t = field_sqrt(a * a - b * b * dd);
    if (!t) return std::nullopt;
    for (const Rational& u2 : {(a + *t) / Rational(2), (a - *t) / Rational(2)}) {
        if (u2.sign() <= 0) continue;
        if (auto u = field_sqrt(u2)) {
            const Rational v = b / (Rational(2) * *u);
            Surd root(*u, v, s.radicand());
            if (root.sign() < 0) root = -root;
            if (root * root == s) return root;
        }
    }
    return std::nullopt;
}

// A place on P1 over K: a finite point, the point at infinity, or a monic
// polynomial of degree >= 2 that this toolkit does not split further.
template <class K>
struct Place {
    enum Kind { FinitePoint, Infinity, Irreducible } kind;
    K point{};          // FinitePoint
    Poly<K> poly;       // Irreducible, monic

    static Place finite(K v) { return Place{FinitePoint, std::move(v), {}}; }
    static Place infinity() { return Place{Infinity, K{}, {}}; }
    static Place irreducible(Poly<K> p) { return Place{Irreducible, K{}, std::move(p)}; }

    int degree() const { return kind == Irreducible ? poly.degree() : 1; }

    friend bool operator==(const Place& a, const Place& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == FinitePoint) return a.point == b.point;
        if (a.kind == Irreducible) return a.poly == b.poly;
        return true;
    }
    friend bool operator<(const Place& a, const Place& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.kind == FinitePoint) return a.point < b.point;
        if (a.kind == Irreducible) {
            if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
            for (int i = a.poly.degree(); i >= 0; --i) {
                if (!(a.poly.coeff(i) == b.poly.coeff(i))) return a.poly.coeff(i) < b.poly.coeff(i);
            }
            return false;
        }
        return false;
    }

    std::string str() const {
        if (kind == FinitePoint) return "(" + point.str() + ")";
        if (kind == Infinity) return "(inf)";
        return "[" + poly.str() + "]";
    }
};

// Divisor on P1: formal integer combination of places, no zero
// multiplicities stored.
template <class K>
class Divisor {
public:
    Divisor() = default;

    void add(const Place<K>& p, long mult) {
        if (mult == 0) return;
        auto [it, inserted] = support_.try_emplace(p, 0);
        it->second += mult;
        if (it->second == 0) support_.erase(it);
    }
    void add(const Divisor& d, long scale = 1) {
        for (const auto& [p, m] : d.support_) add(p, m * scale);
    }

    bool empty() const { return support_.empty(); }
    const std::map<Place<K>, long>& support() const { return support_; }
    long multiplicity(const Place<K>& p) const {
        auto it = support_.find(p);
        return it == support_.end() ? 0 : it->second;
    }

    long total_degree() const {
        long t = 0;
        for (const auto& [p, m] : support_) t += m * p.degree();
        return t;
    }

    friend bool operator==(const Divisor& a, const Divisor& b) {
        return a.support_ == b.support_;
    }
    friend Divisor operator+(Divisor a, const Divisor& b) {
        a.add(b);
        return a;
    }
    friend Divisor operator-(Divisor a, const Divisor& b) {
        a.add(b, -1);
        return a;
    }

    std::string str() const {
        if (support_.empty()) return "0";
        std::string out;
        for (const auto& [p, m] : support_) {
            if (!out.empty()) out += " + ";
            out += std::to_string(m) + "*" + p.str();
        }
        return out;
    }

private:
    std::map<Place<K>, long> support_;
};

namespace detail {

inline std::vector<mpz_class> small_divisors(mpz_class n) {
    n = ::abs(n);
    std::vector<mpz_class> out;
    if (n == 0) return out;
    for (mpz_class i = 1; i * i <= n && i < 2000000; ++i) {
        if (mpz_divisible_p(n.get_mpz_t(), i.get_mpz_t())) {
            out.push_back(i);
            out.push_back(n / i);
        }
    }
    return out;
}

// Roots in Q of a rational-coefficient polynomial (candidate search on the
// cleared integer form).
inline std::vector<Rational> rational_roots(const Poly<Rational>& p) {
    std::vector<Rational> roots;
    if (p.degree() < 1) return roots;
    mpz_class lcm(1);
    for (const auto& c : p.coeffs()) lcm = ::lcm(lcm, c.den());
    std::vector<mpz_class> ic(p.coeffs().size());
    for (size_t i = 0; i < ic.size(); ++i) {
        const Rational scaled = p.coeffs()[i] * Rational(lcm, 1);
        ic[i] = scaled.num();
    }
    size_t low = 0;
    while (low < ic.size() && ic[low] == 0) ++low;
    if (low > 0) roots.push_back(Rational(0));
    if (low + 1 >= ic.size()) return roots;
    const auto ps = small_divisors(ic[low]);
    const auto qs = small_divisors(ic.back());
    for (const auto& pp : ps) {
        for (const auto& qq : qs) {
            for (int sign : {1, -1}) {
                const Rational cand(sign * pp, qq);
                if (p.eval(cand).is_zero()) {
                    bool seen = false;
                    for (const auto& r : roots) seen = seen || r == cand;
                    if (!seen) roots.push_back(cand);
                }
            }
        }
    }
    return roots;
}

inline std::optional<Rational> sqrt_for_roots(const Rational& disc, const Poly<Rational>&) {
    return field_sqrt(disc);
}

// Discriminant square root usable inside the ambient quadratic field. A
// rational discriminant may introduce a fresh radicand, which is fine as
// long as the coefficients themselves are rational over it.
inline std::optional<Surd> sqrt_for_roots(const Surd& disc, const Poly<Surd>& f) {
    if (disc.sign() < 0) return std::nullopt;
    if (!disc.is_rational()) return field_sqrt(disc);
    const Rational dr = disc.as_rational();
    if (dr.is_zero()) return Surd(0);
    auto [s, d] = extract_square(dr.num() * dr.den());
    const Surd root = (d == 1) ? Surd(Rational(s, dr.den()))
                               : Surd(Rational(0), Rational(s, dr.den()), d);
    mpz_class dpoly(0);
    for (const auto& cc : f.coeffs())
        if (!cc.is_rational()) {
            dpoly = cc.radicand();
            break;
        }
    if (!root.is_rational() && dpoly != 0 && root.radicand() != dpoly) return std::nullopt;
    return root;
}

// Split a squarefree monic factor into K-roots plus an unsplit remainder.
template <class K>
void split_factor(Poly<K> f, std::vector<K>& roots, std::optional<Poly<K>>& rest) {
    if constexpr (std::is_same_v<K, Rational>) {
        for (const auto& r : rational_roots(f)) {
            roots.push_back(r);
            f = Poly<K>::divrem(f, Poly<K>::linear_root(r)).first;
        }
    } else {
        if (f.degree() >= 1 && f.coeff(0).is_zero()) {
            roots.push_back(K(0));
            std::vector<K> shifted(f.coeffs().begin() + 1, f.coeffs().end());
            f = Poly<K>(std::move(shifted));
        }
    }
    while (f.degree() == 1) {
        roots.push_back((K(0) - f.coeff(0)) / f.coeff(1));
        f = Poly<K>::one();
    }
    if (f.degree() == 2) {
        const K a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
        const K disc = b * b - K(4) * a * c;
        if (auto sq = sqrt_for_roots(disc, f)) {
            const K two_a = K(2) * a;
            roots.push_back(((K(0) - b) - *sq) / two_a);
            roots.push_back(((K(0) - b) + *sq) / two_a);
            f = Poly<K>::one();
        }
    }
    if (f.degree() >= 1) rest = f.monic();
}

template <class K>
void divisor_of_poly(const Poly<K>& p, Divisor<K>& out, long sign) {
    if (p.is_constant()) return;
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        std::vector<K> roots;
        std::optional<Poly<K>> rest;
        split_factor(factor, roots, rest);
        for (const auto& r : roots) out.add(Place<K>::finite(r), sign * mult);
        if (rest) out.add(Place<K>::irreducible(*rest), sign * mult);
    }
}

}  // namespace detail

// Zeros minus poles of a rational function on P1, including the point at
// infinity; the total degree is always 0.
template <class K>
Divisor<K> rf_divisor(const RationalFn<K>& f) {
    if (f.is_zero()) throw std::domain_error("divisor of the zero function");
    Divisor<K> out;
    detail::divisor_of_poly(f.num(), out, +1);
    detail::divisor_of_poly(f.den(), out, -1);
    out.add(Place<K>::infinity(), f.den().degree() - f.num().degree());
    return out;
}

}  // namespace reglab
