#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reglab/divisor.hpp"
#include "reglab/rational_fn.hpp"

namespace reglab {

enum class ComponentKind { RationalLine, SectionC, Fiber, Exceptional };

// A labeled curve component of the ambient surface. Markers are named
// points shared across components: two components carrying a marker with
// the same name meet at that point, and divisor bookkeeping identifies
// them through the name.
struct CurveComponent {
    std::string id;
    ComponentKind kind = ComponentKind::RationalLine;
    std::map<std::string, PointP1<Rational>> markers;

    CurveComponent() = default;
    CurveComponent(std::string id_, ComponentKind kind_) : id(std::move(id_)), kind(kind_) {}

    CurveComponent& with_marker(const std::string& name, PointP1<Rational> p) {
        if (markers.count(name)) throw std::invalid_argument("duplicate marker " + name);
        markers.emplace(name, std::move(p));
        return *this;
    }
};

// Multiset of component ids, the D1 + D2 of the extended group law.
using ComponentSum = std::vector<std::string>;

inline ComponentSum sum_of(std::initializer_list<std::string> ids) {
    ComponentSum s(ids);
    std::sort(s.begin(), s.end());
    return s;
}

inline std::string component_sum_str(const ComponentSum& s) {
    std::string out;
    for (const auto& id : s) out += (out.empty() ? "" : "+") + id;
    return out;
}

template <class K>
struct PrecycleTerm {
    RationalFn<K> fn;
    ComponentSum components;  // sorted

    PrecycleTerm(RationalFn<K> f, std::string component)
        : fn(std::move(f)), components{std::move(component)} {}
    PrecycleTerm(RationalFn<K> f, ComponentSum comps) : fn(std::move(f)), components(std::move(comps)) {
        std::sort(components.begin(), components.end());
    }
};

// Formal sum of (rational function, component) pairs.
template <class K>
struct Precycle {
    std::vector<PrecycleTerm<K>> terms;

    void add(RationalFn<K> f, std::string component) {
        if (f.is_zero()) throw std::invalid_argument("precycle term with zero function");
        terms.emplace_back(std::move(f), std::move(component));
    }
    void add(RationalFn<K> f, ComponentSum comps) {
        if (f.is_zero()) throw std::invalid_argument("precycle term with zero function");
        terms.emplace_back(std::move(f), std::move(comps));
    }
};

// Where a divisor point lives on the surface: either a named marker point
// (shared between components) or a local point of one component.
template <class K>
struct SurfaceAnchor {
    bool is_marker = false;
    std::string label;  // marker name, or component id
    Place<K> place;     // for local anchors

    friend bool operator<(const SurfaceAnchor& a, const SurfaceAnchor& b) {
        if (a.is_marker != b.is_marker) return a.is_marker;
        if (a.label != b.label) return a.label < b.label;
        if (a.is_marker) return false;
        return a.place < b.place;
    }
    friend bool operator==(const SurfaceAnchor& a, const SurfaceAnchor& b) {
        return a.is_marker == b.is_marker && a.label == b.label &&
               (a.is_marker || a.place == b.place);
    }

    std::string str() const {
        return is_marker ? "@" + label : label + ":" + place.str();
    }
};

// Divisor on the surface, supported on anchored points.
template <class K>
class SurfaceDivisor {
public:
    void add(const SurfaceAnchor<K>& a, long mult) {
        if (mult == 0) return;
        auto [it, inserted] = support_.try_emplace(a, 0);
        it->second += mult;
        if (it->second == 0) support_.erase(it);
    }
    void add(const SurfaceDivisor& d) {
        for (const auto& [a, m] : d.support_) add(a, m);
    }
    bool empty() const { return support_.empty(); }
    const std::map<SurfaceAnchor<K>, long>& support() const { return support_; }

    friend bool operator==(const SurfaceDivisor& a, const SurfaceDivisor& b) {
        return a.support_ == b.support_;
    }

    std::string str() const {
        if (support_.empty()) return "0";
        std::string out;
        for (const auto& [a, m] : support_) {
            if (!out.empty()) out += " + ";
            out += std::to_string(m) + "*" + a.str();
        }
        return out;
    }

private:
    std::map<SurfaceAnchor<K>, long> support_;
};

namespace detail {

inline bool same_point(const PointP1<Rational>& marker, const Place<Rational>& p) {
    if (p.kind == Place<Rational>::Infinity) return marker.is_infinity();
    if (p.kind != Place<Rational>::FinitePoint) return false;
    return !marker.is_infinity() && marker.value() == p.point;
}

inline bool same_point(const PointP1<Rational>& marker, const Place<Surd>& p) {
    if (p.kind == Place<Surd>::Infinity) return marker.is_infinity();
    if (p.kind != Place<Surd>::FinitePoint) return false;
    return !marker.is_infinity() && p.point.is_rational() &&
           p.point.as_rational() == marker.value();
}

}  // namespace detail

// Anchor a P1 place on a specific component: marker points are promoted to
// their shared ambient name.
template <class K>
SurfaceAnchor<K> anchor_place(const CurveComponent& comp, const Place<K>& p) {
    for (const auto& [name, marker] : comp.markers) {
        if (detail::same_point(marker, p)) return SurfaceAnchor<K>{true, name, p};
    }
    return SurfaceAnchor<K>{false, comp.id, p};
}

// Divisor-closure check: the cycle is closed iff the divisors of all terms
// cancel on the surface. Components are looked up by id in `geometry`.
template <class K>
std::pair<bool, SurfaceDivisor<K>> validate_closure(
    const Precycle<K>& cycle, const std::map<std::string, CurveComponent>& geometry) {
    SurfaceDivisor<K> residual;
    for (const auto& term : cycle.terms) {
        if (term.fn.is_zero()) throw std::domain_error("closure check on a zero function");
        const Divisor<K> d = rf_divisor(term.fn);
        for (const auto& comp_id : term.components) {
            auto it = geometry.find(comp_id);
            if (it == geometry.end())
                throw std::invalid_argument("component without geometry: " + comp_id);
            for (const auto& [place, mult] : d.support())
                residual.add(anchor_place(it->second, place), mult);
        }
    }
    return {residual.empty(), residual};
}

// Extended group law normal form:
//   (f, D1) + (f, D2)        -> (f, D1 + D2)
//   n (f, D)                 -> (f^n, D)
//   (f, D) + (g, D)          -> (fg, D)
//   (1, D)                   -> dropped
// Each rewrite leaves the regulator functional unchanged.
template <class K>
Precycle<K> group_law_merge(const Precycle<K>& cycle) {
    // fold identical (function, components) pairs into powers
    std::vector<std::pair<PrecycleTerm<K>, long>> with_mult;
    for (const auto& term : cycle.terms) {
        bool found = false;
        for (auto& [t, n] : with_mult) {
            if (t.components == term.components && t.fn == term.fn) {
                ++n;
                found = true;
                break;
            }
        }
        if (!found) with_mult.emplace_back(term, 1);
    }
    // multiply out same-component products
    std::map<ComponentSum, RationalFn<K>> by_component;
    std::vector<ComponentSum> order;
    for (const auto& [t, n] : with_mult) {
        const RationalFn<K> powered = t.fn.pow(n);
        auto it = by_component.find(t.components);
        if (it == by_component.end()) {
            by_component.emplace(t.components, powered);
            order.push_back(t.components);
        } else {
            it->second = it->second * powered;
        }
    }
    // merge equal functions across components, drop units
    Precycle<K> merged;
    std::vector<bool> used(order.size(), false);
    for (size_t i = 0; i < order.size(); ++i) {
        if (used[i]) continue;
        const RationalFn<K>& f = by_component.at(order[i]);
        if (f.is_one()) continue;
        ComponentSum comps = order[i];
        for (size_t j = i + 1; j < order.size(); ++j) {
            if (used[j]) continue;
            if (by_component.at(order[j]) == f) {
                comps.insert(comps.end(), order[j].begin(), order[j].end());
                used[j] = true;
            }
        }
        std::sort(comps.begin(), comps.end());
        merged.add(f, comps);
    }
    return merged;
}

// Finite map between rational components, given by its coordinate
// expression. The degree is max(deg num, deg den).
template <class K>
struct FiniteMapP1 {
    RationalFn<K> expr;
    int degree;

    explicit FiniteMapP1(RationalFn<K> e) : expr(std::move(e)), degree(expr.map_degree()) {
        if (degree < 1) throw std::invalid_argument("constant map is not finite");
    }
};

// Norm pushforward of f along a finite map m: the function whose value at a
// base point is the product of f over the fiber. Computed exactly by
// resultant elimination of the fiber variable.
//
//   ((m)_* f)(x) = Res_y(P_x, num f) / Res_y(P_x, den f) * lc(P_x)^(ddef - dnum)
//
// with P_x(y) = num m(y) - x * den m(y).
template <class K>
RationalFn<K> norm_pushforward(const RationalFn<K>& f, const FiniteMapP1<K>& m) {
    if (f.is_zero()) throw std::invalid_argument("pushforward of the zero function");
    if (m.degree == 1) {
        // invert the Moebius coordinate change directly
        const Poly<K>& n = m.expr.num();
        const Poly<K>& d = m.expr.den();
        // y = (d0 x - n0) / (n1 - d1 x)
        const Poly<K> num_y(std::vector<K>{K(0) - n.coeff(0), d.coeff(0)});
        const Poly<K> den_y(std::vector<K>{n.coeff(1), K(0) - d.coeff(1)});
        Poly<K> fn = Poly<K>::zero(), fd = Poly<K>::zero();
        const int deg = std::max(f.num().degree(), f.den().degree());
        for (int i = 0; i <= deg; ++i) {
            const Poly<K> basis = num_y.pow(i) * den_y.pow(deg - i);
            fn = fn + f.num().coeff(i) * basis;
            fd = fd + f.den().coeff(i) * basis;
        }
        return RationalFn<K>(fn, fd);
    }
    using PX = Poly<K>;          // polynomials in x
    using PXY = Poly<Poly<K>>;   // polynomials in y with PX coefficients
    const Poly<K>& mn = m.expr.num();
    const Poly<K>& md = m.expr.den();
    std::vector<PX> pcoeffs(std::max(mn.degree(), md.degree()) + 1, PX::zero());
    for (int i = 0; i <= mn.degree(); ++i) pcoeffs[i] = pcoeffs[i] + PX(mn.coeff(i));
    const PX minus_x(std::vector<K>{K(0), K(0) - K(1)});
    for (int i = 0; i <= md.degree(); ++i) pcoeffs[i] = pcoeffs[i] + minus_x * PX(md.coeff(i));
    const PXY p_x{std::vector<PX>(pcoeffs)};

    auto lift = [](const Poly<K>& q) {
        std::vector<PX> c(q.degree() + 1, PX::zero());
        for (int i = 0; i <= q.degree(); ++i) c[i] = PX(q.coeff(i));
        return PXY{std::vector<PX>(c)};
    };

    const PX res_num = resultant(p_x, lift(f.num()));
    const PX res_den = resultant(p_x, lift(f.den()));
    const PX lead = p_x.leading();
    const int dnum = f.num().degree();
    const int dden = f.den().degree();
    PX top = res_num, bot = res_den;
    if (dden > dnum)
        top = top * lead.pow(dden - dnum);
    else if (dnum > dden)
        bot = bot * lead.pow(dnum - dden);
    return RationalFn<K>(top, bot);
}

// Per-component pushforward instruction: a finite map onto a named image
// component, or contraction to a point.
template <class K>
struct ProjectionSpec {
    std::string image;
    std::optional<FiniteMapP1<K>> map;  // empty = contracted
};

// The projection from prestable cycles: each term is replaced by the norm
// pushforward on the image component; contracted components are dropped.
template <class K>
Precycle<K> project_prestable(const Precycle<K>& cycle,
                              const std::map<std::string, ProjectionSpec<K>>& maps) {
    Precycle<K> out;
    for (const auto& term : cycle.terms) {
        for (const auto& comp : term.components) {
            auto it = maps.find(comp);
            if (it == maps.end())
                throw std::invalid_argument("component without pushforward target: " + comp);
            const ProjectionSpec<K>& spec = it->second;
            if (!spec.map) continue;  // contracted
            out.add(norm_pushforward(term.fn, *spec.map), spec.image);
        }
    }
    return out;
}

// Kronecker product of coefficient vectors: the regulator vector of a
// product cycle is the product of the factors' vectors.
template <class T>
std::vector<T> kronecker(const std::vector<std::vector<T>>& factors) {
    if (factors.empty()) throw std::invalid_argument("kronecker of no factors");
    std::vector<T> acc{T(1)};
    for (const auto& v : factors) {
        if (v.empty()) throw std::invalid_argument("kronecker with an empty factor");
        std::vector<T> next;
        next.reserve(acc.size() * v.size());
        for (const auto& a : acc)
            for (const auto& b : v) next.push_back(a * b);
        acc = std::move(next);
    }
    return acc;
}

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
Matrix<T> kronecker_matrix(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("kronecker of an empty matrix");
    Matrix<T> out(a.size() * b.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k) {
            auto& row = out[i * b.size() + k];
            row.reserve(a[i].size() * b[k].size());
            for (const auto& x : a[i])
                for (const auto& y : b[k]) row.push_back(x * y);
        }
    return out;
}

}  // namespace reglab
