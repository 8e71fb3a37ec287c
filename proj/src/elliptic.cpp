#include "reglab/elliptic.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace reglab::elliptic {

namespace {

Complex cpoly_eval(const std::vector<Complex>& c, Complex x) {
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<Complex> cpoly_deriv(const std::vector<Complex>& c) {
    std::vector<Complex> d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
    return d;
}

std::vector<Complex> cpoly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Complex> c(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

std::vector<Complex> cpoly_sub(std::vector<Complex> a, const std::vector<Complex>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

std::vector<Complex> to_complex(const Poly<Rational>& p) {
    std::vector<Complex> c;
    for (const auto& q : p.coeffs()) c.push_back(q.num().get_d() / q.den().get_d());
    return c;
}

}  // namespace

std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs) {
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.size() <= 1) return {};
    const size_t n = coeffs.size() - 1;
    const Complex lead = coeffs.back();
    for (auto& c : coeffs) c /= lead;
    std::vector<Complex> w(n);
    const Complex seed(0.4, 0.9);
    Complex p = 1.0;
    for (size_t i = 0; i < n; ++i) {
        p *= seed;
        w[i] = p;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (size_t i = 0; i < n; ++i) {
            Complex denom = 1.0;
            for (size_t j = 0; j < n; ++j)
                if (j != i) denom *= w[i] - w[j];
            const Complex delta = cpoly_eval(coeffs, w[i]) / denom;
            w[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-13) break;
    }
    return w;
}

EllipticCurve::EllipticCurve(Poly<Rational> cubic) : h(std::move(cubic)) {
    if (h.degree() != 3) throw std::invalid_argument("h must be a cubic");
    if (resultant(h, h.derivative()).is_zero())
        throw std::invalid_argument("h has a repeated root");
    hc_ = to_complex(h);
    hpc_ = cpoly_deriv(hc_);
}

Complex EllipticCurve::h_at(Complex x) const { return cpoly_eval(hc_, x); }
Complex EllipticCurve::h_deriv_at(Complex x) const { return cpoly_eval(hpc_, x); }
std::vector<Complex> EllipticCurve::branch_points() const { return polynomial_roots(hc_); }

Complex CurveFunction::eval(Complex x, Complex y) const {
    const Complex num = cpoly_eval(a, x) + cpoly_eval(b, x) * y;
    const Complex den = cpoly_eval(c, x) + cpoly_eval(d, x) * y;
    return num / den;
}

std::vector<Complex> CurveFunction::zero_poles_x(const EllipticCurve& curve) const {
    // A + B y vanishes on some sheet only where A^2 - B^2 h does
    std::vector<Complex> out;
    const std::vector<Complex> hc = to_complex(curve.h);
    const auto collect = [&](const std::vector<Complex>& wa, const std::vector<Complex>& wb) {
        const auto p = cpoly_sub(cpoly_mul(wa, wa), cpoly_mul(cpoly_mul(wb, wb), hc));
        for (const Complex& r : polynomial_roots(p)) out.push_back(r);
    };
    collect(a, b);
    collect(c, d);
    return out;
}

void QuadratureConfig::validate() const {
    if (!(inner_radius > 0)) throw std::invalid_argument("inner_radius must be positive");
    if (!(outer_radius > inner_radius)) throw std::invalid_argument("outer_radius <= inner_radius");
    if (radial < 4 || angular < 4) throw std::invalid_argument("resolution too small");
    if (!(exclusion_radius > 0)) throw std::invalid_argument("exclusion_radius must be positive");
    if (levels < 1) throw std::invalid_argument("at least one refinement level");
}

double kernel_omega(RealForm form, Complex x, Complex y) {
    if (x == Complex(0.0) || y == Complex(0.0))
        throw std::domain_error("kernel evaluated at a pole");
    const Complex xy = std::conj(x) * y;
    const double den = std::norm(x) * std::norm(y);
    return form == RealForm::Omega1 ? xy.imag() / den : -xy.real() / den;
}

namespace {

// CurveFunction with its x-derivatives precomputed.
struct PreparedFn {
    std::vector<Complex> a, b, c, d, da, db, dc, dd;

    explicit PreparedFn(const CurveFunction& f)
        : a(f.a), b(f.b), c(f.c), d(f.d),
          da(cpoly_deriv(f.a)), db(cpoly_deriv(f.b)),
          dc(cpoly_deriv(f.c)), dd(cpoly_deriv(f.d)) {}

    Complex eval(Complex x, Complex y) const {
        return (cpoly_eval(a, x) + cpoly_eval(b, x) * y) /
               (cpoly_eval(c, x) + cpoly_eval(d, x) * y);
    }

    // total d(log f)/dx along the sheet, dy/dx = h'/(2y)
    Complex dlog(const EllipticCurve& curve, Complex x, Complex y) const {
        const Complex dydx = curve.h_deriv_at(x) / (2.0 * y);
        const Complex num = cpoly_eval(a, x) + cpoly_eval(b, x) * y;
        const Complex dnum = cpoly_eval(da, x) + cpoly_eval(db, x) * y + cpoly_eval(b, x) * dydx;
        const Complex den = cpoly_eval(c, x) + cpoly_eval(d, x) * y;
        const Complex dden = cpoly_eval(dc, x) + cpoly_eval(dd, x) * y + cpoly_eval(d, x) * dydx;
        return dnum / num - dden / den;
    }
};

struct Grid {
    double r_lo, r_hi;
    int radial, angular;
};

// Midpoint rule in (log r, theta). The angular count is a multiple of 4, so
// the grid is invariant under conjugation and quarter turns; the reflection
// and rotation symmetries of the integrands then cancel exactly.
template <class F>
double integrate_polar(const Grid& grid, F&& integrand, double& excluded_area) {
    const double dlr = std::log(grid.r_hi / grid.r_lo) / grid.radial;
    const double dth = 2.0 * M_PI / grid.angular;
    double acc = 0.0;
    for (int ir = 0; ir < grid.radial; ++ir) {
        const double r = grid.r_lo * std::exp((ir + 0.5) * dlr);
        const double cell = r * r * dlr * dth;
        for (int it = 0; it < grid.angular; ++it) {
            const double th = (it + 0.5) * dth;
            const Complex x = std::polar(r, th);
            double v;
            if (integrand(x, v))
                acc += v * cell;
            else
                excluded_area += cell;
        }
    }
    return acc;
}

int rounded_angular(int angular) { return ((angular + 3) / 4) * 4; }

void push_level(IntegralResult& out, int level, double value, double target, bool* done) {
    out.trace.emplace_back(level, value);
    if (level == 0) {
        out.error_estimate = std::abs(value);
        *done = false;
        return;
    }
    const double prev_value = out.trace[out.trace.size() - 2].second;
    const double err = std::abs(value - prev_value);
    if (level >= 2 && err > 1.5 * out.error_estimate + 1e-15) out.non_convergent = true;
    out.error_estimate = err;
    out.value = value;
    *done = err <= target;
}

}  // namespace

IntegralResult integrate_regulator(const EllipticCurve& curve, const RegulatorIntegrand& integrand,
                                   const QuadratureConfig& cfg) {
    cfg.validate();
    std::vector<Complex> singular = integrand.f.zero_poles_x(curve);
    for (const Complex& r : integrand.g.zero_poles_x(curve)) singular.push_back(r);
    for (const Complex& r : curve.branch_points()) singular.push_back(r);
    const PreparedFn f(integrand.f);
    const PreparedFn g(integrand.g);

    IntegralResult out;
    for (int level = 0; level < cfg.levels; ++level) {
        const int nr = cfg.radial << level;
        const int na = rounded_angular(cfg.angular << level);
        const double delta = cfg.exclusion_radius / (1 << level);
        out.excluded_area = 0.0;

        const auto near_singular = [&](Complex x) {
            for (const Complex& s : singular)
                if (std::abs(x - s) < delta) return true;
            return false;
        };

        const auto sheet_sum = [&](Complex x, double& v) {
            if (near_singular(x)) return false;
            const Complex y = std::sqrt(curve.h_at(x));
            if (y == Complex(0.0)) return false;
            v = 0.0;
            for (const Complex ys : {y, -y}) {
                const Complex fv = f.eval(x, ys);
                const double afv = std::abs(fv);
                if (!(afv > 0.0) || !std::isfinite(afv)) return false;
                const Complex u = g.dlog(curve, x, ys) / std::conj(ys);
                const double k = integrand.form == RealForm::Omega1 ? u.imag() : -u.real();
                if (!std::isfinite(k)) return false;
                v += std::log(afv) * k;
            }
            return true;
        };

        const auto outer_sum = [&](Complex w, double& v) {
            if (!sheet_sum(1.0 / w, v)) return false;
            v /= std::norm(w) * std::norm(w);
            return true;
        };

        double value = integrate_polar({cfg.inner_radius, cfg.outer_radius, nr, na}, sheet_sum,
                                       out.excluded_area);
        const double w_cut = 1e-3 / (1 << level);
        if (w_cut < 1.0 / cfg.outer_radius)
            value += integrate_polar({w_cut, 1.0 / cfg.outer_radius, nr, na}, outer_sum,
                                     out.excluded_area);

        out.value = value;
        bool done = false;
        push_level(out, level, value, cfg.target, &done);
        if (done) break;
    }
    return out;
}

double kernel_general(const EllipticCurve& curve, const CurveFunction& g, RealForm form,
                      Complex x, Complex y) {
    const PreparedFn pg(g);
    const Complex u = pg.dlog(curve, x, y) / std::conj(y);
    return form == RealForm::Omega1 ? u.imag() : -u.real();
}

Det2x2Result det2x2_claim(const EllipticCurve& curve, QuadratureConfig cfg) {
    cfg.validate();
    if (cfg.levels < 2) cfg.levels = 2;
    cfg.target = 0.0;  // run every level; the last two feed the verdict
    const CurveFunction fs[2] = {CurveFunction::y_plus_ix(), CurveFunction::y_plus_x()};
    const RealForm forms[2] = {RealForm::Omega1, RealForm::Omega2};

    Det2x2Result out;
    double prev_entry[2][2];
    double prev_err[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const RegulatorIntegrand spec{fs[i], CurveFunction::coordinate_x(), forms[j]};
            const IntegralResult r = integrate_regulator(curve, spec, cfg);
            const size_t n = r.trace.size();
            out.entries[i][j] = r.trace[n - 1].second;
            out.entry_errors[i][j] = std::abs(r.trace[n - 1].second - r.trace[n - 2].second);
            prev_entry[i][j] = r.trace[n - 2].second;
            prev_err[i][j] = n >= 3 ? std::abs(r.trace[n - 2].second - r.trace[n - 3].second)
                                    : 2.0 * out.entry_errors[i][j];
        }

    const auto det_of = [](double m[2][2]) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; };
    const auto err_of = [](double m[2][2], double e[2][2]) {
        return std::abs(m[0][0]) * e[1][1] + std::abs(m[1][1]) * e[0][0] + e[0][0] * e[1][1] +
               std::abs(m[0][1]) * e[1][0] + std::abs(m[1][0]) * e[0][1] + e[0][1] * e[1][0];
    };
    out.det = det_of(out.entries);
    out.det_error = err_of(out.entries, out.entry_errors);
    out.det_prev = det_of(prev_entry);
    out.det_prev_error = err_of(prev_entry, prev_err);
    out.nonzero = std::abs(out.det) > out.det_error && std::abs(out.det_prev) > out.det_prev_error;
    out.levels_agree = std::abs(out.det - out.det_prev) <= out.det_error + out.det_prev_error;
    return out;
}

DegeneratePair parse_degenerate_pair(const std::string& text) {
    if (text == "f1,omega1") return DegeneratePair::F1Omega1;
    if (text == "f1,omega2") return DegeneratePair::F1Omega2;
    if (text == "f2,omega1") return DegeneratePair::F2Omega1;
    if (text == "f2,omega2") return DegeneratePair::F2Omega2;
    throw std::invalid_argument("unknown pair (expected fN,omegaM): " + text);
}

std::string degenerate_integrand_str(DegeneratePair which) {
    switch (which) {
        case DegeneratePair::F1Omega1: return "log|z+i| * Im(z)/|z|^4";
        case DegeneratePair::F1Omega2: return "log|z+i| * -Re(z)/|z|^4";
        case DegeneratePair::F2Omega1: return "log|z+1| * Im(z)/|z|^4";
        default: return "log|z+1| * -Re(z)/|z|^4";
    }
}

IntegralResult degenerate_integral(DegeneratePair which, Annulus annulus,
                                   const QuadratureConfig& cfg) {
    if (!(annulus.eps > 0))
        throw std::invalid_argument("the inner radius must be positive: the integral diverges at 0");
    if (annulus.eps > annulus.R) throw std::invalid_argument("empty annulus with eps > R");
    const bool f1 = which == DegeneratePair::F1Omega1 || which == DegeneratePair::F1Omega2;
    const bool omega1 = which == DegeneratePair::F1Omega1 || which == DegeneratePair::F2Omega1;
    const Complex shift = f1 ? Complex(0, 1) : Complex(1, 0);

    IntegralResult out;
    if (annulus.eps == annulus.R) {
        out.trace.emplace_back(0, 0.0);
        return out;
    }
    for (int level = 0; level < cfg.levels; ++level) {
        const int nr = cfg.radial << level;
        const int na = rounded_angular(cfg.angular << level);
        const auto integrand = [&](Complex z, double& v) {
            const double a = std::abs(z + shift);
            if (!(a > 0.0)) return false;
            const double r4 = std::norm(z) * std::norm(z);
            const double k = omega1 ? z.imag() : -z.real();
            v = std::log(a) * k / r4;
            return std::isfinite(v);
        };
        double excluded = 0.0;
        const double value = integrate_polar({annulus.eps, annulus.R, nr, na}, integrand, excluded);
        out.excluded_area = excluded;
        out.value = value;
        bool done = false;
        push_level(out, level, value, cfg.target, &done);
        if (done) break;
    }
    return out;
}

SubstitutionCheck verify_w_substitution(Annulus lhs_annulus, Annulus rhs_annulus,
                                        const QuadratureConfig& cfg, double rel_tol) {
    if (lhs_annulus.eps != rhs_annulus.eps || lhs_annulus.R != rhs_annulus.R)
        throw std::invalid_argument("the substitution w = iz preserves radii; annuli must match");
    return verify_w_substitution(lhs_annulus, cfg, rel_tol);
}

SubstitutionCheck verify_w_substitution(Annulus annulus, const QuadratureConfig& cfg,
                                        double rel_tol) {
    SubstitutionCheck out;
    out.lhs = degenerate_integral(DegeneratePair::F2Omega2, annulus, cfg).value;
    out.rhs = -degenerate_integral(DegeneratePair::F1Omega1, annulus, cfg).value;
    out.tolerance = rel_tol * std::max({std::abs(out.lhs), std::abs(out.rhs), 1e-12});
    out.pass = std::abs(out.lhs - out.rhs) <= out.tolerance;
    return out;
}

std::string IntegralResult::trace_csv() const {
    std::string out = "level,value\n";
    for (const auto& [level, value] : trace) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", level, value);
        out += buf;
    }
    return out;
}

}  // namespace reglab::elliptic
