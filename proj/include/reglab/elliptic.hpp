#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "reglab/poly.hpp"

namespace reglab::elliptic {

using Complex = std::complex<double>;

// Elliptic curve y^2 = h(x) with a degree-3 h with distinct roots.
class EllipticCurve {
public:
    Poly<Rational> h;

    explicit EllipticCurve(Poly<Rational> cubic);
    Complex h_at(Complex x) const;
    Complex h_deriv_at(Complex x) const;
    std::vector<Complex> branch_points() const;

private:
    std::vector<Complex> hc_;
    std::vector<Complex> hpc_;
};

enum class RealForm { Omega1, Omega2 };

// Function on the curve of the form (A(x) + B(x) y) / (C(x) + D(x) y).
// Every rational function on a double cover reduces to this shape.
struct CurveFunction {
    std::vector<Complex> a, b;      // numerator A + B y
    std::vector<Complex> c = {1.0}; // denominator C + D y
    std::vector<Complex> d;

    Complex eval(Complex x, Complex y) const;
    // x-locations where the function can vanish / blow up on some sheet
    std::vector<Complex> zero_poles_x(const EllipticCurve& curve) const;

    static CurveFunction coordinate_x() { return CurveFunction{{0.0, 1.0}, {}, {1.0}, {}}; }
    static CurveFunction y_plus_ix() { return CurveFunction{{0.0, Complex(0, 1)}, {1.0}, {1.0}, {}}; }
    static CurveFunction y_plus_x() { return CurveFunction{{0.0, 1.0}, {1.0}, {1.0}, {}}; }
};

struct RegulatorIntegrand {
    CurveFunction f;
    CurveFunction g;
    RealForm form = RealForm::Omega1;
};

// Polar-grid quadrature parameters. The annulus [inner_radius, outer_radius]
// carries a midpoint grid in (log r, theta); the region beyond outer_radius
// is covered through the substitution x -> 1/x. Exclusion disks of radius
// exclusion_radius around singular points are halved per refinement level.
struct QuadratureConfig {
    double inner_radius = 1e-4;
    double outer_radius = 10.0;
    int radial = 160;
    int angular = 64;
    double exclusion_radius = 0.04;
    int levels = 3;
    double target = 1e-4;

    void validate() const;
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::vector<std::pair<int, double>> trace;  // (level, value)
    bool non_convergent = false;
    double excluded_area = 0.0;

    std::string trace_csv() const;
};

// Pointwise kernel of d log|g| ^ omega for g = x:
//   omega1:  Im(conj(x) y) / (|x|^2 |y|^2)
//   omega2: -Re(conj(x) y) / (|x|^2 |y|^2)
double kernel_omega(RealForm form, Complex x, Complex y);

// General-g kernel: Im / -Re of (dlog g / dx) / conj(y), which reduces to
// kernel_omega when g = x.
double kernel_general(const EllipticCurve& curve, const CurveFunction& g, RealForm form,
                      Complex x, Complex y);

// integral over the curve of log|f| dlog|g| ^ omega, summed over the two
// sheets y = +-sqrt(h(x)), with refinement until the level-to-level change
// drops below target or the level cap is reached.
IntegralResult integrate_regulator(const EllipticCurve& curve, const RegulatorIntegrand& integrand,
                                   const QuadratureConfig& cfg);

// The 2x2 matrix with rows {f1 = y + i x, g = x} and {f2 = y + x, g = x}
// against the forms (omega1, omega2), with its determinant at the last two
// refinement levels.
struct Det2x2Result {
    double entries[2][2];
    double entry_errors[2][2];
    double det = 0.0;
    double det_error = 0.0;
    double det_prev = 0.0;
    double det_prev_error = 0.0;
    bool nonzero = false;       // |det| above combined error at both levels
    bool levels_agree = false;  // |det - det_prev| within combined errors
};

Det2x2Result det2x2_claim(const EllipticCurve& curve, QuadratureConfig cfg);

// Integrals on the cuspidal limit curve, parametrized by z:
//   (f1, omega1):  log|z+i| *  Im(z)/|z|^4     diverges as eps -> 0
//   (f1, omega2):  log|z+i| * -Re(z)/|z|^4     = 0 by symmetry
//   (f2, omega1):  log|z+1| *  Im(z)/|z|^4     = 0 by symmetry
//   (f2, omega2):  log|z+1| * -Re(z)/|z|^4     = -(f1, omega1)
enum class DegeneratePair { F1Omega1, F1Omega2, F2Omega1, F2Omega2 };

struct Annulus {
    double eps;
    double R;
};

DegeneratePair parse_degenerate_pair(const std::string& text);  // "f1,omega1" etc.
std::string degenerate_integrand_str(DegeneratePair which);

IntegralResult degenerate_integral(DegeneratePair which, Annulus annulus,
                                   const QuadratureConfig& cfg);

// Checks (f2, omega2) = -(f1, omega1) on one annulus; the rotation w = i z
// maps the integrands onto each other and preserves radii, so mismatched
// annuli are refused.
struct SubstitutionCheck {
    bool pass = false;
    double lhs = 0.0;  // (f2, omega2)
    double rhs = 0.0;  // -(f1, omega1)
    double tolerance = 0.0;
};

SubstitutionCheck verify_w_substitution(Annulus annulus, const QuadratureConfig& cfg,
                                        double rel_tol = 0.01);
SubstitutionCheck verify_w_substitution(Annulus lhs_annulus, Annulus rhs_annulus,
                                        const QuadratureConfig& cfg, double rel_tol = 0.01);

// Roots of a complex-coefficient polynomial (Durand-Kerner); used to locate
// singular points for the exclusion disks.
std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs);

}  // namespace reglab::elliptic
