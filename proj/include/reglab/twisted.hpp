#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reglab/cycles.hpp"
#include "reglab/interval.hpp"
#include "reglab/quadratic.hpp"

namespace reglab::twisted {

// Thrown when a parameter triple is geometrically unusable (repeated seeds,
// tangential intersection, complex intersection points, or an evaluation
// point colliding with a root). Scans report these instead of aborting.
struct DegenerateConfig : std::runtime_error {
    explicit DegenerateConfig(const std::string& what) : std::runtime_error(what) {}
};

// Gluing data for the twisted ruled surface: the translation length of
// phi^4 and the three seed y-coordinates on the x = infinity chart.
// q is fixed at (x, y) = (1, infinity).
struct GlueData {
    Rational lambda = Rational(1);
    std::array<Rational, 3> seeds{};  // y0, y1, y2

    GlueData() = default;
    GlueData(Rational y0, Rational y1, Rational y2, Rational lam = Rational(1))
        : lambda(std::move(lam)), seeds{std::move(y0), std::move(y1), std::move(y2)} {
        if (lambda.is_zero()) throw std::invalid_argument("lambda must be nonzero");
    }

    // Empty when usable; otherwise the reason the triple is degenerate.
    std::optional<std::string> degeneracy() const {
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                if (seeds[i] == seeds[j]) return "repeated seeds";
                if (seeds[i] == seeds[j] + lambda || seeds[j] == seeds[i] + lambda)
                    return "seed equals a unit translate of another";
            }
        return std::nullopt;
    }

    // lambda != 1 is handled by the coordinate rescaling y -> y/lambda,
    // which leaves every cross-ratio (hence every row entry) unchanged.
    GlueData normalized() const {
        if (lambda.is_one()) return *this;
        return GlueData(seeds[0] / lambda, seeds[1] / lambda, seeds[2] / lambda);
    }
};

// Orbit point r_i^(k). y-coordinates exist on the Q0 (x = 0) and Q1
// (x = infinity) charts only; phi^4 translates y by lambda.
struct OrbitPoint {
    int chart;  // 0..3
    std::optional<PointP1<Rational>> x;  // 0 or infinity, charts 0/1 only
    std::optional<Rational> y;
};

OrbitPoint orbit_point(const GlueData& g, int seed_index, int k);

// A curve x*A(y) - B(y) = 0 on R0, together with the orbit chains attached
// to it.
struct CurveOnR {
    Poly<Rational> a;
    Poly<Rational> b;
    struct Chain {
        int orbit;   // seed index
        int j_from;  // inclusive
        int j_to;    // inclusive
    };
    std::vector<Chain> chains;

    // passes through q = (1, infinity) iff the fiber over x = 1 loses degree
    bool passes_q() const { return (a - b).degree() < a.degree(); }

    // rational y-solutions over x = x0 (infinity appears iff degree drops)
    std::vector<Rational> fiber_over(const Rational& x0) const;

    // chain endpoints sit on the x = infinity and x = 0 charts
    bool chains_well_formed() const {
        for (const Chain& c : chains) {
            if (((c.orbit + c.j_from) % 4 + 4) % 4 != 1) return false;
            if (((c.orbit + c.j_to + 1) % 4 + 4) % 4 != 0) return false;
        }
        return true;
    }
};

CurveOnR build_n_gamma(const Rational& seed);
CurveOnR build_n_sigma(const Rational& s1, const Rational& s2);

// Intersection points u, v of the two N-curves for the given cyclic
// arrangement: perm p pairs seed y_p against the other two.
QuadraticRoots intersection_uv(const GlueData& g, int perm);

// The assembled limit cycle for one arrangement, both before and after the
// projection to the central fiber.
struct Epsilon0 {
    Precycle<Surd> prestable;
    std::map<std::string, ProjectionSpec<Surd>> maps;
    Precycle<Surd> projected;
    std::map<std::string, CurveComponent> geometry;
    MoebiusMap<Surd> g_map;  // (y - alpha) / (y - beta)
    QuadraticRoots roots;
    CurveOnR n_gamma;  // with its own orbit chain attached
    CurveOnR n_sigma;  // with the other two orbit chains
};

// The variant that exchanges the second orbit for the one on the opposite
// side of the fiber cycle is the same computation with relabeled seeds, so
// it is obtained by calling these entry points with the relabeled triple
// rather than through a separate code path.
Epsilon0 assemble_epsilon0(const GlueData& g, int perm, bool swap_roots = false);

inline const std::array<std::string, 3> kBasisLabels = {"c1(E0)", "c1(E1+E2+E3)", "c1(E1)"};

struct RegulatorRow {
    std::array<Interval, 3> entries;
    std::optional<MoebiusMap<Surd>> g_map;
    bool degenerate = false;
    std::string degenerate_reason;
    bool swapped = false;
};

// Row of log-coefficients against the basis (c1(E0), c1(E1+E2+E3), c1(E1)).
// swap_roots negates the row: it is the alpha <-> beta relabeling, under
// which g becomes 1/g and every log flips sign exactly.
RegulatorRow regulator_row(const GlueData& g, int perm, mpfr_prec_t bits,
                           bool swap_roots = false);

// Same row, but obtained by assembling the cycle, projecting it, merging by
// the extended group law and reading off the per-component constants.
RegulatorRow regulator_row_via_cycles(const GlueData& g, int perm, mpfr_prec_t bits);

struct PrecisionPolicy {
    long initial_bits = 128;
    long max_bits = 4096;
    std::string det_tolerance_mode = "interval";

    void validate() const;
    static PrecisionPolicy from_json_file(const std::string& path);
    // REGLAB_MAX_BITS, when set, caps max_bits
    void apply_env();
};

enum class Verdict { Invertible, NotInvertible, Undecided };

inline const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Invertible: return "invertible";
        case Verdict::NotInvertible: return "not-invertible";
        default: return "undecided";
    }
}

struct RegulatorMatrix {
    std::array<RegulatorRow, 3> rows;
    Interval det{128};
    Verdict verdict = Verdict::Undecided;
    bool degenerate = false;
    std::string degenerate_reason;
    long bits_used = 0;
};

// Stacks the three rows and certifies the determinant sign by interval
// arithmetic, doubling the precision until 0 leaves the determinant
// enclosure or the cap is reached. swap_mask bit p negates row p.
RegulatorMatrix regulator_matrix(const GlueData& g, const PrecisionPolicy& policy,
                                 unsigned swap_mask = 0);

// ---- parameter scans ----

struct ScanSpec {
    // sampler: uniform rationals in (0,1) with denominator <= max_den
    long samples = 0;
    unsigned long sampler_seed = 0;
    long max_den = 64;
    // explicit triples take precedence over the sampler when nonempty
    std::vector<std::array<Rational, 3>> triples;
    unsigned threads = 0;  // 0 = hardware default
};

struct TripleVerdict {
    std::array<Rational, 3> seeds;
    std::string verdict;  // invertible | not-invertible | undecided | degenerate
    std::string det_mid;  // empty for degenerate triples
    std::string det_rad;
    long bits_used = 0;
};

struct ScanReport {
    std::vector<TripleVerdict> rows;
    long invertible = 0;
    long not_invertible = 0;
    long undecided = 0;
    long degenerate = 0;

    long total() const { return static_cast<long>(rows.size()); }
    double fraction_invertible() const {
        return rows.empty() ? 0.0 : static_cast<double>(invertible) / rows.size();
    }
    std::string to_csv() const;
};

std::vector<std::array<Rational, 3>> sample_triples(long samples, unsigned long seed,
                                                    long max_den);

ScanReport scan_parameters(const ScanSpec& spec, const PrecisionPolicy& policy);

}  // namespace reglab::twisted
