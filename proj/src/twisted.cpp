#include "reglab/twisted.hpp"

#include <cstdlib>
#include <fstream>

#include "json.hpp"

namespace reglab::twisted {

namespace {

// Orbit segment anchors: seed i sits on the x = infinity chart at step
// k_lo(i); three steps later the orbit reaches the x = 0 chart with the
// y-coordinate advanced by lambda.
constexpr std::array<int, 3> kSegmentLow = {-3, 0, -1};

Surd lift(const Rational& r) { return Surd(r); }

}  // namespace

OrbitPoint orbit_point(const GlueData& g, int seed_index, int k) {
    if (seed_index < 0 || seed_index > 2) throw std::invalid_argument("seed index out of range");
    const int k_lo = kSegmentLow[seed_index];
    const int chart = ((seed_index + k) % 4 + 4) % 4;
    OrbitPoint p;
    p.chart = chart;
    if (chart == 1) {
        // x = infinity chart: y advances by lambda every four steps
        const int steps = k - k_lo;  // multiple of 4 here
        p.x = PointP1<Rational>::infinity();
        p.y = g.seeds[seed_index] + Rational(steps / 4) * g.lambda;
    } else if (chart == 0) {
        const int steps = k - (k_lo + 3);
        p.x = PointP1<Rational>::finite(Rational(0));
        p.y = g.seeds[seed_index] + g.lambda + Rational(steps / 4) * g.lambda;
    }
    return p;
}

std::vector<Rational> CurveOnR::fiber_over(const Rational& x0) const {
    const Poly<Rational> p = x0 * a - b;
    std::vector<Rational> ys = detail::rational_roots(p);
    return ys;
}

CurveOnR build_n_gamma(const Rational& seed) {
    CurveOnR c;
    c.a = Poly<Rational>::linear_root(seed);
    c.b = Poly<Rational>::linear_root(seed + Rational(1));
    return c;
}

CurveOnR build_n_sigma(const Rational& s1, const Rational& s2) {
    if (s1 == s2) throw DegenerateConfig("N_Sigma needs two distinct seeds");
    CurveOnR c;
    c.a = Poly<Rational>::linear_root(s1) * Poly<Rational>::linear_root(s2);
    c.b = Poly<Rational>::linear_root(s1 + Rational(1)) * Poly<Rational>::linear_root(s2 + Rational(1));
    return c;
}

QuadraticRoots intersection_uv(const GlueData& gd, int perm) {
    if (perm < 0 || perm > 2) throw std::invalid_argument("arrangement index must be 0, 1 or 2");
    const GlueData g = gd.normalized();
    if (auto why = g.degeneracy()) throw DegenerateConfig(*why);
    const Rational& a = g.seeds[perm % 3];
    const Rational& b = g.seeds[(perm + 1) % 3];
    const Rational& c = g.seeds[(perm + 2) % 3];
    return quadratic_roots(cross_ratio_quadratic(a, b, c));
}

namespace {

struct RowValues {
    // exact log arguments: entry_i = log |value_i|
    Surd v0, v1, v2;
    MoebiusMap<Surd> g_map;
    QuadraticRoots roots;
};

Surd eval_g(const MoebiusMap<Surd>& g, const Rational& t) {
    const PointP1<Surd> img = g.apply(PointP1<Surd>::finite(lift(t)));
    if (img.is_infinity() || img.value().is_zero())
        throw DegenerateConfig("evaluation point collides with a root");
    return img.value();
}

// The shared construction behind all three arrangements. Arrangement p puts
// the orbit of seed y_p on the Gamma side (positive sign) and the other two
// on the Sigma side. Orbit attachment values are fixed by the segment
// geometry: orbit 0 contributes at y0 on E1+E2+E3, orbit 1 at y1+1 on
// E1+E2+E3, orbit 2 at y2 on E1 and y2+1 on E2+E3.
RowValues row_values(const GlueData& gd, int perm, bool swap_roots) {
    const GlueData g = gd.normalized();
    if (auto why = g.degeneracy()) throw DegenerateConfig(*why);
    QuadraticRoots roots = intersection_uv(g, perm);
    if (roots.complex_pair) throw DegenerateConfig("complex-conjugate intersection");
    if (roots.double_root) throw DegenerateConfig("tangential intersection (double root)");
    Surd alpha = roots.root_low, beta = roots.root_high;
    if (swap_roots) std::swap(alpha, beta);
    const MoebiusMap<Surd> gm(Surd(1), -alpha, Surd(1), -beta);

    const Rational& y0 = g.seeds[0];
    const Rational& y1 = g.seeds[1];
    const Rational& y2 = g.seeds[2];
    const Rational mid = (g.seeds[(perm + 1) % 3] + g.seeds[(perm + 2) % 3] + Rational(1)) / Rational(2);

    auto sgn_of = [&](int orbit) { return orbit == perm ? 1L : -1L; };

    // per-component products over the three orbit chains
    const Surd c_e1 = eval_g(gm, y0).pow(sgn_of(0)) * eval_g(gm, y1 + Rational(1)).pow(sgn_of(1)) *
                      eval_g(gm, y2).pow(sgn_of(2));
    const Surd c_e2 = eval_g(gm, y0).pow(sgn_of(0)) * eval_g(gm, y1 + Rational(1)).pow(sgn_of(1)) *
                      eval_g(gm, y2 + Rational(1)).pow(sgn_of(2));

    RowValues rv{eval_g(gm, mid).inverse(), c_e2, c_e1 / c_e2, gm, roots};
    return rv;
}

}  // namespace

RegulatorRow regulator_row(const GlueData& g, int perm, mpfr_prec_t bits, bool swap_roots) {
    RegulatorRow row;
    row.swapped = swap_roots;
    for (auto& e : row.entries) e = Interval(bits);
    try {
        // compute the canonical row, then apply the swap as an exact negation
        const RowValues rv = row_values(g, perm, false);
        row.entries[0] = log_abs(rv.v0, bits);
        row.entries[1] = log_abs(rv.v1, bits);
        row.entries[2] = log_abs(rv.v2, bits);
        if (swap_roots) {
            for (auto& e : row.entries) e = -e;
            Surd alpha = rv.roots.root_low, beta = rv.roots.root_high;
            row.g_map = MoebiusMap<Surd>(Surd(1), -beta, Surd(1), -alpha);
        } else {
            row.g_map = rv.g_map;
        }
    } catch (const DegenerateConfig& e) {
        row.degenerate = true;
        row.degenerate_reason = e.what();
        // complex-conjugate roots force |g| = 1 on the real locus: zero row
    }
    return row;
}

// ---- cycle assembly ----

namespace {

const char* kEi[4] = {"E0", "E1", "E2", "E3"};

struct ChainPiece {
    int orbit;
    int j_from, j_to;        // component range, empty when j_from > j_to
    Rational attach_y;       // g-argument carried by the chain
};

std::vector<ChainPiece> orbit_pieces(const GlueData& g, int orbit) {
    const int k_lo = kSegmentLow[orbit];
    const int k_hi = k_lo + 3;
    const Rational& seed = g.seeds[orbit];
    std::vector<ChainPiece> out;
    if (k_lo <= -1) out.push_back({orbit, k_lo, -1, seed});
    if (k_hi - 1 >= 0) out.push_back({orbit, 0, k_hi - 1, seed + g.lambda});
    return out;
}

}  // namespace

Epsilon0 assemble_epsilon0(const GlueData& gd, int perm, bool swap_roots) {
    if (perm < 0 || perm > 2) throw std::invalid_argument("arrangement index must be 0, 1 or 2");
    const GlueData g = gd.normalized();
    if (auto why = g.degeneracy()) throw DegenerateConfig(*why);
    QuadraticRoots roots = intersection_uv(g, perm);
    if (roots.complex_pair) throw DegenerateConfig("complex-conjugate intersection");
    if (roots.double_root) throw DegenerateConfig("tangential intersection (double root)");
    Surd alpha = roots.root_low, beta = roots.root_high;
    if (swap_roots) std::swap(alpha, beta);
    const MoebiusMap<Surd> gm(Surd(1), -alpha, Surd(1), -beta);
    const RationalFn<Surd> g_fn = gm.as_rational_fn();

    Epsilon0 out{{}, {}, {}, {}, gm, roots, {}, {}};

    // geometry of the central fiber components
    for (int i = 0; i < 4; ++i)
        out.geometry.emplace(kEi[i], CurveComponent(kEi[i], ComponentKind::Fiber));
    out.geometry.at("E0").with_marker("q", PointP1<Rational>::finite(Rational(1)));
    out.geometry.emplace("C", CurveComponent("C", ComponentKind::SectionC)
                                  .with_marker("q", PointP1<Rational>::infinity()));

    // N-curve for the Gamma side (seed y_perm), N_Sigma from the other two
    out.n_gamma = build_n_gamma(g.seeds[perm % 3]);
    out.n_sigma = build_n_sigma(g.seeds[(perm + 1) % 3], g.seeds[(perm + 2) % 3]);
    for (int orbit = 0; orbit < 3; ++orbit) {
        const int k_lo = kSegmentLow[orbit];
        CurveOnR& host = orbit == perm ? out.n_gamma : out.n_sigma;
        host.chains.push_back({orbit, k_lo, k_lo + 2});
    }
    const CurveOnR& n_gamma = out.n_gamma;
    const CurveOnR& n_sigma = out.n_sigma;

    auto curve_map = [](const CurveOnR& c) {
        // y -> x = B(y)/A(y), the projection of the curve to E0
        std::vector<Surd> an(c.a.coeffs().size()), bn(c.b.coeffs().size());
        for (size_t i = 0; i < an.size(); ++i) an[i] = Surd(c.a.coeffs()[i]);
        for (size_t i = 0; i < bn.size(); ++i) bn[i] = Surd(c.b.coeffs()[i]);
        return FiniteMapP1<Surd>(RationalFn<Surd>(Poly<Surd>(std::move(bn)), Poly<Surd>(std::move(an))));
    };
    const FiniteMapP1<Surd> identity_map{RationalFn<Surd>::x()};

    out.prestable.add(g_fn, "N_Gamma");
    out.prestable.add(g_fn.inverse(), "N_Sigma");
    out.maps.emplace("N_Gamma", ProjectionSpec<Surd>{"E0", curve_map(n_gamma)});
    out.maps.emplace("N_Sigma", ProjectionSpec<Surd>{"E0", curve_map(n_sigma)});

    // chain components carry the constant value of g (Gamma side) or 1/g
    // (Sigma side) at their attachment point
    for (int orbit = 0; orbit < 3; ++orbit) {
        const bool gamma_side = orbit == perm;
        for (const auto& piece : orbit_pieces(g, orbit)) {
            const Surd value = [&] {
                const PointP1<Surd> img = gm.apply(PointP1<Surd>::finite(lift(piece.attach_y)));
                if (img.is_infinity() || img.value().is_zero())
                    throw DegenerateConfig("chain attachment collides with a root");
                return gamma_side ? img.value() : img.value().inverse();
            }();
            for (int j = piece.j_from; j <= piece.j_to; ++j) {
                const int ei = ((orbit + j) % 4 + 4) % 4;
                const std::string comp = std::string(gamma_side ? "Y" : "Z") + ":" +
                                         std::to_string(orbit) + ":" + std::to_string(j) + ":" + kEi[ei];
                out.prestable.add(RationalFn<Surd>(value), comp);
                out.maps.emplace(comp, ProjectionSpec<Surd>{kEi[ei], identity_map});
            }
        }
    }

    // the section and the rest carry the unit function
    out.prestable.add(RationalFn<Surd>(Surd(1)), "Y:C");
    out.prestable.add(RationalFn<Surd>(Surd(1)), "Z:C");
    out.maps.emplace("Y:C", ProjectionSpec<Surd>{"C", identity_map});
    out.maps.emplace("Z:C", ProjectionSpec<Surd>{"C", identity_map});

    out.projected = project_prestable(out.prestable, out.maps);
    return out;
}

RegulatorRow regulator_row_via_cycles(const GlueData& g, int perm, mpfr_prec_t bits) {
    RegulatorRow row;
    for (auto& e : row.entries) e = Interval(bits);
    try {
        const Epsilon0 eps = assemble_epsilon0(g, perm);
        const Precycle<Surd> merged = group_law_merge(eps.projected);
        std::optional<Surd> on_e0, on_e1, on_e2;
        for (const auto& term : merged.terms) {
            if (!term.fn.is_constant())
                throw std::logic_error("merged limit cycle has a non-constant term");
            const Surd v = term.fn.constant_value();
            for (const auto& comp : term.components) {
                if (comp == "E0") on_e0 = v;
                if (comp == "E1") on_e1 = v;
                if (comp == "E2") on_e2 = v;
            }
        }
        if (!on_e0) throw std::logic_error("merged limit cycle is missing the E0 term");
        // a chain product can collapse to 1, in which case the merge drops it
        const Surd e1 = on_e1.value_or(Surd(1));
        const Surd e2 = on_e2.value_or(Surd(1));
        row.entries[0] = log_abs(*on_e0, bits);
        row.entries[1] = log_abs(e2, bits);
        row.entries[2] = log_abs(e1 / e2, bits);
        row.g_map = eps.g_map;
    } catch (const DegenerateConfig& e) {
        row.degenerate = true;
        row.degenerate_reason = e.what();
    }
    return row;
}

// ---- precision policy ----

void PrecisionPolicy::validate() const {
    if (initial_bits < 16) throw std::invalid_argument("initial_bits too small");
    if (max_bits < initial_bits) throw std::invalid_argument("max_bits < initial_bits");
    if (det_tolerance_mode != "interval")
        throw std::invalid_argument("unknown det_tolerance_mode: " + det_tolerance_mode);
}

PrecisionPolicy PrecisionPolicy::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open precision config: " + path);
    nlohmann::json j;
    in >> j;
    PrecisionPolicy p;
    if (j.contains("initial_bits")) p.initial_bits = j["initial_bits"].get<long>();
    if (j.contains("max_bits")) p.max_bits = j["max_bits"].get<long>();
    if (j.contains("det_tolerance_mode")) p.det_tolerance_mode = j["det_tolerance_mode"].get<std::string>();
    p.validate();
    return p;
}

void PrecisionPolicy::apply_env() {
    if (const char* env = std::getenv("REGLAB_MAX_BITS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= initial_bits) max_bits = cap;
    }
}

RegulatorMatrix regulator_matrix(const GlueData& g, const PrecisionPolicy& policy,
                                 unsigned swap_mask) {
    policy.validate();
    RegulatorMatrix out;
    long bits = policy.initial_bits;
    while (true) {
        out.bits_used = bits;
        for (int p = 0; p < 3; ++p)
            out.rows[p] = regulator_row(g, p, bits, (swap_mask >> p) & 1u);
        for (int p = 0; p < 3; ++p) {
            if (out.rows[p].degenerate) {
                out.degenerate = true;
                out.degenerate_reason = out.rows[p].degenerate_reason;
                out.verdict = Verdict::NotInvertible;  // a degenerate row is zero
                out.det = Interval(bits);
                return out;
            }
        }
        Interval m[3][3] = {{out.rows[0].entries[0], out.rows[0].entries[1], out.rows[0].entries[2]},
                            {out.rows[1].entries[0], out.rows[1].entries[1], out.rows[1].entries[2]},
                            {out.rows[2].entries[0], out.rows[2].entries[1], out.rows[2].entries[2]}};
        out.det = det3(m);
        if (!out.det.contains_zero()) {
            out.verdict = Verdict::Invertible;
            return out;
        }
        if (bits >= policy.max_bits) break;
        bits = std::min(bits * 2, policy.max_bits);
    }
    out.verdict = Verdict::Undecided;
    return out;
}

}  // namespace reglab::twisted
