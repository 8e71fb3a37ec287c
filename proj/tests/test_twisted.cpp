#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <random>

#include "oracles.hpp"
#include "reglab/report.hpp"
#include "reglab/twisted.hpp"

using namespace reglab;
using namespace reglab::twisted;

namespace {

const GlueData kGood(Rational(0), Rational(1, 8), Rational(1, 2));

GlueData random_triple(std::mt19937_64& rng) {
    while (true) {
        const Rational a = oracle::random_rational_01(rng), b = oracle::random_rational_01(rng),
                       c = oracle::random_rational_01(rng);
        const GlueData g(a, b, c);
        if (!g.degeneracy()) return g;
    }
}

bool intervals_close(const Interval& a, const Interval& b, double tol = 1e-20) {
    return std::abs(a.mid_double() - b.mid_double()) <=
           tol + a.rad_double() + b.rad_double();
}

}  // namespace

TEST_CASE("glue data degeneracy detection") {
    CHECK(!kGood.degeneracy());
    CHECK(GlueData(Rational(0), Rational(0), Rational(1)).degeneracy());
    CHECK(GlueData(Rational(0), Rational(1), Rational(1, 2)).degeneracy());  // 1 = 0 + lambda
    CHECK_THROWS(GlueData(Rational(0), Rational(1), Rational(2), Rational(0)));
}

TEST_CASE("N-curves through the marked points") {
    const CurveOnR ng = build_n_gamma(Rational(0));
    // x*y - (y - 1)
    CHECK(ng.a == Poly<Rational>::linear_root(Rational(0)));
    CHECK(ng.b == Poly<Rational>::linear_root(Rational(1)));
    CHECK(ng.passes_q());
    // (0, y0 + 1) lies on the curve: 0*A(y0+1) - B(y0+1) = 0
    CHECK(ng.b.eval(Rational(1)).is_zero());
    CHECK(ng.fiber_over(Rational(1)).empty());  // only infinity over x = 1

    const CurveOnR ns = build_n_sigma(Rational(1, 8), Rational(1, 2));
    CHECK(ns.a == Poly<Rational>::linear_root(Rational(1, 8)) *
                      Poly<Rational>::linear_root(Rational(1, 2)));
    CHECK(ns.b == Poly<Rational>::linear_root(Rational(9, 8)) *
                      Poly<Rational>::linear_root(Rational(3, 2)));
    CHECK(ns.passes_q());
    CHECK(ns.b.eval(Rational(9, 8)).is_zero());
    // fiber over x = 1: the midpoint (y1 + y2 + 1)/2 = 13/16, plus infinity
    const auto fiber = ns.fiber_over(Rational(1));
    REQUIRE(fiber.size() == 1);
    CHECK(fiber[0] == Rational(13, 16));

    CHECK_THROWS_AS(build_n_sigma(Rational(1), Rational(1)), DegenerateConfig);
}

TEST_CASE("orbit points") {
    // r1^(3) = (0, y1 + 1)
    const OrbitPoint r13 = orbit_point(kGood, 1, 3);
    CHECK(r13.chart == 0);
    REQUIRE(r13.y);
    CHECK(*r13.y == Rational(9, 8));
    CHECK(!r13.x->is_infinity());

    // r2^(2) = (0, y2 + 1); the seed r2^(-1) = (inf, y2)
    const OrbitPoint r22 = orbit_point(kGood, 2, 2);
    CHECK(r22.chart == 0);
    CHECK(*r22.y == Rational(3, 2));
    const OrbitPoint r2seed = orbit_point(kGood, 2, -1);
    CHECK(r2seed.chart == 1);
    CHECK(r2seed.x->is_infinity());
    CHECK(*r2seed.y == Rational(1, 2));

    // r0^(0) = (0, y0 + 1) and r0^(-3) the seed
    CHECK(*orbit_point(kGood, 0, 0).y == Rational(1));
    CHECK(*orbit_point(kGood, 0, -3).y == Rational(0));

    // charts 2 and 3 carry no coordinates
    CHECK(!orbit_point(kGood, 0, -2).y);
    CHECK(!orbit_point(kGood, 0, -1).y);

    // translation by lambda every four steps
    for (int k : {-3, 0, 1, 2}) {
        const OrbitPoint a = orbit_point(kGood, 1, k);
        const OrbitPoint b = orbit_point(kGood, 1, k + 4);
        CHECK(a.chart == b.chart);
        if (a.y) CHECK(*b.y == *a.y + Rational(1));
    }
}

TEST_CASE("intersection points for the three arrangements") {
    const QuadraticRoots r0 = intersection_uv(kGood, 0);
    CHECK(r0.root_low == Surd(Rational(1, 2), Rational(-1, 4), 5));
    CHECK(r0.root_high == Surd(Rational(1, 2), Rational(1, 4), 5));

    // the quadratic of arrangement p is the cross-ratio quadratic of the
    // cyclically arranged seeds
    for (int p = 0; p < 3; ++p) {
        const Poly<Rational> q = cross_ratio_quadratic(
            kGood.seeds[p % 3], kGood.seeds[(p + 1) % 3], kGood.seeds[(p + 2) % 3]);
        const QuadraticRoots direct = quadratic_roots(q);
        const QuadraticRoots via = intersection_uv(kGood, p);
        CHECK(direct.root_low == via.root_low);
        CHECK(direct.root_high == via.root_high);
    }

    // swapping the last two seeds leaves the roots unchanged
    const GlueData swapped(Rational(0), Rational(1, 2), Rational(1, 8));
    const QuadraticRoots rs = intersection_uv(swapped, 0);
    CHECK(rs.root_low == r0.root_low);
    CHECK(rs.root_high == r0.root_high);

    // tangential contact: disc = 4 (b - a)(c - a) + 1 = 0
    const GlueData tangent(Rational(0), Rational(1, 8), Rational(-2));
    CHECK(intersection_uv(tangent, 0).double_root);
    CHECK(regulator_row(tangent, 0, 128).degenerate);

    CHECK_THROWS_AS(intersection_uv(GlueData(Rational(1), Rational(1), Rational(2)), 0),
                    DegenerateConfig);
    CHECK_THROWS_AS(intersection_uv(kGood, 3), std::invalid_argument);
}

TEST_CASE("assembled cycle: E0 value, unit terms, closure") {
    const Epsilon0 eps = assemble_epsilon0(kGood, 0);

    // the merged E0 constant is 1/g0(13/16) = -11/(21 + 8 sqrt 5)
    const Precycle<Surd> merged = group_law_merge(eps.projected);
    std::optional<Surd> e0;
    for (const auto& term : merged.terms)
        for (const auto& comp : term.components)
            if (comp == "E0") e0 = term.fn.constant_value();
    REQUIRE(e0);
    const Surd expected = Surd(Rational(-21, 11), Rational(-8, 11), 5).inverse();
    CHECK(*e0 == expected);

    // unit terms carry no regulator weight: merging drops them
    for (const auto& term : merged.terms)
        CHECK(!term.fn.is_one());

    const auto [closed, residual] = validate_closure(eps.projected, eps.geometry);
    CHECK(closed);

    CHECK_THROWS_AS(assemble_epsilon0(GlueData(Rational(0), Rational(1), Rational(-1, 4)), 0),
                    DegenerateConfig);
}

TEST_CASE("closure holds for random non-degenerate triples and all arrangements") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 15; ++i) {
        const GlueData g = random_triple(rng);
        for (int p = 0; p < 3; ++p) {
            const Epsilon0 eps = assemble_epsilon0(g, p);
            CHECK(validate_closure(eps.projected, eps.geometry).first);
        }
    }
}

TEST_CASE("regulator row: values, degeneracies, swaps") {
    const RegulatorRow row = regulator_row(kGood, 0, 128);
    REQUIRE(!row.degenerate);

    // independent high-precision evaluation from the quadratic formula
    const auto [alo, ahi] = oracle::quadratic_formula(Rational(-1), Rational(-1, 16));
    auto g_at = [&](const Rational& t) {
        return (oracle::MpF(t) - alo) / (oracle::MpF(t) - ahi);
    };
    const oracle::MpF e0 = (oracle::MpF(Rational(1)) / g_at(Rational(13, 16))).log_abs();
    const oracle::MpF e1 =
        (g_at(Rational(0)) / (g_at(Rational(9, 8)) * g_at(Rational(3, 2)))).log_abs();
    const oracle::MpF e2 = (g_at(Rational(3, 2)) / g_at(Rational(1, 2))).log_abs();
    CHECK(std::abs(row.entries[0].mid_double() - e0.to_double()) < 1e-12);
    CHECK(std::abs(row.entries[1].mid_double() - e1.to_double()) < 1e-12);
    CHECK(std::abs(row.entries[2].mid_double() - e2.to_double()) < 1e-12);

    // rows 1 and 2 against their published entry shapes, with the roots of
    // the cyclically arranged quadratics from the independent formula
    {
        const Poly<Rational> q1 = cross_ratio_quadratic(Rational(1, 8), Rational(1, 2), Rational(0));
        const auto [a1, b1] = oracle::quadratic_formula(q1.coeff(1), q1.coeff(0));
        auto g1 = [&](const Rational& t) { return (oracle::MpF(t) - a1) / (oracle::MpF(t) - b1); };
        const RegulatorRow row1 = regulator_row(kGood, 1, 128);
        const oracle::MpF r1e0 = (oracle::MpF(Rational(1)) / g1(Rational(3, 4))).log_abs();
        const oracle::MpF r1e1 =
            (g1(Rational(9, 8)) / (g1(Rational(0)) * g1(Rational(3, 2)))).log_abs();
        const oracle::MpF r1e2 = (g1(Rational(3, 2)) / g1(Rational(1, 2))).log_abs();
        CHECK(std::abs(row1.entries[0].mid_double() - r1e0.to_double()) < 1e-12);
        CHECK(std::abs(row1.entries[1].mid_double() - r1e1.to_double()) < 1e-12);
        CHECK(std::abs(row1.entries[2].mid_double() - r1e2.to_double()) < 1e-12);

        const Poly<Rational> q2 = cross_ratio_quadratic(Rational(1, 2), Rational(0), Rational(1, 8));
        const auto [a2, b2] = oracle::quadratic_formula(q2.coeff(1), q2.coeff(0));
        auto g2 = [&](const Rational& t) { return (oracle::MpF(t) - a2) / (oracle::MpF(t) - b2); };
        const RegulatorRow row2 = regulator_row(kGood, 2, 128);
        const oracle::MpF r2e0 = (oracle::MpF(Rational(1)) / g2(Rational(9, 16))).log_abs();
        const oracle::MpF r2e1 =
            (g2(Rational(3, 2)) / (g2(Rational(0)) * g2(Rational(9, 8)))).log_abs();
        const oracle::MpF r2e2 =
            (g2(Rational(1, 2)) / g2(Rational(3, 2))).log_abs();  // note the sign of this entry
        CHECK(std::abs(row2.entries[0].mid_double() - r2e0.to_double()) < 1e-12);
        CHECK(std::abs(row2.entries[1].mid_double() - r2e1.to_double()) < 1e-12);
        CHECK(std::abs(row2.entries[2].mid_double() - r2e2.to_double()) < 1e-12);
    }

    // complex-conjugate roots zero the row: (b-a)(c-a) = -2 < -1/4
    const RegulatorRow zero = regulator_row(GlueData(Rational(0), Rational(2), Rational(-1)), 0, 128);
    CHECK(zero.degenerate);
    for (const auto& e : zero.entries) CHECK(e.contains_zero());

    // swapping alpha and beta negates the row entry-wise, bit for bit
    const RegulatorRow swapped = regulator_row(kGood, 0, 128, true);
    for (int i = 0; i < 3; ++i) {
        CHECK(swapped.entries[i].mid_str() == (-row.entries[i]).mid_str());
        CHECK(swapped.entries[i].rad_str() == row.entries[i].rad_str());
    }
}

TEST_CASE("rows from the cycle pipeline match the direct formulas") {
    std::mt19937_64 rng(41);
    std::vector<GlueData> triples{kGood};
    for (int i = 0; i < 8; ++i) triples.push_back(random_triple(rng));
    for (const GlueData& g : triples) {
        for (int p = 0; p < 3; ++p) {
            const RegulatorRow direct = regulator_row(g, p, 256);
            const RegulatorRow cyc = regulator_row_via_cycles(g, p, 256);
            REQUIRE(direct.degenerate == cyc.degenerate);
            if (direct.degenerate) continue;
            for (int i = 0; i < 3; ++i) CHECK(intervals_close(direct.entries[i], cyc.entries[i]));
        }
    }
}

TEST_CASE("E0 entry equals minus the log of the pushforward ratio") {
    // build the two pushforwards explicitly and compare against the row
    for (int p = 0; p < 3; ++p) {
        const Epsilon0 eps = assemble_epsilon0(kGood, p);
        const RationalFn<Surd> g_fn = eps.g_map.as_rational_fn();
        const RationalFn<Surd> push_y =
            norm_pushforward(g_fn, *eps.maps.at("N_Gamma").map);
        const RationalFn<Surd> push_z =
            norm_pushforward(g_fn, *eps.maps.at("N_Sigma").map);
        CHECK(rf_divisor(push_y) == rf_divisor(push_z));
        const RationalFn<Surd> ratio = push_z / push_y;
        REQUIRE(ratio.is_constant());
        const RegulatorRow row = regulator_row(kGood, p, 192);
        const Interval expected = log_abs(ratio.constant_value(), 192);
        CHECK(intervals_close(row.entries[0], -expected));

        // over x = 1 the fiber is q itself plus the midpoint, so the
        // degree-2 pushforward evaluates to g(1) * g(mid) = g(mid)
        const Rational mid =
            (kGood.seeds[(p + 1) % 3] + kGood.seeds[(p + 2) % 3] + Rational(1)) / Rational(2);
        const Surd g_mid = eps.g_map.apply(PointP1<Surd>::finite(Surd(mid))).value();
        CHECK(push_z.eval(Surd(1)) == g_mid);
        CHECK(ratio.constant_value() == g_mid);
    }
}

TEST_CASE("assembled curves carry well-formed chains") {
    for (int p = 0; p < 3; ++p) {
        const Epsilon0 eps = assemble_epsilon0(kGood, p);
        CHECK(eps.n_gamma.chains.size() == 1);
        CHECK(eps.n_gamma.chains[0].orbit == p);
        CHECK(eps.n_sigma.chains.size() == 2);
        CHECK(eps.n_gamma.chains_well_formed());
        CHECK(eps.n_sigma.chains_well_formed());
    }
}

TEST_CASE("regulator matrix: certification, degeneracy, precision stability") {
    PrecisionPolicy policy;
    policy.initial_bits = 128;
    policy.max_bits = 512;
    const RegulatorMatrix m = regulator_matrix(kGood, policy);
    CHECK(m.verdict == Verdict::Invertible);
    CHECK(m.bits_used <= 512);
    CHECK(m.det.mid_double() == doctest::Approx(12.0958).epsilon(1e-3));

    const RegulatorMatrix bad =
        regulator_matrix(GlueData(Rational(0), Rational(2), Rational(-1)), policy);
    CHECK(bad.verdict == Verdict::NotInvertible);
    CHECK(bad.degenerate);

    // verdicts are stable under precision increase
    for (long bits : {128L, 256L, 1024L}) {
        PrecisionPolicy p2;
        p2.initial_bits = bits;
        p2.max_bits = bits;
        CHECK(regulator_matrix(kGood, p2).verdict == Verdict::Invertible);
    }
}

TEST_CASE("|det| is bit-identical under any root-swap pattern") {
    std::mt19937_64 rng(43);
    PrecisionPolicy policy;
    policy.initial_bits = 192;
    policy.max_bits = 192;
    for (int i = 0; i < 10; ++i) {
        const GlueData g = random_triple(rng);
        const RegulatorMatrix base = regulator_matrix(g, policy);
        if (base.degenerate) continue;
        const std::string base_abs = base.det.abs().mid_str();
        for (unsigned mask = 1; mask < 8; ++mask) {
            const RegulatorMatrix v = regulator_matrix(g, policy, mask);
            CHECK(v.det.abs().mid_str() == base_abs);
            CHECK(v.det.abs().rad_str() == base.det.abs().rad_str());
        }
    }
}

TEST_CASE("lambda rescaling is a smoke-level no-op") {
    const GlueData scaled(Rational(0), Rational(1, 4), Rational(1), Rational(2));
    const GlueData unit(Rational(0), Rational(1, 8), Rational(1, 2));
    for (int p = 0; p < 3; ++p) {
        const RegulatorRow a = regulator_row(scaled, p, 128);
        const RegulatorRow b = regulator_row(unit, p, 128);
        for (int i = 0; i < 3; ++i) CHECK(a.entries[i].mid_str() == b.entries[i].mid_str());
    }
}

TEST_CASE("scan: singleton, degenerate entries, determinism, empty grid") {
    PrecisionPolicy policy;
    ScanSpec single;
    single.triples.push_back({Rational(0), Rational(1, 8), Rational(1, 2)});
    const ScanReport r1 = scan_parameters(single, policy);
    CHECK(r1.total() == 1);
    CHECK(r1.invertible == 1);
    CHECK(r1.fraction_invertible() == 1.0);

    ScanSpec with_bad = single;
    with_bad.triples.push_back({Rational(1, 3), Rational(1, 3), Rational(1, 2)});
    const ScanReport r2 = scan_parameters(with_bad, policy);
    CHECK(r2.degenerate == 1);
    CHECK(r2.invertible == 1);

    ScanSpec sampled;
    sampled.samples = 40;
    sampled.sampler_seed = 99;
    sampled.threads = 4;
    const ScanReport a = scan_parameters(sampled, policy);
    const ScanReport b = scan_parameters(sampled, policy);
    CHECK(a.to_csv() == b.to_csv());
    CHECK(a.total() == 40);

    ScanSpec empty;
    CHECK_THROWS(scan_parameters(empty, policy));
}

TEST_CASE("precision policy: file loading and env cap") {
    const char* path = "test_policy.json";
    write_file(path, "{\"initial_bits\": 64, \"max_bits\": 256, \"det_tolerance_mode\": \"interval\"}\n");
    PrecisionPolicy p = PrecisionPolicy::from_json_file(path);
    CHECK(p.initial_bits == 64);
    CHECK(p.max_bits == 256);
    std::remove(path);

    setenv("REGLAB_MAX_BITS", "128", 1);
    p.apply_env();
    CHECK(p.max_bits == 128);
    unsetenv("REGLAB_MAX_BITS");

    PrecisionPolicy bad;
    bad.det_tolerance_mode = "float";
    CHECK_THROWS(bad.validate());
}
