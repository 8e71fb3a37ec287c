// Command-line driver: regulator matrix checks, parameter scans, lattice
// queries and the appendix integrals.
//
// Exit codes: 0 success / verdict yes, 1 usage error, 2 degenerate input,
// 3 undecided or non-convergent.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "reglab/k3.hpp"
#include "reglab/report.hpp"

namespace {

using namespace reglab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitUndecided = 3;

std::array<Rational, 3> parse_seed_triple(const std::string& text) {
    std::array<Rational, 3> out;
    std::stringstream ss(text);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= 3) throw std::invalid_argument("expected three comma-separated rationals");
        out[i++] = Rational::parse(part);
    }
    if (i != 3) throw std::invalid_argument("expected three comma-separated rationals");
    return out;
}

struct PolicyOptions {
    long initial_bits = 128;
    long max_bits = 4096;
    std::string config_path;

    twisted::PrecisionPolicy resolve() const {
        twisted::PrecisionPolicy p;
        if (!config_path.empty()) p = twisted::PrecisionPolicy::from_json_file(config_path);
        else {
            p.initial_bits = initial_bits;
            p.max_bits = max_bits;
        }
        p.apply_env();
        p.validate();
        return p;
    }
};

void add_policy_options(CLI::App* cmd, PolicyOptions& opts) {
    cmd->add_option("--initial-bits", opts.initial_bits, "starting working precision");
    cmd->add_option("--max-bits", opts.max_bits, "precision cap for the certification loop");
    cmd->add_option("--precision-config", opts.config_path,
                    "JSON file with initial_bits / max_bits / det_tolerance_mode");
}

void emit(const nlohmann::json& report, const std::string& json_path) {
    const std::string text = report.dump(2) + "\n";
    if (json_path.empty()) std::cout << text;
    else write_file(json_path, text);
}

int cmd_matrix(const std::string& seeds_text, const PolicyOptions& popts, unsigned swap_mask,
               const std::string& json_path) {
    const auto seeds = parse_seed_triple(seeds_text);
    const twisted::PrecisionPolicy policy = popts.resolve();
    const twisted::GlueData g(seeds[0], seeds[1], seeds[2]);
    nlohmann::json config{{"seeds", {seeds[0].str(), seeds[1].str(), seeds[2].str()}},
                          {"initial_bits", policy.initial_bits},
                          {"max_bits", policy.max_bits},
                          {"swap_mask", swap_mask}};
    if (auto why = g.degeneracy()) {
        emit(report_envelope("matrix", config, {{"verdict", "degenerate"}, {"reason", *why}}),
             json_path);
        return kExitDegenerate;
    }
    const twisted::RegulatorMatrix m = twisted::regulator_matrix(g, policy, swap_mask);
    emit(report_envelope("matrix", config, to_json(m, seeds)), json_path);
    if (m.degenerate) return kExitDegenerate;
    return m.verdict == twisted::Verdict::Invertible ? kExitOk : kExitUndecided;
}

int cmd_scan(twisted::ScanSpec spec, const std::vector<std::string>& triple_texts,
             const PolicyOptions& popts, const std::string& csv_path,
             const std::string& json_path) {
    for (const auto& t : triple_texts) spec.triples.push_back(parse_seed_triple(t));
    const twisted::PrecisionPolicy policy = popts.resolve();
    const twisted::ScanReport report = twisted::scan_parameters(spec, policy);
    if (!csv_path.empty()) write_file(csv_path, report.to_csv());
    nlohmann::json config{{"samples", spec.samples},
                          {"sampler_seed", spec.sampler_seed},
                          {"max_den", spec.max_den},
                          {"explicit_triples", triple_texts},
                          {"threads", spec.threads},
                          {"initial_bits", policy.initial_bits},
                          {"max_bits", policy.max_bits}};
    emit(report_envelope("scan", config, to_json(report)), json_path);
    return kExitOk;
}

elliptic::QuadratureConfig quad_from(int radial, int angular, int levels, double target,
                                     double delta) {
    elliptic::QuadratureConfig cfg;
    cfg.radial = radial;
    cfg.angular = angular;
    cfg.levels = levels;
    cfg.target = target;
    cfg.exclusion_radius = delta;
    return cfg;
}

nlohmann::json quad_json(const elliptic::QuadratureConfig& cfg) {
    return {{"inner_radius", cfg.inner_radius}, {"outer_radius", cfg.outer_radius},
            {"radial", cfg.radial},             {"angular", cfg.angular},
            {"exclusion_radius", cfg.exclusion_radius}, {"levels", cfg.levels},
            {"target", cfg.target}};
}

int cmd_appendix_claim1(const std::string& curve_text, const elliptic::QuadratureConfig& cfg,
                        const std::string& json_path) {
    const elliptic::EllipticCurve curve(parse_poly(curve_text));
    const elliptic::Det2x2Result det = elliptic::det2x2_claim(curve, cfg);
    nlohmann::json result{
        {"entries", {{det.entries[0][0], det.entries[0][1]}, {det.entries[1][0], det.entries[1][1]}}},
        {"entry_errors",
         {{det.entry_errors[0][0], det.entry_errors[0][1]},
          {det.entry_errors[1][0], det.entry_errors[1][1]}}},
        {"det", det.det},
        {"det_error", det.det_error},
        {"det_prev", det.det_prev},
        {"det_prev_error", det.det_prev_error},
        {"levels_agree", det.levels_agree},
        {"verdict", det.nonzero ? "nonzero" : "undecided"},
        {"note", "sample-curve evidence for the genericity claim, not a proof"}};
    emit(report_envelope("appendix claim1", {{"curve", curve_text}, {"quadrature", quad_json(cfg)}},
                         result),
         json_path);
    return det.nonzero && det.levels_agree ? kExitOk : kExitUndecided;
}

elliptic::Annulus parse_annulus(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("annulus expects eps,R");
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

int cmd_appendix_degenerate(const std::string& pair_text, const std::string& annulus_text,
                            const elliptic::QuadratureConfig& cfg, const std::string& json_path,
                            const std::string& trace_csv) {
    const elliptic::DegeneratePair which = elliptic::parse_degenerate_pair(pair_text);
    const elliptic::Annulus annulus = parse_annulus(annulus_text);
    const elliptic::IntegralResult r = elliptic::degenerate_integral(which, annulus, cfg);
    if (!trace_csv.empty()) write_file(trace_csv, r.trace_csv());
    nlohmann::json result = to_json(r);
    result["integrand"] = elliptic::degenerate_integrand_str(which);
    emit(report_envelope("appendix degenerate",
                         {{"pair", pair_text},
                          {"annulus", {annulus.eps, annulus.R}},
                          {"quadrature", quad_json(cfg)}},
                         result),
         json_path);
    return r.non_convergent ? kExitUndecided : kExitOk;
}

int cmd_appendix_substitution(const std::string& annulus_text,
                              const elliptic::QuadratureConfig& cfg,
                              const std::string& json_path) {
    const elliptic::Annulus annulus = parse_annulus(annulus_text);
    const elliptic::SubstitutionCheck check = elliptic::verify_w_substitution(annulus, cfg);
    emit(report_envelope("appendix substitution",
                         {{"annulus", {annulus.eps, annulus.R}}, {"quadrature", quad_json(cfg)}},
                         {{"pass", check.pass},
                          {"lhs_f2_omega2", check.lhs},
                          {"rhs_minus_f1_omega1", check.rhs},
                          {"tolerance", check.tolerance}}),
         json_path);
    return check.pass ? kExitOk : kExitUndecided;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale regulator computations on K3 degenerations and elliptic curves"};
    app.require_subcommand(1);

    std::string json_path, csv_path, trace_csv;

    auto* matrix = app.add_subcommand("matrix", "certify the 3x3 regulator coefficient matrix");
    std::string seeds_text;
    unsigned swap_mask = 0;
    PolicyOptions matrix_policy;
    matrix->add_option("--seeds", seeds_text, "y0,y1,y2 as rationals, e.g. 0,1/8,1/2")->required();
    matrix->add_option("--swap-mask", swap_mask, "bit p swaps the roots used in row p");
    matrix->add_option("--json", json_path, "write the report here instead of stdout");
    add_policy_options(matrix, matrix_policy);

    auto* scan = app.add_subcommand("scan", "verdicts over a grid or sample of seed triples");
    twisted::ScanSpec spec;
    std::vector<std::string> triple_texts;
    PolicyOptions scan_policy;
    scan->add_option("--samples", spec.samples, "number of sampled triples");
    scan->add_option("--sampler-seed", spec.sampler_seed, "RNG seed; fixed seed = identical CSV");
    scan->add_option("--max-den", spec.max_den, "denominator bound for sampled rationals");
    scan->add_option("--triple", triple_texts, "explicit y0,y1,y2 (repeatable)");
    scan->add_option("--threads", spec.threads, "worker threads (0 = hardware)");
    scan->add_option("--csv", csv_path, "write per-triple verdicts as CSV");
    scan->add_option("--json", json_path, "write the aggregate report here");
    add_policy_options(scan, scan_policy);

    auto* lattice = app.add_subcommand("lattice", "BL K3 Picard lattice queries");
    lattice->fallthrough();
    std::string a_text = "C", b_text = "F", class_text = "C", chains_text = "4,4,4,4,4,4";
    long nodes = 24, rank = 20;
    auto* lat_pair = lattice->add_subcommand("pair", "intersection pairing of two classes");
    lat_pair->add_option("--a", a_text, "first class, e.g. C")->required();
    lat_pair->add_option("--b", b_text, "second class, e.g. F")->required();
    auto* lat_self = lattice->add_subcommand("self", "self-intersection of a class");
    lat_self->add_option("--class", class_text, "class, e.g. C+5F")->required();
    auto* lat_picard = lattice->add_subcommand("picard", "Picard number of a fiber configuration");
    lat_picard->add_option("--chains", chains_text, "chain lengths, e.g. 4,4,4,4,4,4");
    auto* lat_configs = lattice->add_subcommand("configs", "fiber configurations of maximal rank");
    lat_configs->add_option("--nodes", nodes, "total node count");
    lat_configs->add_option("--rank", rank, "target Picard rank");
    lattice->add_option("--json", json_path, "write the report here instead of stdout");
    lattice->require_subcommand(1);

    auto* appendix = app.add_subcommand("appendix", "elliptic-curve regulator integrals");
    appendix->fallthrough();
    std::string curve_text = "x^3-x", pair_text = "f1,omega1", annulus_text = "0.1,10";
    int radial = 160, angular = 64, levels = 3;
    double target = 1e-4, delta = 0.04;
    auto* ap_claim1 = appendix->add_subcommand("claim1", "2x2 determinant on a sample curve");
    ap_claim1->add_option("--curve", curve_text, "cubic h(x), e.g. x^3-x");
    auto* ap_degen = appendix->add_subcommand("degenerate", "cuspidal-limit annulus integral");
    ap_degen->add_option("--pair", pair_text, "f1|f2,omega1|omega2")->required();
    ap_degen->add_option("--annulus", annulus_text, "eps,R");
    ap_degen->add_option("--trace-csv", trace_csv, "write the refinement trace as CSV");
    auto* ap_subst = appendix->add_subcommand("substitution", "check (f2,omega2) = -(f1,omega1)");
    ap_subst->add_option("--annulus", annulus_text, "eps,R");
    appendix->add_option("--radial", radial, "radial cells at level 0");
    appendix->add_option("--angular", angular, "angular cells at level 0 (rounded to 4k)");
    appendix->add_option("--levels", levels, "refinement levels");
    appendix->add_option("--target", target, "stop refining below this level-to-level change");
    appendix->add_option("--delta", delta, "exclusion radius around singular points");
    appendix->add_option("--json", json_path, "write the report here instead of stdout");
    appendix->require_subcommand(1);

    try {
        app.parse(argc, argv);
        if (matrix->parsed()) return cmd_matrix(seeds_text, matrix_policy, swap_mask, json_path);
        if (scan->parsed()) return cmd_scan(spec, triple_texts, scan_policy, csv_path, json_path);
        if (lattice->parsed()) {
            const k3::Lattice lat = k3::bl_lattice();
            nlohmann::json result, config;
            std::string sub;
            if (lat_pair->parsed()) {
                sub = "pair";
                config = {{"a", a_text}, {"b", b_text}};
                result["value"] =
                    k3::pair(lat, k3::parse_class(lat, a_text), k3::parse_class(lat, b_text));
            } else if (lat_self->parsed()) {
                sub = "self";
                config = {{"class", class_text}};
                result["value"] = k3::self_intersection(lat, k3::parse_class(lat, class_text));
            } else if (lat_picard->parsed()) {
                sub = "picard";
                config = {{"chains", chains_text}};
                k3::FiberConfig fc;
                std::stringstream ss(chains_text);
                std::string part;
                while (std::getline(ss, part, ',')) fc.chains.push_back(std::stol(part));
                result["value"] = k3::picard_number(fc);
            } else {
                sub = "configs";
                config = {{"total_nodes", nodes}, {"target_rank", rank}};
                nlohmann::json list = nlohmann::json::array();
                for (const auto& fc : k3::enumerate_max_picard_configs(nodes, rank))
                    list.push_back(fc.chains);
                result["configs"] = list;
                result["count"] = list.size();
            }
            emit(report_envelope("lattice " + sub, config, result), json_path);
            return kExitOk;
        }
        const elliptic::QuadratureConfig cfg = quad_from(radial, angular, levels, target, delta);
        if (ap_claim1->parsed()) return cmd_appendix_claim1(curve_text, cfg, json_path);
        if (ap_degen->parsed())
            return cmd_appendix_degenerate(pair_text, annulus_text, cfg, json_path, trace_csv);
        return cmd_appendix_substitution(annulus_text, cfg, json_path);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const twisted::DegenerateConfig& e) {
        std::cerr << "degenerate configuration: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
