#include <random>
#include <thread>

#include "reglab/twisted.hpp"

namespace reglab::twisted {

namespace {

// Portable bounded draw: multiply-shift on the raw 64-bit output, so scans
// reproduce byte-for-byte for a fixed sampler seed.
unsigned long bounded(std::mt19937_64& rng, unsigned long n) {
    const unsigned __int128 wide = static_cast<unsigned __int128>(rng()) * n;
    return static_cast<unsigned long>(wide >> 64);
}

}  // namespace

std::vector<std::array<Rational, 3>> sample_triples(long samples, unsigned long seed,
                                                    long max_den) {
    if (samples < 0) throw std::invalid_argument("negative sample count");
    if (max_den < 2) throw std::invalid_argument("max_den must be at least 2");
    std::mt19937_64 rng(seed);
    auto draw = [&] {
        const unsigned long den = 2 + bounded(rng, static_cast<unsigned long>(max_den - 1));
        const unsigned long num = 1 + bounded(rng, den - 1);
        return Rational(static_cast<long>(num), static_cast<long>(den));
    };
    std::vector<std::array<Rational, 3>> out;
    out.reserve(samples);
    while (static_cast<long>(out.size()) < samples) {
        std::array<Rational, 3> t{draw(), draw(), draw()};
        if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) continue;
        out.push_back(std::move(t));
    }
    return out;
}

ScanReport scan_parameters(const ScanSpec& spec, const PrecisionPolicy& policy) {
    policy.validate();
    std::vector<std::array<Rational, 3>> triples =
        !spec.triples.empty() ? spec.triples
                              : sample_triples(spec.samples, spec.sampler_seed, spec.max_den);
    if (triples.empty()) throw std::invalid_argument("empty parameter grid");

    ScanReport report;
    report.rows.resize(triples.size());

    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned threads =
        std::max(1u, std::min<unsigned>(spec.threads ? spec.threads : (hw ? hw : 1),
                                        static_cast<unsigned>(triples.size())));

    auto work = [&](unsigned tid) {
        for (size_t i = tid; i < triples.size(); i += threads) {
            TripleVerdict row;
            row.seeds = triples[i];
            const GlueData g(triples[i][0], triples[i][1], triples[i][2]);
            if (g.degeneracy()) {
                row.verdict = "degenerate";
            } else {
                const RegulatorMatrix m = regulator_matrix(g, policy);
                row.bits_used = m.bits_used;
                if (m.degenerate) {
                    row.verdict = "degenerate";
                } else {
                    row.verdict = m.verdict == Verdict::Invertible ? "invertible" : "undecided";
                    row.det_mid = m.det.mid_str();
                    row.det_rad = m.det.rad_str();
                }
            }
            report.rows[i] = std::move(row);
        }
    };

    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    for (const auto& row : report.rows) {
        if (row.verdict == "invertible") ++report.invertible;
        else if (row.verdict == "degenerate") ++report.degenerate;
        else if (row.verdict == "not-invertible") ++report.not_invertible;
        else ++report.undecided;
    }
    return report;
}

std::string ScanReport::to_csv() const {
    std::string out = "y0,y1,y2,det_mid,det_rad,verdict\n";
    for (const auto& row : rows) {
        out += row.seeds[0].str() + "," + row.seeds[1].str() + "," + row.seeds[2].str() + "," +
               row.det_mid + "," + row.det_rad + "," + row.verdict + "\n";
    }
    return out;
}

}  // namespace reglab::twisted
