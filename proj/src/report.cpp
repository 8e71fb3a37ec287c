#include "reglab/report.hpp"

#include <cctype>
#include <fstream>

namespace reglab {

namespace {

struct PolyParser {
    const std::string& text;
    char var;
    size_t i = 0;

    void skip_ws() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    }

    bool peek_digit() {
        return i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]));
    }

    mpz_class read_int() {
        std::string digits;
        while (peek_digit()) digits += text[i++];
        if (digits.empty()) throw std::invalid_argument("expected a number in: " + text);
        return mpz_class(digits);
    }

    // [coef]["/den"][var["^"exp]]
    std::pair<Rational, long> read_term() {
        skip_ws();
        Rational coef(1);
        bool have_coef = false;
        if (peek_digit()) {
            const mpz_class num = read_int();
            mpz_class den(1);
            skip_ws();
            if (i < text.size() && text[i] == '/') {
                ++i;
                skip_ws();
                den = read_int();
            }
            coef = Rational(num, den);
            have_coef = true;
        }
        skip_ws();
        long exp = 0;
        if (i < text.size() && text[i] == var) {
            ++i;
            exp = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                exp = read_int().get_si();
                if (exp < 0) throw std::invalid_argument("negative exponent in: " + text);
            }
        } else if (!have_coef) {
            throw std::invalid_argument("malformed polynomial: " + text);
        }
        return {coef, exp};
    }
};

}  // namespace

Poly<Rational> parse_poly(const std::string& text, char var) {
    PolyParser p{text, var};
    std::vector<Rational> coeffs;
    int sign = 1;
    p.skip_ws();
    if (p.i < text.size() && (text[p.i] == '+' || text[p.i] == '-')) {
        sign = text[p.i] == '-' ? -1 : 1;
        ++p.i;
    }
    while (true) {
        auto [coef, exp] = p.read_term();
        if (static_cast<long>(coeffs.size()) <= exp) coeffs.resize(exp + 1, Rational(0));
        coeffs[exp] += sign < 0 ? -coef : coef;
        p.skip_ws();
        if (p.i >= text.size()) break;
        if (text[p.i] == '+') sign = 1;
        else if (text[p.i] == '-') sign = -1;
        else throw std::invalid_argument("malformed polynomial: " + text);
        ++p.i;
    }
    return Poly<Rational>(std::move(coeffs));
}

nlohmann::json to_json(const Interval& v) {
    return {{"mid", v.mid_str()}, {"rad", v.rad_str()}};
}

nlohmann::json to_json(const twisted::RegulatorRow& row) {
    nlohmann::json j;
    j["basis"] = twisted::kBasisLabels;
    if (row.degenerate) {
        j["degenerate"] = true;
        j["reason"] = row.degenerate_reason;
        return j;
    }
    j["degenerate"] = false;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : row.entries) entries.push_back(to_json(e));
    j["entries"] = entries;
    if (row.g_map) j["g"] = row.g_map->str();
    if (row.swapped) j["swapped_roots"] = true;
    return j;
}

nlohmann::json to_json(const twisted::RegulatorMatrix& m, const std::array<Rational, 3>& seeds) {
    nlohmann::json j;
    j["seeds"] = {seeds[0].str(), seeds[1].str(), seeds[2].str()};
    j["verdict"] = twisted::verdict_str(m.verdict);
    j["degenerate"] = m.degenerate;
    if (m.degenerate) j["reason"] = m.degenerate_reason;
    j["bits_used"] = m.bits_used;
    j["det"] = to_json(m.det);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : m.rows) rows.push_back(to_json(r));
    j["rows"] = rows;
    return j;
}

nlohmann::json to_json(const twisted::ScanReport& report) {
    nlohmann::json j;
    j["total"] = report.total();
    j["invertible"] = report.invertible;
    j["not_invertible"] = report.not_invertible;
    j["undecided"] = report.undecided;
    j["degenerate"] = report.degenerate;
    j["fraction_invertible"] = report.fraction_invertible();
    return j;
}

nlohmann::json to_json(const elliptic::IntegralResult& r) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& [level, value] : r.trace) trace.push_back({{"level", level}, {"value", value}});
    return {{"value", r.value},
            {"error_estimate", r.error_estimate},
            {"non_convergent", r.non_convergent},
            {"excluded_area", r.excluded_area},
            {"trace", trace}};
}

nlohmann::json report_envelope(const std::string& command, nlohmann::json config,
                               nlohmann::json result) {
    return {{"schema_version", kSchemaVersion},
            {"command", command},
            {"config", std::move(config)},
            {"result", std::move(result)}};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace reglab
