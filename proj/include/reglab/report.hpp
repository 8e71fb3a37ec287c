#pragma once

#include <string>

#include "json.hpp"
#include "reglab/cycles.hpp"
#include "reglab/elliptic.hpp"
#include "reglab/twisted.hpp"

namespace reglab {

inline constexpr int kSchemaVersion = 1;

// Parses "x^3 - x", "2x^2+1/2", "-x", ... into a rational polynomial.
Poly<Rational> parse_poly(const std::string& text, char var = 'x');

nlohmann::json to_json(const Interval& v);
nlohmann::json to_json(const twisted::RegulatorRow& row);
nlohmann::json to_json(const twisted::RegulatorMatrix& m, const std::array<Rational, 3>& seeds);
nlohmann::json to_json(const twisted::ScanReport& report);
nlohmann::json to_json(const elliptic::IntegralResult& r);

template <class K>
nlohmann::json to_json(const Precycle<K>& cycle,
                       const std::map<std::string, CurveComponent>& geometry = {}) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : cycle.terms) {
        nlohmann::json markers = nlohmann::json::object();
        for (const auto& comp : term.components) {
            const auto it = geometry.find(comp);
            if (it == geometry.end()) continue;
            for (const auto& [name, point] : it->second.markers) markers[name] = point.str();
        }
        terms.push_back({{"component", component_sum_str(term.components)},
                         {"function", {{"num", term.fn.num().str()}, {"den", term.fn.den().str()}}},
                         {"markers", markers}});
    }
    return {{"terms", terms}};
}

template <class K>
nlohmann::json to_json(const SurfaceDivisor<K>& d) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [anchor, mult] : d.support()) {
        entries.push_back({{"component", anchor.is_marker ? "@" + anchor.label : anchor.label},
                           {"point", anchor.place.str()},
                           {"multiplicity", mult}});
    }
    return entries;
}

// Every report embeds the configuration that produced it.
nlohmann::json report_envelope(const std::string& command, nlohmann::json config,
                               nlohmann::json result);

void write_file(const std::string& path, const std::string& content);

}  // namespace reglab
