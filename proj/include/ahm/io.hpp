#pragma once

#include <fstream>
#include <json.hpp>

#include "ahm/catalog.hpp"

namespace ahm {

using Json = nlohmann::ordered_json;

inline Json to_json(const RVec& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

// Chart definition file:
//   {"m": int, "box": [[lo,hi],...], "metric": <name-or-matrix>,
//    "acs": <name-or-matrix>}
// where a name refers to a catalog entry whose metric/acs field is reused,
// and a matrix (2m x 2m array) defines a constant field.
inline ManifoldChart load_chart(const Json& j,
                                const std::vector<CatalogEntry>& cat) {
    ManifoldChart chart;
    if (!j.contains("m") || !j.contains("box") || !j.contains("metric") ||
        !j.contains("acs"))
        throw ConfigError("chart file needs m, box, metric, acs");
    chart.m = j.at("m").get<int>();
    for (const auto& iv : j.at("box"))
        chart.box.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
    if (static_cast<int>(chart.box.size()) != 2 * chart.m)
        throw ConfigError("chart box must have 2m intervals");

    auto matrix_field = [&](const Json& spec, bool metric) {
        const int n = 2 * chart.m;
        if (spec.is_string()) {
            const auto& e = find_entry(cat, spec.get<std::string>());
            if (e.chart.dim() != n)
                throw ConfigError("catalog field dimension mismatch");
            return metric ? e.chart.metric : e.chart.acs;
        }
        RMat M(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) M(r, c) = spec.at(r).at(c).get<double>();
        return MetricField([M](const RVec&) { return M; });
    };
    chart.metric = matrix_field(j.at("metric"), true);
    chart.acs = matrix_field(j.at("acs"), false);

    // inherit the domain predicate when the metric came from the catalog
    if (j.at("metric").is_string()) {
        const auto& e = find_entry(cat, j.at("metric").get<std::string>());
        chart.domain = e.chart.domain;
    }
    return chart;
}

inline ManifoldChart load_chart_file(const std::string& path,
                                     const std::vector<CatalogEntry>& cat) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open chart file: " + path);
    Json j;
    in >> j;
    return load_chart(j, cat);
}

inline void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write: " + path);
    out << body;
}

}  // namespace ahm
