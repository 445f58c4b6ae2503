#pragma once

#include <chrono>
#include <iostream>
#include <sstream>

#include "ahm/exhaustion.hpp"
#include "ahm/io.hpp"
#include "ahm/nijenhuis.hpp"

namespace ahm {

struct RunConfig {
    std::string command;  // report | schwarz | hessian-compare |
                          // exhaustion-certify | verify
    std::string manifold;
    std::string source, target, map_name = "identity";
    double k1 = -1.0, k2 = -1.0;
    bool auto_bounds = false;
    int samples = 20;
    int rays = 5;
    std::vector<double> radii = {0.25, 0.5, 1.0, 2.0};
    double scale = 1.0;  // Hessian-convention scale for hessian-compare
    unsigned long seed = 42;
    double step = 1e-4;
    std::string out_json, out_csv;
    bool timestamp = false;
};

inline RunConfig config_from_json(const Json& j) {
    RunConfig c;
    auto get = [&](const char* key, auto& slot) {
        if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    get("command", c.command);
    get("manifold", c.manifold);
    get("source", c.source);
    get("target", c.target);
    get("map", c.map_name);
    get("k1", c.k1);
    get("k2", c.k2);
    get("auto_bounds", c.auto_bounds);
    get("samples", c.samples);
    get("rays", c.rays);
    get("scale", c.scale);
    get("seed", c.seed);
    get("step", c.step);
    get("out_json", c.out_json);
    get("out_csv", c.out_csv);
    get("timestamp", c.timestamp);
    if (j.contains("radii")) {
        c.radii.clear();
        for (const auto& r : j.at("radii")) c.radii.push_back(r.get<double>());
    }
    return c;
}

namespace cli_detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline void stamp(Json& j, const RunConfig& cfg) {
    j["seed"] = cfg.seed;
    if (cfg.timestamp) {
        const auto now = std::chrono::system_clock::now();
        j["timestamp_unix"] =
            std::chrono::duration_cast<std::chrono::seconds>(
                now.time_since_epoch())
                .count();
    }
}

inline void emit(const Json& j, const RunConfig& cfg) {
    const std::string body = j.dump(2) + "\n";
    if (!cfg.out_json.empty())
        write_text_file(cfg.out_json, body);
    else
        std::cout << body;
}

inline GrowthConstants auto_constants(const CatalogEntry& e,
                                      const RunConfig& cfg, int n_samples) {
    const auto pts = sample_points(e, n_samples, cfg.seed);
    SphereOptimizerOptions opt;
    opt.seed = cfg.seed;
    DifferentiationScheme scheme;
    scheme.step = cfg.step;
    DistanceToBase dist;
    if (e.distance)
        dist = e.distance_to_center();
    else
        dist = [&e](const RVec& x) {
            return shooting_distance(e.chart, e.center, x);
        };
    return extract_growth_constants(e.chart, e.center, pts, {}, dist, scheme,
                                    opt);
}

inline int run_verify(const RunConfig& cfg) {
    const auto cat = catalog();
    const auto& e = find_entry(cat, cfg.manifold);
    DifferentiationScheme scheme;
    scheme.step = cfg.step;
    const auto pts = sample_points(e, cfg.samples, cfg.seed);

    double sym = 0.0, tc17 = 0.0, tc18 = 0.0, lc = 0.0, gap = 0.0;
    double t11 = 0.0, solve_res = 0.0;
    const ScalarField test_u = [](const RVec& p) {
        double s = 0.0;
        for (int a = 0; a < p.size(); ++a)
            s += std::sin(p(a) + 0.1 * a) + 0.05 * p(a) * p(a);
        return s;
    };
    for (const auto& p : pts) {
        const auto cc = curvature(e.chart, p, scheme);
        sym = std::max(sym, verify_curvature_symmetries(cc).max());
        const auto tc = verify_torsion_curvature_identities(e.chart, p, scheme);
        tc17 = std::max(tc17, tc.res_17);
        tc18 = std::max(tc18, tc.res_18);
        lc = std::max(lc, verify_lc_relation(e.chart, p, scheme));
        const auto lg = laplacian_gap(e.chart, test_u, p, scheme);
        gap = std::max(gap, std::abs(lg.gap - lg.torsion_prediction));
        const auto can = canonical_connection(e.chart, p, scheme);
        t11 = std::max(t11, can.torsion.t11_residual);
        solve_res = std::max(solve_res, can.table.solve_residual);
    }

    const bool pass = sym <= 1e-5 && tc17 <= 1e-4 && tc18 <= 1e-4 &&
                      lc <= 1e-5 && gap <= 1e-5 && t11 <= 1e-6;
    Json j;
    j["command"] = "verify";
    j["manifold"] = e.name;
    j["points"] = pts.size();
    stamp(j, cfg);
    j["residuals"]["curvature_symmetries"] = sym;
    j["residuals"]["torsion_curvature_17"] = tc17;
    j["residuals"]["torsion_curvature_18"] = tc18;
    j["residuals"]["lc_relation"] = lc;
    j["residuals"]["laplacian_gap"] = gap;
    j["residuals"]["torsion_11"] = t11;
    j["residuals"]["connection_solve"] = solve_res;
    j["pass"] = pass;
    emit(j, cfg);
    return pass ? 0 : 1;
}

inline int run_report(const RunConfig& cfg) {
    const auto cat = catalog();
    const auto& e = find_entry(cat, cfg.manifold);
    DifferentiationScheme scheme;
    scheme.step = cfg.step;
    const auto pts = sample_points(e, cfg.samples, cfg.seed);
    const auto val = validate_chart(e.chart, pts);

    double hsc_min = std::numeric_limits<double>::infinity();
    double hsc_max = -hsc_min;
    double tau_norm = 0.0, nij_norm = 0.0, scalar_min = 0.0, scalar_max = 0.0;
    bool first = true;
    SphereOptimizerOptions opt;
    opt.seed = cfg.seed;
    for (const auto& p : pts) {
        const auto gauge = make_gauge(e.chart, p);
        ConnectionStencil st(e.chart, p, gauge, scheme);
        const auto cc = curvature(e.chart, st);
        const auto ex =
            detail::curvature_extrema(cc, st.center().conn.torsion, opt);
        hsc_min = std::min(hsc_min, ex.hsc_min);
        hsc_max = std::max(hsc_max, ex.hsc_max);
        tau_norm = std::max(tau_norm,
                            std::max(st.center().conn.torsion.t20.max_abs(),
                                     st.center().conn.torsion.t02.max_abs()));
        nij_norm = std::max(nij_norm,
                            nijenhuis(e.chart, p, st.center().cf, scheme).norm());
        if (first) {
            scalar_min = scalar_max = cc.scalar;
            first = false;
        } else {
            scalar_min = std::min(scalar_min, cc.scalar);
            scalar_max = std::max(scalar_max, cc.scalar);
        }
    }

    Json j;
    j["command"] = "report";
    j["manifold"] = e.name;
    stamp(j, cfg);
    j["flags"]["integrable"] = e.flags.integrable;
    j["flags"]["kahler"] = e.flags.kahler;
    j["flags"]["closed_form_distance"] = e.flags.closed_form_distance;
    if (!e.flags.cut_points.empty()) j["flags"]["cut_points"] = e.flags.cut_points;
    j["validation"]["spd_min_eigenvalue"] = val.spd_min_eigenvalue;
    j["validation"]["acs_residual"] = val.acs_residual;
    j["validation"]["compat_residual"] = val.compat_residual;
    j["validation"]["pass"] = val.pass;
    j["curvature"]["hsc_min"] = hsc_min;
    j["curvature"]["hsc_max"] = hsc_max;
    j["curvature"]["scalar_min"] = scalar_min;
    j["curvature"]["scalar_max"] = scalar_max;
    j["torsion_max_component"] = tau_norm;
    j["nijenhuis_max_norm"] = nij_norm;
    if (e.known_hsc) j["known_hsc"] = *e.known_hsc;
    if (e.known_scalar) j["known_scalar"] = *e.known_scalar;
    emit(j, cfg);
    return val.pass ? 0 : 1;
}

inline int run_schwarz(const RunConfig& cfg) {
    const auto cat = catalog();
    const auto& src = find_entry(cat, cfg.source);
    const auto& tgt = find_entry(cat, cfg.target);
    const auto map = make_map(cfg.map_name, src, tgt);
    DifferentiationScheme scheme;
    scheme.step = cfg.step;

    double k1 = cfg.k1, k2 = cfg.k2;
    if (cfg.auto_bounds) {
        k1 = auto_constants(src, cfg, std::min(cfg.samples, 8)).k1;
        k2 = auto_constants(tgt, cfg, std::min(cfg.samples, 8)).k2;
    }
    if (k2 <= 0.0) throw ConfigError("schwarz needs k2 > 0 (or --auto-bounds)");
    if (k1 < 0.0) throw ConfigError("schwarz needs k1 >= 0 (or --auto-bounds)");

    // samples in the source whose image lies in the target chart
    std::vector<RVec> pts;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> un(-src.sample_half,
                                              src.sample_half);
    while (static_cast<int>(pts.size()) < cfg.samples) {
        RVec p(src.chart.dim());
        for (int a = 0; a < src.chart.dim(); ++a) p(a) = un(rng);
        if (!src.chart.contains(p, 1e-3)) continue;
        if (!tgt.chart.contains(map.f(p), 1e-3)) continue;
        pts.push_back(p);
    }

    const auto rep = schwarz_check(map, k1, k2, pts, scheme);

    Json j;
    j["command"] = "schwarz";
    j["source"] = src.name;
    j["target"] = tgt.name;
    j["map"] = cfg.map_name;
    stamp(j, cfg);
    j["k1"] = rep.k1;
    j["k2"] = rep.k2;
    j["bound"] = rep.bound;
    j["liouville_flag"] = rep.liouville_flag;
    Json rows = Json::array();
    for (const auto& s : rep.samples) {
        Json r;
        r["point"] = to_json(s.point);
        r["lambda_max"] = s.lambda_max;
        r["margin"] = s.margin;
        rows.push_back(r);
    }
    j["samples"] = rows;
    j["verdict"] = rep.verdict;
    emit(j, cfg);

    if (!cfg.out_csv.empty()) {
        std::ostringstream csv;
        csv.precision(17);
        csv << "point,lambda_max,margin\n";
        for (const auto& s : rep.samples) {
            csv << "\"";
            for (int a = 0; a < s.point.size(); ++a)
                csv << (a ? ";" : "") << s.point(a);
            csv << "\"," << s.lambda_max << "," << s.margin << "\n";
        }
        write_text_file(cfg.out_csv, csv.str());
    }
    return rep.verdict ? 0 : 1;
}

inline int run_hessian_compare(const RunConfig& cfg) {
    const auto cat = catalog();
    const auto& e = find_entry(cat, cfg.manifold);
    if (!e.distance)
        throw ConfigError("hessian-compare needs a closed-form distance");
    DifferentiationScheme scheme;
    scheme.step = cfg.step;

    ComparisonProfile profile;
    profile.m = e.chart.m;
    profile.constants = auto_constants(e, cfg, std::min(cfg.samples, 8));

    // seeded unit-g directions at the center
    std::vector<RVec> rays;
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const RMat g0 = e.chart.metric(e.center);
    for (int i = 0; i < cfg.rays; ++i) {
        RVec v(e.chart.dim());
        for (int a = 0; a < e.chart.dim(); ++a) v(a) = gauss(rng);
        v /= std::sqrt(v.dot(g0 * v));
        rays.push_back(v);
    }

    const auto rows =
        hessian_comparison_check(e.chart, profile, e.center, rays, cfg.radii,
                                 e.distance_to_center(), cfg.scale, 1e-3,
                                 1e-2, scheme);

    std::ostringstream csv;
    csv.precision(17);
    csv << "ray_id,r,x_min_eig,x_max_eig,y_value,gap,holds\n";
    bool all = true;
    for (const auto& r : rows) {
        csv << r.ray_id << "," << r.r << "," << r.x_min_eig << ","
            << r.x_max_eig << "," << r.y_value << "," << r.min_gap << ","
            << (r.holds ? 1 : 0) << "\n";
        all = all && r.holds;
    }
    if (!cfg.out_csv.empty())
        write_text_file(cfg.out_csv, csv.str());
    else
        std::cout << csv.str();
    std::cout << "# scale=" << fmt(cfg.scale) << " B=" << fmt(profile.constants.B)
              << " A1=" << fmt(profile.constants.A1)
              << " A2=" << fmt(profile.constants.A2) << " pass=" << all
              << "\n";
    return all ? 0 : 1;
}

inline int run_exhaustion_certify(const RunConfig& cfg) {
    const auto cat = catalog();
    const auto& e = find_entry(cat, cfg.manifold);
    if (!e.distance)
        throw ConfigError("exhaustion-certify needs a closed-form distance");
    DifferentiationScheme scheme;
    scheme.step = cfg.step;

    const auto constants = auto_constants(e, cfg, std::min(cfg.samples, 8));
    const auto dist = e.distance_to_center();
    const auto ex = build_tamed(e.center, constants, e.chart.m, dist);

    // radius-stratified samples
    std::vector<RVec> pts;
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> ur(0.05, 5.0);
    while (static_cast<int>(pts.size()) < cfg.samples) {
        RVec dir(e.chart.dim());
        for (int a = 0; a < e.chart.dim(); ++a) dir(a) = gauss(rng);
        const RVec p = e.radial_point(dir, ur(rng));
        if (e.chart.contains(p, 1e-9)) pts.push_back(p);
    }
    const auto cert = certify(ex, e.chart, pts, scheme);

    Json j;
    j["command"] = "exhaustion-certify";
    j["manifold"] = e.name;
    stamp(j, cfg);
    j["C"] = cert.C_const;
    j["C_prime"] = cert.C_prime;
    j["bound"] = cert.hessian_bound;
    Json rows = Json::array();
    for (const auto& s : cert.samples) {
        Json r;
        r["point"] = to_json(s.point);
        r["grad"] = s.grad_norm;
        r["hess"] = s.hess_max_eig;
        r["pass"] = s.pass;
        rows.push_back(r);
    }
    j["samples"] = rows;
    j["global_pass"] = cert.global_pass;
    emit(j, cfg);
    return cert.global_pass ? 0 : 1;
}

}  // namespace cli_detail

inline int run(const RunConfig& cfg) {
    try {
        if (cfg.command == "verify") return cli_detail::run_verify(cfg);
        if (cfg.command == "report") return cli_detail::run_report(cfg);
        if (cfg.command == "schwarz") return cli_detail::run_schwarz(cfg);
        if (cfg.command == "hessian-compare")
            return cli_detail::run_hessian_compare(cfg);
        if (cfg.command == "exhaustion-certify")
            return cli_detail::run_exhaustion_certify(cfg);
        throw ConfigError("unknown command: " + cfg.command);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace ahm
