#pragma once

#include <optional>
#include <random>
#include <string>

#include "ahm/maps.hpp"

namespace ahm {

struct CatalogFlags {
    bool integrable = true;
    bool kahler = true;
    bool closed_form_distance = true;
    std::string cut_points;  // empty means cut-locus free in the chart
};

struct CatalogEntry {
    std::string name;
    ManifoldChart chart;
    CatalogFlags flags;
    std::optional<double> known_hsc;
    std::optional<double> known_scalar;
    RVec center;
    // closed-form distance; null when only shooting is available
    std::function<double(const RVec&, const RVec&)> distance;
    // point at arc length r from the center along a unit coordinate ray
    std::function<RVec(const RVec&, double)> radial_point;
    double sample_half = 0.5;  // half-width of the FD-safe sampling cube

    DistanceToBase distance_to_center() const {
        if (!distance) throw Error(name + ": no closed-form distance");
        auto d = distance;
        RVec c = center;
        return [d, c](const RVec& x) { return d(c, x); };
    }
};

namespace detail {

inline RMat standard_J(int m) {
    RMat J = RMat::Zero(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        J(2 * i, 2 * i + 1) = -1.0;
        J(2 * i + 1, 2 * i) = 1.0;
    }
    return J;
}

inline Complex coord_z(const RVec& p, int j) {
    return Complex(p(2 * j), p(2 * j + 1));
}

inline double mobius_abs(Complex z, Complex w) {
    return std::abs((z - w) / (1.0 - std::conj(w) * z));
}

// --- seven-sphere cross product (quaternionic triples (i, i+1, i+3) mod 7)

inline const int (&cross_table())[7][7][2] {
    static int table[7][7][2];
    static bool init = false;
    if (!init) {
        for (auto& row : table)
            for (auto& e : row) {
                e[0] = 0;
                e[1] = 0;
            }
        for (int i = 0; i < 7; ++i) {
            const int a = i, b = (i + 1) % 7, c = (i + 3) % 7;
            table[a][b][0] = c, table[a][b][1] = 1;
            table[b][c][0] = a, table[b][c][1] = 1;
            table[c][a][0] = b, table[c][a][1] = 1;
            table[b][a][0] = c, table[b][a][1] = -1;
            table[c][b][0] = a, table[c][b][1] = -1;
            table[a][c][0] = b, table[a][c][1] = -1;
        }
        init = true;
    }
    return table;
}

inline Eigen::Matrix<double, 7, 1> cross7(
    const Eigen::Matrix<double, 7, 1>& u,
    const Eigen::Matrix<double, 7, 1>& v) {
    const auto& tab = cross_table();
    Eigen::Matrix<double, 7, 1> w = Eigen::Matrix<double, 7, 1>::Zero();
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            if (i == j || u(i) == 0.0 || v(j) == 0.0) continue;
            w(tab[i][j][0]) += tab[i][j][1] * u(i) * v(j);
        }
    return w;
}

// stereographic chart of the unit 6-sphere from the south pole
inline Eigen::Matrix<double, 7, 1> sphere_point(const RVec& y) {
    const double s = 1.0 + y.squaredNorm();
    Eigen::Matrix<double, 7, 1> p;
    for (int i = 0; i < 6; ++i) p(i) = 2.0 * y(i) / s;
    p(6) = (1.0 - y.squaredNorm()) / s;
    return p;
}

inline Eigen::Matrix<double, 7, 6> sphere_dp(const RVec& y) {
    const double s = 1.0 + y.squaredNorm();
    Eigen::Matrix<double, 7, 6> dp;
    for (int a = 0; a < 6; ++a) {
        for (int i = 0; i < 6; ++i)
            dp(i, a) = (2.0 / s) * ((i == a ? 1.0 : 0.0) -
                                    2.0 * y(i) * y(a) / s);
        dp(6, a) = -4.0 * y(a) / (s * s);
    }
    return dp;
}

inline RMat s6_acs(const RVec& y) {
    const auto p = sphere_point(y);
    const auto dp = sphere_dp(y);
    const double s = 1.0 + y.squaredNorm();
    const double c = 4.0 / (s * s);  // conformal factor of the metric
    RMat Jc(6, 6);
    for (int a = 0; a < 6; ++a) {
        const Eigen::Matrix<double, 7, 1> w =
            cross7(p, dp.col(a));
        Jc.col(a) = (dp.transpose() * w) / c;
    }
    return Jc;
}

// smooth bump, 1 at the origin, support |p| < R
inline double bump(const RVec& p, double R) {
    const double t = p.squaredNorm() / (R * R);
    if (t >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - t));
}

inline RMat r4_perturbed_acs(const RVec& p) {
    static const RMat J0 = standard_J(2);
    RMat K = RMat::Zero(4, 4);
    K(0, 2) = 1.0;
    K(2, 0) = -1.0;
    K(1, 3) = -1.0;
    K(3, 1) = 1.0;
    K(0, 3) = 0.5;
    K(3, 0) = 0.5;
    const double b = 0.25 * bump(p, 1.2);
    const RMat Jraw = J0 + b * K;
    // renormalize to an exact almost complex structure: J = Jraw S^{-1}
    // with S = (-Jraw^2)^{1/2} (Newton iterates commute with Jraw^2, and a
    // fixed iteration count keeps the field smooth as computed)
    const RMat M = -Jraw * Jraw;
    RMat S = RMat::Identity(4, 4);
    for (int it = 0; it < 12; ++it) S = 0.5 * (S + S.inverse() * M);
    return Jraw * S.inverse();
}

inline RMat r4_perturbed_metric(const RVec& p) {
    const RMat J = r4_perturbed_acs(p);
    return 0.5 * (RMat::Identity(4, 4) + J.transpose() * J);
}

}  // namespace detail

inline std::vector<CatalogEntry> catalog() {
    std::vector<CatalogEntry> entries;

    auto flat = [](int m) {
        CatalogEntry e;
        e.name = m == 1 ? "flat_c1" : "flat_c2";
        e.chart.m = m;
        e.chart.box.assign(2 * m, {-3.0, 3.0});
        e.chart.metric = [m](const RVec&) { return RMat::Identity(2 * m, 2 * m); };
        e.chart.acs = [m](const RVec&) { return detail::standard_J(m); };
        e.flags = {true, true, true, ""};
        e.known_hsc = 0.0;
        e.known_scalar = 0.0;
        e.center = RVec::Zero(2 * m);
        e.distance = [](const RVec& x, const RVec& y) { return (x - y).norm(); };
        e.radial_point = [m](const RVec& dir, double r) -> RVec {
            return r * dir / dir.norm();
        };
        e.sample_half = 2.0;
        return e;
    };
    entries.push_back(flat(1));
    entries.push_back(flat(2));

    // Poincare discs: conformal factor rho = scale / (1 - |z|^2), constant
    // holomorphic sectional curvature -4/scale^2.
    auto disc = [](const std::string& name, double scale, double hsc) {
        CatalogEntry e;
        e.name = name;
        e.chart.m = 1;
        e.chart.box.assign(2, {-0.99995, 0.99995});
        e.chart.domain = [](const RVec& p) { return p.squaredNorm() < 0.99995 * 0.99995; };
        e.chart.metric = [scale](const RVec& p) {
            const double rho = scale / (1.0 - p.squaredNorm());
            return RMat(rho * rho * RMat::Identity(2, 2));
        };
        e.chart.acs = [](const RVec&) { return detail::standard_J(1); };
        e.flags = {true, true, true, ""};
        e.known_hsc = hsc;
        e.known_scalar = hsc;
        e.center = RVec::Zero(2);
        e.distance = [scale](const RVec& x, const RVec& y) {
            const double t =
                detail::mobius_abs(detail::coord_z(x, 0), detail::coord_z(y, 0));
            return scale * std::atanh(t);
        };
        e.radial_point = [scale](const RVec& dir, double r) -> RVec {
            return std::tanh(r / scale) * dir / dir.norm();
        };
        e.sample_half = 0.6;
        return e;
    };
    entries.push_back(disc("poincare_disc_k1", 2.0, -1.0));
    entries.push_back(disc("poincare_disc_k4", 1.0, -4.0));

    // complex hyperbolic ball, Bergman metric with constant hsc -4
    {
        CatalogEntry e;
        e.name = "complex_hyperbolic_ball";
        e.chart.m = 2;
        e.chart.box.assign(4, {-0.99995, 0.99995});
        e.chart.domain = [](const RVec& p) {
            return p.squaredNorm() < 0.99995 * 0.99995;
        };
        e.chart.metric = [](const RVec& p) {
            const Complex z1 = detail::coord_z(p, 0), z2 = detail::coord_z(p, 1);
            const double n2 = std::norm(z1) + std::norm(z2);
            const double d = 1.0 - n2;
            CMat H(2, 2);
            const Complex z[2] = {z1, z2};
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    H(j, k) = ((j == k ? d : 0.0) + std::conj(z[j]) * z[k]) /
                              (d * d);
            // real metric g(du, dv) = Re sum H_jk dz_j(du) conj(dz_k(dv))
            RMat g(4, 4);
            const Complex dz[2][4] = {{1.0, I, 0.0, 0.0}, {0.0, 0.0, 1.0, I}};
            for (int u = 0; u < 4; ++u)
                for (int v = 0; v < 4; ++v) {
                    Complex s = 0.0;
                    for (int j = 0; j < 2; ++j)
                        for (int k = 0; k < 2; ++k)
                            s += H(j, k) * dz[j][u] * std::conj(dz[k][v]);
                    g(u, v) = s.real();
                }
            return g;
        };
        e.chart.acs = [](const RVec&) { return detail::standard_J(2); };
        e.flags = {true, true, true, ""};
        e.known_hsc = -4.0;
        e.known_scalar = -12.0;
        e.center = RVec::Zero(4);
        e.distance = [](const RVec& x, const RVec& y) {
            const Complex zx[2] = {detail::coord_z(x, 0), detail::coord_z(x, 1)};
            const Complex zy[2] = {detail::coord_z(y, 0), detail::coord_z(y, 1)};
            const double nx = std::norm(zx[0]) + std::norm(zx[1]);
            const double ny = std::norm(zy[0]) + std::norm(zy[1]);
            const Complex ip =
                zx[0] * std::conj(zy[0]) + zx[1] * std::conj(zy[1]);
            const double q =
                1.0 - (1.0 - nx) * (1.0 - ny) / std::norm(1.0 - ip);
            return std::atanh(std::sqrt(std::max(0.0, q)));
        };
        e.radial_point = [](const RVec& dir, double r) -> RVec {
            return std::tanh(r) * dir / dir.norm();
        };
        e.sample_half = 0.35;
        entries.push_back(e);
    }

    // product of two curvature -1 Poincare discs
    {
        CatalogEntry e;
        e.name = "disc_x_disc";
        e.chart.m = 2;
        e.chart.box.assign(4, {-0.99995, 0.99995});
        e.chart.domain = [](const RVec& p) {
            const double r1 = p.head(2).squaredNorm();
            const double r2 = p.tail(2).squaredNorm();
            const double lim = 0.99995 * 0.99995;
            return r1 < lim && r2 < lim;
        };
        e.chart.metric = [](const RVec& p) {
            RMat g = RMat::Zero(4, 4);
            const double rho1 = 2.0 / (1.0 - p.head(2).squaredNorm());
            const double rho2 = 2.0 / (1.0 - p.tail(2).squaredNorm());
            g.topLeftCorner(2, 2) = rho1 * rho1 * RMat::Identity(2, 2);
            g.bottomRightCorner(2, 2) = rho2 * rho2 * RMat::Identity(2, 2);
            return g;
        };
        e.chart.acs = [](const RVec&) { return detail::standard_J(2); };
        e.flags = {true, true, true, ""};
        e.known_scalar = -2.0;
        e.center = RVec::Zero(4);
        e.distance = [](const RVec& x, const RVec& y) {
            const double d1 = 2.0 * std::atanh(detail::mobius_abs(
                                  detail::coord_z(x, 0), detail::coord_z(y, 0)));
            const double d2 = 2.0 * std::atanh(detail::mobius_abs(
                                  detail::coord_z(x, 1), detail::coord_z(y, 1)));
            return std::sqrt(d1 * d1 + d2 * d2);
        };
        e.radial_point = [](const RVec& dir, double r) -> RVec {
            const RVec d = dir / dir.norm();
            const double c1 = d.head(2).norm(), c2 = d.tail(2).norm();
            RVec p = RVec::Zero(4);
            if (c1 > 0.0)
                p.head(2) = std::tanh(r * c1 / 2.0) * d.head(2) / c1;
            if (c2 > 0.0)
                p.tail(2) = std::tanh(r * c2 / 2.0) * d.tail(2) / c2;
            return p;
        };
        e.sample_half = 0.6;
        entries.push_back(e);
    }

    // round six-sphere with the cross-product almost complex structure
    {
        CatalogEntry e;
        e.name = "s6_nearly_kahler";
        e.chart.m = 3;
        e.chart.box.assign(6, {-1.5, 1.5});
        e.chart.metric = [](const RVec& y) {
            const double s = 1.0 + y.squaredNorm();
            return RMat((4.0 / (s * s)) * RMat::Identity(6, 6));
        };
        e.chart.acs = [](const RVec& y) { return detail::s6_acs(y); };
        e.flags = {false, false, true, "antipode of the center at arc length pi"};
        e.center = RVec::Zero(6);
        e.distance = [](const RVec& x, const RVec& y) {
            const double c = detail::sphere_point(x).dot(detail::sphere_point(y));
            return std::acos(std::clamp(c, -1.0, 1.0));
        };
        e.radial_point = [](const RVec& dir, double r) -> RVec {
            return std::tan(r / 2.0) * dir / dir.norm();
        };
        e.sample_half = 0.45;
        entries.push_back(e);
    }

    // flat R^4 with a compactly supported non-integrable deformation of J
    {
        CatalogEntry e;
        e.name = "r4_perturbed";
        e.chart.m = 2;
        e.chart.box.assign(4, {-2.0, 2.0});
        e.chart.metric = [](const RVec& p) { return detail::r4_perturbed_metric(p); };
        e.chart.acs = [](const RVec& p) { return detail::r4_perturbed_acs(p); };
        e.flags = {false, false, false, ""};
        e.center = RVec::Zero(4);
        e.sample_half = 1.0;
        entries.push_back(e);
    }

    return entries;
}

inline const CatalogEntry& find_entry(const std::vector<CatalogEntry>& cat,
                                      const std::string& name) {
    for (const auto& e : cat)
        if (e.name == name) return e;
    throw ConfigError("unknown catalog entry: " + name);
}

// --- builtin maps -----------------------------------------------------

namespace detail {

inline CoordinateMap complex_1d(std::function<Complex(Complex)> h) {
    return [h](const RVec& p) {
        const Complex w = h(coord_z(p, 0));
        RVec q(2);
        q << w.real(), w.imag();
        return q;
    };
}

}  // namespace detail

inline AlmostHolomorphicMap make_map(const std::string& spec_name,
                                     const CatalogEntry& src,
                                     const CatalogEntry& tgt) {
    AlmostHolomorphicMap map;
    map.source = src.chart;
    map.target = tgt.chart;
    map.declared_holomorphic = true;

    const auto param = spec_name.find(':');
    const std::string name = spec_name.substr(0, param);
    const std::string arg =
        param == std::string::npos ? "" : spec_name.substr(param + 1);

    if (name == "identity") {
        if (src.chart.dim() != tgt.chart.dim())
            throw ConfigError("identity map needs equal dimensions");
        map.f = [](const RVec& p) { return p; };
    } else if (name == "zero") {
        RVec c = tgt.center;
        map.f = [c](const RVec&) { return c; };
    } else if (name == "z_half") {
        map.f = detail::complex_1d([](Complex z) { return 0.5 * z; });
    } else if (name == "z_squared") {
        map.f = detail::complex_1d([](Complex z) { return z * z; });
    } else if (name == "mobius") {
        const double a = arg.empty() ? 0.3 : std::stod(arg);
        map.f = detail::complex_1d(
            [a](Complex z) { return (z - a) / (1.0 - a * z); });
    } else if (name == "conj") {
        map.f = detail::complex_1d([](Complex z) { return std::conj(z); });
        map.declared_holomorphic = false;
    } else {
        throw ConfigError("unknown map: " + spec_name);
    }
    if (name != "identity" && name != "zero" &&
        (src.chart.m != 1 || tgt.chart.m != 1))
        throw ConfigError(name + " requires one-dimensional charts");
    return map;
}

// Seeded sample points inside the FD-safe cube of an entry.
inline std::vector<RVec> sample_points(const CatalogEntry& e, int count,
                                       unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> un(-e.sample_half, e.sample_half);
    std::vector<RVec> pts;
    while (static_cast<int>(pts.size()) < count) {
        RVec p(e.chart.dim());
        for (int a = 0; a < e.chart.dim(); ++a) p(a) = un(rng);
        if (e.chart.contains(p, 1e-3)) pts.push_back(p);
    }
    return pts;
}

}  // namespace ahm
