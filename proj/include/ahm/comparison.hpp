#pragma once

#include "ahm/geodesic.hpp"
#include "ahm/growth.hpp"
#include "ahm/scalar_hessian.hpp"

namespace ahm {

// Comparison data of the Hessian bound: h(r) and the diagonal bound
// matrix Y(r) = (1/r + sqrt(h(r))) I.
struct ComparisonProfile {
    GrowthConstants constants;
    int m = 1;

    double h(double r) const {
        const auto& c = constants;
        return c.B * std::pow(1.0 + r, c.alpha) +
               (4.0 * std::sqrt(double(m)) + 3.0) * c.A1 * c.A1 *
                   std::pow(1.0 + r, 2.0 * c.beta) +
               2.0 * c.A2 * std::pow(1.0 + r, c.gamma_exp);
    }
};

inline CMat comparison_bound(const ComparisonProfile& profile, double r) {
    if (r <= 0.0) throw NonpositiveRadius();
    return (1.0 / r + std::sqrt(profile.h(r))) *
           CMat::Identity(profile.m, profile.m);
}

// Matrix Riccati flow dX/dr = -X^2 - A X - X A^* + S with Hermitian X,
// integrated by RK4 and symmetrized each step. Blow-up (conjugate point
// signal) is flagged, not thrown.
struct RiccatiFlow {
    std::vector<double> grid;
    std::vector<CMat> X;
    bool blew_up = false;
    double r_stop = 0.0;
};

using MatrixCoefficient = std::function<CMat(double)>;

inline RiccatiFlow riccati_integrate(const MatrixCoefficient& A,
                                     const MatrixCoefficient& S, double r0,
                                     const CMat& X0, double r_end,
                                     double step) {
    if (r0 <= 0.0) throw NonpositiveRadius();
    auto rhs = [&](double r, const CMat& X) -> CMat {
        const CMat a = A ? A(r) : CMat::Zero(X.rows(), X.cols());
        const CMat s = S ? S(r) : CMat::Zero(X.rows(), X.cols());
        return -X * X - a * X - X * a.adjoint() + s;
    };

    RiccatiFlow flow;
    flow.grid.push_back(r0);
    flow.X.push_back(0.5 * (X0 + X0.adjoint()));
    double r = r0;
    CMat X = flow.X.back();
    while (r < r_end - 1e-12) {
        const double h = std::min(step, r_end - r);
        const CMat k1 = rhs(r, X);
        const CMat k2 = rhs(r + 0.5 * h, X + 0.5 * h * k1);
        const CMat k3 = rhs(r + 0.5 * h, X + 0.5 * h * k2);
        const CMat k4 = rhs(r + h, X + h * k3);
        X = X + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        X = 0.5 * (X + X.adjoint()).eval();
        r += h;
        if (!X.allFinite() || X.cwiseAbs().maxCoeff() > 1e8) {
            flow.blew_up = true;
            flow.r_stop = r;
            break;
        }
        flow.grid.push_back(r);
        flow.X.push_back(X);
    }
    if (!flow.blew_up) flow.r_stop = r;
    return flow;
}

// Canonical complex Hessian of the distance function r(.) = dist(x0, .).
inline CMat distance_hessian(const ManifoldChart& chart,
                             const DistanceToBase& dist, const RVec& x,
                             const DifferentiationScheme& scheme = {},
                             const std::function<bool(const RVec&)>& near_cut = {}) {
    if (dist(x) < 1e-8) throw AtBasePoint();
    if (near_cut && near_cut(x)) throw NearCutLocus();
    return hessian_scalar(chart, dist, x, ConnectionKind::Canonical, scheme)
        .cplx;
}

struct ComparisonRow {
    int ray_id = 0;
    double r = 0.0;
    double x_min_eig = 0.0;
    double x_max_eig = 0.0;
    double y_value = 0.0;
    double min_gap = 0.0;
    bool holds = false;
};

// Checks scale * X(r) <= Y(r) in the PSD order along geodesic rays from
// x0. `scale` converts the library's unitary-frame Hessian convention to
// the normalization of the bound being tested and is recorded per row by
// the CLI.
inline std::vector<ComparisonRow> hessian_comparison_check(
    const ManifoldChart& chart, const ComparisonProfile& profile,
    const RVec& x0, const std::vector<RVec>& rays,
    const std::vector<double>& radii, const DistanceToBase& dist,
    double scale = 1.0, double tol = 1e-3, double geo_step = 1e-2,
    const DifferentiationScheme& scheme = {}) {
    std::vector<ComparisonRow> rows;
    const double r_max = *std::max_element(radii.begin(), radii.end());
    for (size_t ri = 0; ri < rays.size(); ++ri) {
        const auto ray = geodesic(chart, x0, rays[ri], r_max, geo_step, scheme);
        for (double r : radii) {
            // nearest trajectory sample at arc length r
            const auto it = std::min_element(
                ray.trajectory.begin(), ray.trajectory.end(),
                [r](const GeodesicSample& a, const GeodesicSample& b) {
                    return std::abs(a.t - r) < std::abs(b.t - r);
                });
            if (std::abs(it->t - r) > 1e-6)
                throw Error("hessian_comparison_check: ray truncated before r");
            const CMat X = distance_hessian(chart, dist, it->point, scheme);
            const CMat Y = comparison_bound(profile, r);
            const auto psd = psd_order(scale * X, Y, tol);
            const auto ex = hermitian_eigen(X, 1e-6);
            ComparisonRow row;
            row.ray_id = static_cast<int>(ri);
            row.r = r;
            row.x_min_eig = ex.values(ex.values.size() - 1);
            row.x_max_eig = ex.values(0);
            row.y_value = Y(0, 0).real();
            row.min_gap = psd.min_gap;
            row.holds = psd.holds;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace ahm
