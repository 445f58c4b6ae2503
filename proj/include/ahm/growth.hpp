#pragma once

#include <sstream>

#include "ahm/curvature.hpp"
#include "ahm/numeric/sphere_optimizer.hpp"

namespace ahm {

// Fitted growth constants for the curvature / torsion bounds
//   HBC >= -B (1+r)^alpha, ||tau(X,Y)|| <= A1 (1+r)^beta,
//   |R(Xbar,Y,Y,X)| <= A2 (1+r)^gamma,
// plus the holomorphic sectional curvature pinches k1 (lower, source role)
// and k2 (upper, target role). B, A1, A2 are clamped below at a small
// positive floor.
struct GrowthConstants {
    double B = 0.0, A1 = 0.0, A2 = 0.0;
    double alpha = 0.0, beta = 0.0, gamma_exp = 0.0;
    double k1 = 0.0, k2 = 0.0;
    std::string fit_region;
};

inline constexpr double kGrowthFloor = 1e-9;

namespace detail {

struct PointExtrema {
    double hbc_min = 0.0;
    double hsc_min = 0.0, hsc_max = 0.0;
    double tau_sup = 0.0;   // sup ||tau(X,Y)||
    double r20_sup = 0.0;   // sup |R(Xbar,Y,Y,X)|
    double grad_norm = 0.0; // projected gradient at the hbc minimizer
};

inline Complex hbc_form(const Tensor4c& r11, const CVec& X, const CVec& Y) {
    const int m = static_cast<int>(X.size());
    Complex s = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    s += r11(i, j, k, l) * X(i) * std::conj(X(j)) * Y(k) *
                         std::conj(Y(l));
    return s;
}

inline PointExtrema curvature_extrema(const CurvatureComponents& cc,
                                      const TorsionComponents& tor,
                                      const SphereOptimizerOptions& base) {
    const int m = static_cast<int>(cc.ricci1.rows());
    PointExtrema ex;

    auto hbc_obj = [&](const std::vector<CVec>& xy) {
        return hbc_form(cc.r11, xy[0], xy[1]).real();
    };
    auto hbc_grad = [&](const std::vector<CVec>& xy) {
        const CVec &X = xy[0], &Y = xy[1];
        CVec gx = CVec::Zero(m), gy = CVec::Zero(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l) {
                        const Complex r = cc.r11(i, j, k, l);
                        gx(j) += r * X(i) * Y(k) * std::conj(Y(l));
                        gy(l) += r * X(i) * std::conj(X(j)) * Y(k);
                    }
        return std::vector<CVec>{2.0 * gx, 2.0 * gy};
    };

    SphereOptimizerOptions opt = base;
    opt.maximize = false;
    auto rmin = optimize_on_spheres(hbc_obj, hbc_grad, {m, m}, opt);
    ex.hbc_min = rmin.value;
    ex.grad_norm = rmin.grad_norm;

    auto hsc_obj = [&](const std::vector<CVec>& x) {
        return hbc_form(cc.r11, x[0], x[0]).real();
    };
    auto hsc_grad = [&](const std::vector<CVec>& x) {
        const CVec& X = x[0];
        CVec g = CVec::Zero(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l) {
                        const Complex r = cc.r11(i, j, k, l);
                        g(j) += r * X(i) * X(k) * std::conj(X(l));
                        g(l) += r * X(i) * std::conj(X(j)) * X(k);
                    }
        return std::vector<CVec>{2.0 * g};
    };
    opt.maximize = false;
    ex.hsc_min = optimize_on_spheres(hsc_obj, hsc_grad, {m}, opt).value;
    opt.maximize = true;
    ex.hsc_max = optimize_on_spheres(hsc_obj, hsc_grad, {m}, opt).value;

    // sup of || tau(X,Y) ||^2 over unit (1,0) X, Y: both the (1,0) and
    // (0,1) components of the torsion value contribute.
    auto tau_parts = [&](const CVec& X, const CVec& Y) {
        CVec P = CVec::Zero(m), Q = CVec::Zero(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k) {
                    P(i) += tor.t20(i, j, k) * X(j) * Y(k);
                    Q(i) += std::conj(tor.t02(i, j, k)) * X(j) * Y(k);
                }
        return std::make_pair(P, Q);
    };
    auto tau_obj = [&](const std::vector<CVec>& xy) {
        auto [P, Q] = tau_parts(xy[0], xy[1]);
        return P.squaredNorm() + Q.squaredNorm();
    };
    auto tau_grad = [&](const std::vector<CVec>& xy) {
        const CVec &X = xy[0], &Y = xy[1];
        auto [P, Q] = tau_parts(X, Y);
        CVec gx = CVec::Zero(m), gy = CVec::Zero(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k) {
                    gx(j) += P(i) * std::conj(tor.t20(i, j, k) * Y(k)) +
                             Q(i) * std::conj(std::conj(tor.t02(i, j, k)) * Y(k));
                    gy(k) += P(i) * std::conj(tor.t20(i, j, k) * X(j)) +
                             Q(i) * std::conj(std::conj(tor.t02(i, j, k)) * X(j));
                }
        return std::vector<CVec>{2.0 * gx, 2.0 * gy};
    };
    opt.maximize = true;
    ex.tau_sup =
        std::sqrt(std::max(0.0, optimize_on_spheres(tau_obj, tau_grad, {m, m}, opt).value));

    // sup of |R(Xbar, Y, Y, X)|^2, the (2,0)-curvature bound (1.3)
    auto w_form = [&](const CVec& X, const CVec& Y) {
        Complex w = 0.0;
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l)
                        w += std::conj(X(j)) * Y(i) * Y(k) * X(l) *
                             std::conj(cc.r02(j, i, k, l));
        return w;
    };
    auto w_obj = [&](const std::vector<CVec>& xy) {
        return std::norm(w_form(xy[0], xy[1]));
    };
    auto w_grad = [&](const std::vector<CVec>& xy) {
        const CVec &X = xy[0], &Y = xy[1];
        const Complex w = w_form(X, Y);
        // dW/dX, dW/dXbar etc. assembled termwise
        CVec dwdx = CVec::Zero(m), dwdxb = CVec::Zero(m);
        CVec dwdy = CVec::Zero(m), dwdyb = CVec::Zero(m);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l) {
                        const Complex c = std::conj(cc.r02(j, i, k, l));
                        dwdx(l) += std::conj(X(j)) * Y(i) * Y(k) * c;
                        dwdxb(j) += Y(i) * Y(k) * X(l) * c;
                        dwdy(i) += std::conj(X(j)) * Y(k) * X(l) * c;
                        dwdy(k) += std::conj(X(j)) * Y(i) * X(l) * c;
                    }
        // |w|^2 gradient: 2 d|w|^2/dzbar = 2(conj(w) dw/dzbar + w conj(dw/dz))
        CVec gx(m), gy(m);
        for (int a = 0; a < m; ++a) {
            gx(a) = 2.0 * (std::conj(w) * dwdxb(a) + w * std::conj(dwdx(a)));
            gy(a) = 2.0 * (std::conj(w) * dwdyb(a) + w * std::conj(dwdy(a)));
        }
        return std::vector<CVec>{gx, gy};
    };
    opt.maximize = true;
    ex.r20_sup =
        std::sqrt(std::max(0.0, optimize_on_spheres(w_obj, w_grad, {m, m}, opt).value));
    return ex;
}

}  // namespace detail

struct GrowthExponents {
    double alpha = 0.0, beta = 0.0, gamma_exp = 0.0;
};

using DistanceToBase = std::function<double(const RVec&)>;

inline GrowthConstants extract_growth_constants(
    const ManifoldChart& chart, const RVec& base_point,
    const std::vector<RVec>& samples, const GrowthExponents& exps,
    const DistanceToBase& dist, const DifferentiationScheme& scheme = {},
    const SphereOptimizerOptions& opts = {}) {
    if (samples.empty()) throw EmptySampleSet();
    (void)base_point;

    GrowthConstants out;
    out.alpha = exps.alpha;
    out.beta = exps.beta;
    out.gamma_exp = exps.gamma_exp;
    out.B = out.A1 = out.A2 = kGrowthFloor;
    double hsc_min = std::numeric_limits<double>::infinity();
    double hsc_max = -std::numeric_limits<double>::infinity();

    for (const auto& p : samples) {
        const double r = dist(p);
        const auto gauge = make_gauge(chart, p);
        ConnectionStencil st(chart, p, gauge, scheme);
        const auto cc = curvature(chart, st);
        const auto ex =
            detail::curvature_extrema(cc, st.center().conn.torsion, opts);
        out.B = std::max(out.B, -ex.hbc_min / std::pow(1.0 + r, exps.alpha));
        out.A1 = std::max(out.A1, ex.tau_sup / std::pow(1.0 + r, exps.beta));
        out.A2 =
            std::max(out.A2, ex.r20_sup / std::pow(1.0 + r, exps.gamma_exp));
        hsc_min = std::min(hsc_min, ex.hsc_min);
        hsc_max = std::max(hsc_max, ex.hsc_max);
    }
    out.k1 = std::max(0.0, -hsc_min);
    out.k2 = std::max(kGrowthFloor, -hsc_max);

    std::ostringstream region;
    region << samples.size() << " samples, seed=" << opts.seed
           << ", exps=(" << exps.alpha << "," << exps.beta << ","
           << exps.gamma_exp << ")";
    out.fit_region = region.str();
    return out;
}

}  // namespace ahm
