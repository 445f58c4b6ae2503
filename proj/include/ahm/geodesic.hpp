#pragma once

#include <random>

#include "ahm/connection.hpp"
#include "ahm/numeric/ode.hpp"

namespace ahm {

struct GeodesicSample {
    double t = 0.0;
    RVec point;
    RVec velocity;
};

struct GeodesicRay {
    RVec base;
    RVec direction;  // initial velocity, unit g-norm
    std::vector<GeodesicSample> trajectory;
    bool truncated = false;  // left the chart before the requested length
};

namespace detail {

inline RVec geodesic_rhs(const ManifoldChart& chart, const RVec& state,
                         const DifferentiationScheme& scheme) {
    const int n = chart.dim();
    const RVec x = state.head(n);
    const RVec v = state.tail(n);
    const auto lc = levi_civita_connection(chart, x, scheme);
    RVec acc = RVec::Zero(n);
    for (int a = 0; a < n; ++a) acc -= v(a) * (lc.gamma[a] * v);
    RVec out(2 * n);
    out << v, acc;
    return out;
}

}  // namespace detail

// Levi-Civita geodesic from x0 with unit initial velocity v, integrated by
// RK4 to the requested arc length. Stops early (flagged) if the path
// leaves the chart.
inline GeodesicRay geodesic(const ManifoldChart& chart, const RVec& x0,
                            const RVec& v, double length, double step,
                            const DifferentiationScheme& scheme = {}) {
    const int n = chart.dim();
    const RMat g0 = chart.metric(x0);
    const double speed = std::sqrt(v.dot(g0 * v));
    if (std::abs(speed - 1.0) > 1e-8)
        throw Error("geodesic: initial velocity must have unit g-norm");

    GeodesicRay ray;
    ray.base = x0;
    ray.direction = v;
    RVec state(2 * n);
    state << x0, v;
    ray.trajectory.push_back({0.0, x0, v});

    double t = 0.0;
    const double margin = scheme.margin();
    while (t < length - 1e-12) {
        const double h = std::min(step, length - t);
        RVec next = rk4_step(
            [&](double, const RVec& s) {
                return detail::geodesic_rhs(chart, s, scheme);
            },
            t, state, h);
        if (!next.allFinite()) throw NonFiniteState();
        if (!chart.contains(next.head(n), margin)) {
            ray.truncated = true;
            break;
        }
        state = next;
        t += h;
        ray.trajectory.push_back({t, state.head(n), state.tail(n)});
    }
    return ray;
}

struct ShootingOptions {
    int max_iterations = 100;
    int integration_steps = 200;
    int extra_starts = 4;
    double tolerance = 1e-10;
    unsigned long seed = 7;
    DifferentiationScheme scheme{};
};

namespace detail {

// Endpoint of the exponential map with initial velocity w (time 1).
inline RVec exp_endpoint(const ManifoldChart& chart, const RVec& x0,
                         const RVec& w, const ShootingOptions& opt) {
    const int n = chart.dim();
    RVec state(2 * n);
    state << x0, w;
    const double h = 1.0 / opt.integration_steps;
    double t = 0.0;
    for (int s = 0; s < opt.integration_steps; ++s) {
        state = rk4_step(
            [&](double, const RVec& st) {
                return geodesic_rhs(chart, st, opt.scheme);
            },
            t, state, h);
        if (!state.allFinite()) throw NonFiniteState();
        t += h;
    }
    return state.head(n);
}

}  // namespace detail

// Riemannian distance by geodesic shooting: damped Newton on the endpoint
// map from several initial directions. Intended for charts without a
// closed-form distance; catalog entries override with closed forms.
inline double shooting_distance(const ManifoldChart& chart, const RVec& x0,
                                const RVec& x, const ShootingOptions& opt = {}) {
    const int n = chart.dim();
    if ((x - x0).norm() < 1e-14) return 0.0;
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const RMat g0 = chart.metric(x0);
    auto g_norm = [&](const RVec& w) { return std::sqrt(w.dot(g0 * w)); };

    for (int attempt = 0; attempt <= opt.extra_starts; ++attempt) {
        RVec w = x - x0;
        if (attempt > 0) {
            RVec noise(n);
            for (int i = 0; i < n; ++i) noise(i) = gauss(rng);
            w += 0.3 * attempt * (x - x0).norm() * noise / noise.norm();
        }
        try {
            double res = (detail::exp_endpoint(chart, x0, w, opt) - x).norm();
            for (int it = 0; it < opt.max_iterations; ++it) {
                if (res < opt.tolerance) return g_norm(w);
                // finite-difference Jacobian of the endpoint map
                RMat Jac(n, n);
                const double fd = 1e-6 * std::max(1.0, w.norm());
                const RVec f0 = detail::exp_endpoint(chart, x0, w, opt) - x;
                for (int c = 0; c < n; ++c) {
                    RVec wp = w;
                    wp(c) += fd;
                    Jac.col(c) =
                        (detail::exp_endpoint(chart, x0, wp, opt) - x - f0) / fd;
                }
                const RVec dw = Jac.colPivHouseholderQr().solve(-f0);
                double damp = 1.0;
                bool ok = false;
                for (int bt = 0; bt < 12; ++bt) {
                    const RVec wn = w + damp * dw;
                    const double rn =
                        (detail::exp_endpoint(chart, x0, wn, opt) - x).norm();
                    if (rn < res) {
                        w = wn;
                        res = rn;
                        ok = true;
                        break;
                    }
                    damp *= 0.5;
                }
                if (!ok) break;
            }
            if (res < opt.tolerance) return g_norm(w);
        } catch (const NonFiniteState&) {
            // try the next start
        } catch (const StencilOutOfDomain&) {
        }
    }
    throw ShootingFailed();
}

}  // namespace ahm
