#pragma once

#include <functional>
#include <random>
#include <vector>

#include "ahm/types.hpp"

namespace ahm {

// Multi-start projected gradient ascent over a product of complex unit
// spheres. The gradient callback returns the Euclidean gradient of the
// (real) objective with respect to each block, identified with 2*dF/dXbar
// under the usual R^{2m} = C^m identification.
struct SphereOptimizerOptions {
    int starts = 16;
    int iterations = 200;
    double step = 0.1;
    unsigned long seed = 42;
    bool maximize = true;
};

struct SphereOptResult {
    std::vector<CVec> arg;
    double value = 0.0;
    double grad_norm = 0.0;  // projected gradient norm at the optimum
};

using SphereObjective = std::function<double(const std::vector<CVec>&)>;
using SphereGradient =
    std::function<std::vector<CVec>(const std::vector<CVec>&)>;

namespace detail {

inline CVec random_unit(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CVec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(g(rng), g(rng));
    return v / v.norm();
}

inline std::vector<CVec> project_tangent(const std::vector<CVec>& x,
                                         const std::vector<CVec>& grad) {
    std::vector<CVec> out(x.size());
    for (size_t b = 0; b < x.size(); ++b) {
        // real inner product on C^m as R^{2m}
        const double inner = grad[b].dot(x[b]).real();
        out[b] = grad[b] - inner * x[b];
    }
    return out;
}

inline double total_norm(const std::vector<CVec>& v) {
    double s = 0.0;
    for (const auto& b : v) s += b.squaredNorm();
    return std::sqrt(s);
}

}  // namespace detail

inline SphereOptResult optimize_on_spheres(const SphereObjective& f,
                                           const SphereGradient& grad,
                                           const std::vector<int>& dims,
                                           const SphereOptimizerOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    const double sign = opt.maximize ? 1.0 : -1.0;

    SphereOptResult best;
    bool have_best = false;

    for (int s = 0; s < opt.starts; ++s) {
        std::vector<CVec> x;
        x.reserve(dims.size());
        for (int d : dims) x.push_back(detail::random_unit(d, rng));
        double fx = f(x);

        for (int it = 0; it < opt.iterations; ++it) {
            auto g = detail::project_tangent(x, grad(x));
            const double gnorm = detail::total_norm(g);
            if (gnorm < 1e-12) break;

            // backtracking line search along the projected direction
            double step = opt.step;
            bool moved = false;
            for (int bt = 0; bt < 30; ++bt) {
                std::vector<CVec> y(x.size());
                for (size_t b = 0; b < x.size(); ++b) {
                    y[b] = x[b] + sign * step * g[b];
                    y[b] /= y[b].norm();
                }
                const double fy = f(y);
                if (sign * (fy - fx) > 0.0) {
                    x = std::move(y);
                    fx = fy;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }

        if (!have_best || sign * (fx - best.value) > 0.0) {
            best.arg = x;
            best.value = fx;
            best.grad_norm = detail::total_norm(detail::project_tangent(x, grad(x)));
            have_best = true;
        }
    }
    return best;
}

// Golden-section maximization of a scalar function on [lo, hi].
inline double maximize_scalar(const std::function<double(double)>& f,
                              double lo, double hi, double tol = 1e-12) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace ahm
