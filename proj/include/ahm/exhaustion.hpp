#pragma once

#include <random>

#include "ahm/comparison.hpp"

namespace ahm {

// The exhaustion function u = log(1 + r^2) with the constants of its
// gradient/Hessian certificate:
//   C = [B + (4 sqrt(m) + 3) A1^2 + 2 A2]^{1/2},
//   C' = sup_r r(1+r)/(1+r^2) = (1+sqrt(2))/2,
//   hessian_bound = 3 + 2 C C'.
struct TamedExhaustion {
    RVec base;
    ScalarField u;
    double C_const = 0.0;
    double C_prime = 0.0;
    double hessian_bound = 0.0;
};

inline TamedExhaustion build_tamed(const RVec& x0,
                                   const GrowthConstants& constants, int m,
                                   const DistanceToBase& dist) {
    TamedExhaustion ex;
    ex.base = x0;
    ex.u = [dist](const RVec& p) {
        const double r = dist(p);
        return std::log(1.0 + r * r);
    };
    ex.C_const = std::sqrt(constants.B +
                           (4.0 * std::sqrt(double(m)) + 3.0) * constants.A1 *
                               constants.A1 +
                           2.0 * constants.A2);
    auto cprime_fn = [](double r) { return r * (1.0 + r) / (1.0 + r * r); };
    const double rstar = maximize_scalar(cprime_fn, 0.0, 100.0);
    ex.C_prime = cprime_fn(rstar);
    ex.hessian_bound = 3.0 + 2.0 * ex.C_const * ex.C_prime;
    return ex;
}

struct CertificateSample {
    RVec point;
    double grad_norm = 0.0;
    double hess_max_eig = 0.0;
    bool pass = false;
};

struct ExhaustionCertificate {
    double C_const = 0.0, C_prime = 0.0, hessian_bound = 0.0;
    std::vector<CertificateSample> samples;
    bool global_pass = false;
    double grad_tol = 1e-3, hess_tol = 1e-3;
};

namespace detail {

// Metric-adaptive step: near chart regions where the metric blows up
// (disc boundary) the coordinate scale of u shrinks with 1/sqrt(g), so
// the stencil must shrink with it.
inline DifferentiationScheme local_scheme(const ManifoldChart& chart,
                                          const RVec& p,
                                          const DifferentiationScheme& base) {
    const RMat g = chart.metric(p);
    const double gmax = g.diagonal().maxCoeff();
    DifferentiationScheme s = base;
    if (gmax > 1.0) s.step = base.step / std::sqrt(gmax);
    return s;
}

}  // namespace detail

inline ExhaustionCertificate certify(const TamedExhaustion& ex,
                                     const ManifoldChart& chart,
                                     const std::vector<RVec>& samples,
                                     const DifferentiationScheme& scheme = {},
                                     double grad_tol = 1e-3,
                                     double hess_tol = 1e-3) {
    ExhaustionCertificate cert;
    cert.C_const = ex.C_const;
    cert.C_prime = ex.C_prime;
    cert.hessian_bound = ex.hessian_bound;
    cert.grad_tol = grad_tol;
    cert.hess_tol = hess_tol;
    cert.global_pass = true;
    for (const auto& p : samples) {
        const auto s = detail::local_scheme(chart, p, scheme);
        CertificateSample row;
        row.point = p;
        row.grad_norm = gradient_norm(chart, ex.u, p, s);
        const auto H =
            hessian_scalar(chart, ex.u, p, ConnectionKind::Canonical, s);
        row.hess_max_eig = hermitian_eigen(H.cplx, 1e-4).values(0);
        row.pass = row.grad_norm <= 1.0 + grad_tol &&
                   row.hess_max_eig <= ex.hessian_bound + hess_tol;
        cert.global_pass = cert.global_pass && row.pass;
        cert.samples.push_back(std::move(row));
    }
    return cert;
}

struct OmoriYauWitness {
    std::vector<double> epsilons;
    std::vector<RVec> points;
    std::vector<double> f_values;
    std::vector<double> grad_norms;
    std::vector<double> hess_top_eigs;
};

struct WitnessSearchOptions {
    int starts = 16;
    int iterations = 200;
    double step = 0.1;
    unsigned long seed = 42;
    int coarse_grid = 6;  // per-axis boundedness probe
};

// Maximizes f - eps*u over the sublevel region { u < 1/eps } for each eps
// by seeded multi-start coordinate ascent, and records the three
// Omori-Yau quantities at each maximizer.
inline OmoriYauWitness omori_yau_search(const ManifoldChart& chart,
                                        const TamedExhaustion& ex,
                                        const ScalarField& f,
                                        const std::vector<double>& epsilons,
                                        const WitnessSearchOptions& opts = {},
                                        const DifferentiationScheme& scheme = {}) {
    const int n = chart.dim();
    std::mt19937_64 rng(opts.seed);

    // boundedness probe on a coarse grid
    {
        RVec q(n);
        std::vector<int> ticks(n, 0);
        const int G = opts.coarse_grid;
        bool done = false;
        while (!done) {
            for (int a = 0; a < n; ++a) {
                const double t = (ticks[a] + 0.5) / G;
                q(a) = chart.box[a][0] +
                       t * (chart.box[a][1] - chart.box[a][0]);
            }
            if (chart.contains(q)) {
                const double v = f(q);
                if (!std::isfinite(v) || v > 1e12) throw UnboundedObjective();
            }
            int a = 0;
            while (a < n && ++ticks[a] == G) ticks[a++] = 0;
            done = a == n;
        }
    }

    auto feasible = [&](const RVec& p, double eps) {
        return chart.contains(p, 1e-9) && ex.u(p) < 1.0 / eps;
    };
    auto uniform_point = [&]() {
        std::uniform_real_distribution<double> un(0.0, 1.0);
        for (int tries = 0; tries < 1000; ++tries) {
            RVec q(n);
            for (int a = 0; a < n; ++a)
                q(a) = chart.box[a][0] +
                       un(rng) * (chart.box[a][1] - chart.box[a][0]);
            if (chart.contains(q)) return q;
        }
        throw Error("omori_yau_search: could not sample the domain");
    };

    OmoriYauWitness wit;
    RVec prev_best;
    for (double eps : epsilons) {
        auto phi = [&](const RVec& p) { return f(p) - eps * ex.u(p); };

        RVec best;
        double best_val = -std::numeric_limits<double>::infinity();
        for (int s0 = 0; s0 < opts.starts; ++s0) {
            RVec x;
            if (s0 == 0 && prev_best.size() == n && feasible(prev_best, eps))
                x = prev_best;
            else
                x = uniform_point();
            if (!feasible(x, eps)) continue;
            double fx = phi(x);

            for (int it = 0; it < opts.iterations; ++it) {
                const auto ls = detail::local_scheme(chart, x, scheme);
                RVec grad(n);
                bool ok = true;
                try {
                    for (int a = 0; a < n; ++a)
                        grad(a) = differentiate_field(phi, x, a, ls,
                                                      chart.domain_check());
                } catch (const StencilOutOfDomain&) {
                    ok = false;
                }
                if (!ok || grad.norm() < 1e-12) break;
                double step = opts.step / std::max(1.0, grad.norm());
                bool moved = false;
                for (int bt = 0; bt < 40; ++bt) {
                    const RVec y = x + step * grad;
                    if (feasible(y, eps) && phi(y) > fx) {
                        x = y;
                        fx = phi(x);
                        moved = true;
                        break;
                    }
                    step *= 0.5;
                }
                if (!moved) break;
            }
            if (fx > best_val) {
                best_val = fx;
                best = x;
            }
        }
        if (best.size() != n)
            throw Error("omori_yau_search: no feasible start found");
        prev_best = best;

        const auto ls = detail::local_scheme(chart, best, scheme);
        wit.epsilons.push_back(eps);
        wit.points.push_back(best);
        wit.f_values.push_back(f(best));
        wit.grad_norms.push_back(gradient_norm(chart, f, best, ls));
        const auto H =
            hessian_scalar(chart, f, best, ConnectionKind::Canonical, ls);
        wit.hess_top_eigs.push_back(hermitian_eigen(H.cplx, 1e-4).values(0));
    }
    return wit;
}

}  // namespace ahm
