#pragma once

#include <array>
#include <functional>
#include <vector>

#include "ahm/errors.hpp"
#include "ahm/numeric/differentiation.hpp"
#include "ahm/numeric/linalg.hpp"
#include "ahm/types.hpp"

namespace ahm {

using MetricField = std::function<RMat(const RVec&)>;
using AcsField = std::function<RMat(const RVec&)>;

// A single coordinate chart of an almost Hermitian manifold: a box (plus
// an optional membership predicate for non-box domains like discs), a
// Riemannian metric field g and an almost complex structure field J with
// J^2 = -I and J^t g J = g.
struct ManifoldChart {
    int m = 0;  // complex dimension; real dimension is 2m
    std::vector<std::array<double, 2>> box;
    MetricField metric;
    AcsField acs;
    std::function<bool(const RVec&)> domain;  // optional, inside the box

    int dim() const { return 2 * m; }

    bool in_box(const RVec& p, double margin = 0.0) const {
        for (int a = 0; a < dim(); ++a)
            if (p(a) < box[a][0] + margin || p(a) > box[a][1] - margin)
                return false;
        return true;
    }

    bool contains(const RVec& p, double margin = 0.0) const {
        if (!in_box(p, margin)) return false;
        if (!domain) return true;
        if (margin == 0.0) return domain(p);
        // conservative: probe the corners of the margin cube
        RVec q = p;
        for (int a = 0; a < dim(); ++a) {
            q(a) = p(a) + margin;
            if (!domain(q)) return false;
            q(a) = p(a) - margin;
            if (!domain(q)) return false;
            q(a) = p(a);
        }
        return domain(p);
    }

    DomainCheck domain_check() const {
        return [this](const RVec& p) { return contains(p); };
    }
};

struct ChartValidation {
    double spd_min_eigenvalue = 0.0;  // min over samples of min eig of g
    double acs_residual = 0.0;        // max of || J^2 + I ||_inf
    double compat_residual = 0.0;     // max of || J^t g J - g ||_inf
    bool pass = false;
};

inline ChartValidation validate_chart(const ManifoldChart& chart,
                                      const std::vector<RVec>& samples,
                                      double tol = 1e-10) {
    ChartValidation rep;
    rep.spd_min_eigenvalue = std::numeric_limits<double>::infinity();
    const RMat id = RMat::Identity(chart.dim(), chart.dim());
    for (const auto& p : samples) {
        if (!chart.contains(p)) throw SampleOutOfDomain();
        const RMat g = chart.metric(p);
        const RMat J = chart.acs(p);
        rep.spd_min_eigenvalue =
            std::min(rep.spd_min_eigenvalue, min_eigenvalue_sym(g));
        rep.acs_residual =
            std::max(rep.acs_residual, (J * J + id).cwiseAbs().maxCoeff());
        rep.compat_residual = std::max(
            rep.compat_residual,
            (J.transpose() * g * J - g).cwiseAbs().maxCoeff());
    }
    rep.pass = rep.spd_min_eigenvalue > 0.0 && rep.acs_residual <= tol &&
               rep.compat_residual <= tol;
    return rep;
}

}  // namespace ahm
