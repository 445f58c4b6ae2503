#pragma once

#include <vector>

#include "ahm/chart.hpp"
#include "ahm/errors.hpp"
#include "ahm/types.hpp"

namespace ahm {

// Pivot and phase choices made at a base point. Reusing a gauge on nearby
// points keeps the frame field smooth, which matters for every finite
// difference taken through frame components.
struct FrameGauge {
    std::vector<int> pivots;      // coordinate vectors fed to Gram-Schmidt
    std::vector<int> phase_idx;   // component made real positive, per e_i
};

// Unitary (1,0)-coframe at a point. theta holds the values of
// theta^1..theta^m on the coordinate vectors (m x 2m); frame holds the
// dual vectors e_i as coordinate columns (2m x m). Normalization:
// h(e_i, e_j) = delta_ij for the Hermitian product h(u,v) = g(u, conj v),
// so the real metric is g = 2 Re sum_j theta^j (x) conj(theta^j).
struct UnitaryCoframe {
    RVec point;
    CMat theta;  // m x 2m
    CMat frame;  // 2m x m
};

namespace detail {

// Hermitian product h(u, v) = g_C(u, conj(v)) on the complexified tangent.
inline Complex herm(const RMat& g, const CVec& u, const CVec& v) {
    return (u.transpose() * g * v.conjugate())(0, 0);
}

inline CVec project_10(const RMat& J, int a) {
    const int n = static_cast<int>(J.rows());
    CVec v = CVec::Zero(n);
    v(a) = 1.0;
    CVec Jv = J.col(a).cast<Complex>();
    return 0.5 * (v - I * Jv);
}

}  // namespace detail

// Chooses the coordinate pivots (odd-index vectors first, as a heuristic
// that matches the standard J layout) and the phase components at a point.
inline FrameGauge make_gauge(const ManifoldChart& chart, const RVec& p) {
    const int n = chart.dim();
    const RMat g = chart.metric(p);
    const RMat J = chart.acs(p);
    if (min_eigenvalue_sym(g) <= 0.0) throw DegenerateMetric();

    FrameGauge gauge;
    std::vector<CVec> accepted;
    std::vector<int> order;
    for (int a = 0; a < n; a += 2) order.push_back(a);
    for (int a = 1; a < n; a += 2) order.push_back(a);

    for (int a : order) {
        if (static_cast<int>(accepted.size()) == chart.m) break;
        CVec v = detail::project_10(J, a);
        for (const auto& e : accepted) v -= detail::herm(g, v, e) * e;
        const double nrm = std::sqrt(std::abs(detail::herm(g, v, v)));
        if (nrm < 1e-6) continue;
        v /= nrm;
        accepted.push_back(v);
        gauge.pivots.push_back(a);
        int phase = 0;
        for (int i = 0; i < n; ++i)
            if (std::abs(v(i)) > 1e-8 * v.norm()) {
                phase = i;
                break;
            }
        gauge.phase_idx.push_back(phase);
    }
    if (static_cast<int>(accepted.size()) != chart.m) throw FrameGaugeFailure();
    return gauge;
}

inline UnitaryCoframe unitary_coframe(const ManifoldChart& chart,
                                      const RVec& p,
                                      const FrameGauge& gauge) {
    const int n = chart.dim();
    const int m = chart.m;
    const RMat g = chart.metric(p);
    const RMat J = chart.acs(p);
    if (min_eigenvalue_sym(g) <= 0.0) throw DegenerateMetric();

    CMat E(n, m);
    std::vector<CVec> accepted;
    for (int i = 0; i < m; ++i) {
        CVec v = detail::project_10(J, gauge.pivots[i]);
        for (const auto& e : accepted) v -= detail::herm(g, v, e) * e;
        const double nrm = std::sqrt(std::abs(detail::herm(g, v, v)));
        if (nrm < 1e-10) throw FrameGaugeFailure();
        v /= nrm;
        const Complex pivot = v(gauge.phase_idx[i]);
        if (std::abs(pivot) > 1e-14) v *= std::conj(pivot) / std::abs(pivot);
        accepted.push_back(v);
        E.col(i) = v;
    }

    // theta = first m rows of the inverse of [e_1..e_m, conj(e_1)..conj(e_m)]
    CMat basis(n, n);
    basis.leftCols(m) = E;
    basis.rightCols(m) = E.conjugate();
    Eigen::PartialPivLU<CMat> lu(basis);
    const CMat inv = lu.inverse();

    UnitaryCoframe cf;
    cf.point = p;
    cf.frame = E;
    cf.theta = inv.topRows(m);
    return cf;
}

inline UnitaryCoframe unitary_coframe(const ManifoldChart& chart,
                                      const RVec& p) {
    return unitary_coframe(chart, p, make_gauge(chart, p));
}

// Rotates a coframe by U in U(m): e'_j = sum_i e_i U_ij. Used by the
// gauge-invariance property tests.
inline UnitaryCoframe rotate_coframe(const UnitaryCoframe& cf, const CMat& U) {
    UnitaryCoframe out;
    out.point = cf.point;
    out.frame = cf.frame * U;
    out.theta = U.adjoint() * cf.theta;
    return out;
}

// theta^i evaluated on a complexified coordinate vector.
inline CVec pair_theta(const UnitaryCoframe& cf, const CVec& v) {
    return cf.theta * v;
}

}  // namespace ahm
