#pragma once

#include "ahm/connection.hpp"

namespace ahm {

using ScalarField = std::function<double(const RVec&)>;

// Hessian of a scalar with respect to a connection,
//   (nabla du)(X, Y) = Y(Xu) - (nabla_Y X)u.
// real(a,b) = (nabla du)(d_a, d_b); cplx(k,l) = (nabla du)(e_k, ebar_l),
// Hermitian for the canonical connection by the Ricci identity.
struct ScalarHessian {
    RMat real;
    CMat cplx;
    double hermitian_defect = 0.0;
};

inline ScalarHessian hessian_scalar(const ManifoldChart& chart,
                                    const ScalarField& u, const RVec& p,
                                    const std::vector<RMat>& gamma,
                                    const UnitaryCoframe& cf,
                                    const DifferentiationScheme& scheme = {}) {
    const int n = chart.dim();
    const int m = chart.m;
    const auto dom = chart.domain_check();

    RVec du(n);
    for (int a = 0; a < n; ++a)
        du(a) = differentiate_field(u, p, a, scheme, dom);

    ScalarHessian H;
    H.real = RMat(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            const double dd = second_derivative(u, p, a, b, scheme, dom);
            H.real(a, b) = dd;
            H.real(b, a) = dd;
        }
    // connection term: (nabla du)(d_a, d_b) = dd - Gamma^c_{ba} d_c u
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                H.real(a, b) -= gamma[b](c, a) * du(c);

    H.cplx = CMat::Zero(m, m);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            Complex s = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    s += cf.frame(a, k) * std::conj(cf.frame(b, l)) *
                         H.real(a, b);
            H.cplx(k, l) = s;
        }
    H.hermitian_defect = hermitian_defect(H.cplx);
    return H;
}

inline ScalarHessian hessian_scalar(const ManifoldChart& chart,
                                    const ScalarField& u, const RVec& p,
                                    ConnectionKind kind,
                                    const DifferentiationScheme& scheme = {}) {
    const auto cf = unitary_coframe(chart, p);
    if (kind == ConnectionKind::LeviCivita) {
        const auto lc = levi_civita_connection(chart, p, scheme);
        return hessian_scalar(chart, u, p, lc.gamma, cf, scheme);
    }
    const auto can = canonical_connection(chart, p, cf, scheme);
    return hessian_scalar(chart, u, p, can.table.gamma, cf, scheme);
}

// Gradient g-norm of a scalar: || grad u ||_g = sqrt(du . g^{-1} . du).
inline double gradient_norm(const ManifoldChart& chart, const ScalarField& u,
                            const RVec& p,
                            const DifferentiationScheme& scheme = {}) {
    const int n = chart.dim();
    const auto dom = chart.domain_check();
    RVec du(n);
    for (int a = 0; a < n; ++a)
        du(a) = differentiate_field(u, p, a, scheme, dom);
    const RMat g = chart.metric(p);
    return std::sqrt(du.dot(g.llt().solve(du)));
}

// Canonical minus Levi-Civita Laplacian, with the torsion-trace prediction
//   gap = 2 Re sum_{k,j} tau^k_{kj} conj(u_j),  u_j = e_j(u).
struct LaplacianGap {
    double canonical = 0.0;
    double levi_civita = 0.0;
    double gap = 0.0;
    double torsion_prediction = 0.0;
};

inline LaplacianGap laplacian_gap(const ManifoldChart& chart,
                                  const ScalarField& u, const RVec& p,
                                  const DifferentiationScheme& scheme = {}) {
    const int n = chart.dim();
    const int m = chart.m;
    const auto cf = unitary_coframe(chart, p);
    const auto can = canonical_connection(chart, p, cf, scheme);
    const auto lc = levi_civita_connection(chart, p, scheme);
    const auto Hc = hessian_scalar(chart, u, p, can.table.gamma, cf, scheme);
    const auto Hl = hessian_scalar(chart, u, p, lc.gamma, cf, scheme);

    LaplacianGap out;
    out.canonical = 2.0 * Hc.cplx.trace().real();
    out.levi_civita = 2.0 * Hl.cplx.trace().real();
    out.gap = out.canonical - out.levi_civita;

    const auto dom = chart.domain_check();
    RVec du(n);
    for (int a = 0; a < n; ++a)
        du(a) = differentiate_field(u, p, a, scheme, dom);
    Complex pred = 0.0;
    for (int j = 0; j < m; ++j) {
        Complex uj = 0.0;
        for (int a = 0; a < n; ++a) uj += cf.frame(a, j) * du(a);
        for (int k = 0; k < m; ++k)
            pred += can.torsion.t20(k, k, j) * std::conj(uj);
    }
    out.torsion_prediction = 2.0 * pred.real();
    return out;
}

}  // namespace ahm
