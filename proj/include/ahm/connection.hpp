#pragma once

#include <map>
#include <vector>

#include "ahm/frame.hpp"
#include "ahm/numeric/differentiation.hpp"

namespace ahm {

enum class ConnectionKind { Canonical, LeviCivita };

// Connection coefficients at a point in the coordinate frame,
// nabla_{d_a} d_b = sum_c Gamma^c_{ab} d_c, stored as gamma[a](c, b).
struct ConnectionTable {
    RVec point;
    std::vector<RMat> gamma;
    ConnectionKind kind = ConnectionKind::Canonical;
    double solve_residual = 0.0;
};

// Torsion in the unitary frame: t20(i,j,k) = tau^i_{jk},
// t02(i,j,k) = tau^i_{jbar kbar}; t11_residual is the largest mixed-type
// component, which must vanish for the canonical connection.
struct TorsionComponents {
    RVec point;
    Tensor3c t20;
    Tensor3c t02;
    double t11_residual = 0.0;
};

struct CanonicalConnection {
    ConnectionTable table;
    TorsionComponents torsion;
};

namespace detail {

inline std::vector<RMat> metric_derivatives(const ManifoldChart& chart,
                                            const RVec& p,
                                            const DifferentiationScheme& s) {
    std::vector<RMat> d(chart.dim());
    const auto dom = chart.domain_check();
    for (int a = 0; a < chart.dim(); ++a)
        d[a] = differentiate_field(chart.metric, p, a, s, dom);
    return d;
}

}  // namespace detail

// Torsion tensor in coordinates, T^c_{ab} = Gamma^c_{ab} - Gamma^c_{ba},
// contracted into unitary-frame components.
inline TorsionComponents torsion_components(const std::vector<RMat>& gamma,
                                            const UnitaryCoframe& cf) {
    const int n = static_cast<int>(cf.frame.rows());
    const int m = static_cast<int>(cf.frame.cols());
    TorsionComponents t;
    t.point = cf.point;
    t.t20 = Tensor3c(m, m, m);
    t.t02 = Tensor3c(m, m, m);

    auto value = [&](const CVec& u, const CVec& v) {
        CVec w = CVec::Zero(n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const Complex uv = u(a) * v(b);
                if (uv == Complex(0.0)) continue;
                for (int c = 0; c < n; ++c)
                    w(c) += (gamma[a](c, b) - gamma[b](c, a)) * uv;
            }
        return CVec(cf.theta * w);
    };

    t.t11_residual = 0.0;
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
            const CVec e_j = cf.frame.col(j);
            const CVec e_k = cf.frame.col(k);
            const CVec v20 = value(e_j, e_k);
            const CVec v02 = value(e_j.conjugate(), e_k.conjugate());
            const CVec v11 = value(e_j, e_k.conjugate());
            for (int i = 0; i < m; ++i) {
                t.t20(i, j, k) = v20(i);
                t.t02(i, j, k) = v02(i);
                t.t11_residual = std::max(t.t11_residual, std::abs(v11(i)));
            }
        }
    }
    return t;
}

// Canonical connection: the unique solution of
//   { nabla g = 0, nabla J = 0, (1,1)-part of the torsion = 0 }
// solved as a dense least-squares system in the coordinate frame. The
// (1,1)-torsion condition is imposed J-invariantly:
//   T^c(X,Y) + T^c(JX, JY) = 0 for all coordinate pairs.
inline CanonicalConnection canonical_connection(
    const ManifoldChart& chart, const RVec& p, const UnitaryCoframe& cf,
    const DifferentiationScheme& scheme = {}) {
    const int n = chart.dim();
    const int N = n * n * n;
    const RMat g = chart.metric(p);
    const RMat J = chart.acs(p);
    const auto dg = detail::metric_derivatives(chart, p, scheme);
    std::vector<RMat> dJ(n);
    const auto dom = chart.domain_check();
    for (int a = 0; a < n; ++a)
        dJ[a] = differentiate_field(chart.acs, p, a, scheme, dom);

    auto idx = [n](int c, int a, int b) { return (c * n + a) * n + b; };

    const int rows_g = n * n * (n + 1) / 2;
    const int rows_j = n * n * n;
    const int rows_t = n * (n * (n - 1)) / 2;
    RMat A = RMat::Zero(rows_g + rows_j + rows_t, N);
    RVec rhs = RVec::Zero(A.rows());

    int row = 0;
    // nabla g = 0:  d_a g_{bc} = Gamma^d_{ab} g_{dc} + Gamma^d_{ac} g_{bd}
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = b; c < n; ++c) {
                for (int d = 0; d < n; ++d) {
                    A(row, idx(d, a, b)) += g(d, c);
                    A(row, idx(d, a, c)) += g(b, d);
                }
                rhs(row) = dg[a](b, c);
                ++row;
            }
    // nabla J = 0:  Gamma^e_{ad} J^d_c - J^e_d Gamma^d_{ac} = -d_a J^e_c
    for (int a = 0; a < n; ++a)
        for (int e = 0; e < n; ++e)
            for (int c = 0; c < n; ++c) {
                for (int d = 0; d < n; ++d) {
                    A(row, idx(e, a, d)) += J(d, c);
                    A(row, idx(d, a, c)) -= J(e, d);
                }
                rhs(row) = -dJ[a](e, c);
                ++row;
            }
    // (1,1)-torsion = 0
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                A(row, idx(c, a, b)) += 1.0;
                A(row, idx(c, b, a)) -= 1.0;
                for (int d = 0; d < n; ++d)
                    for (int e = 0; e < n; ++e) {
                        const double w = J(d, a) * J(e, b);
                        if (w == 0.0) continue;
                        A(row, idx(c, d, e)) += w;
                        A(row, idx(c, e, d)) -= w;
                    }
                ++row;
            }

    // row equilibration keeps the normal equations well conditioned when
    // the metric is large (conformal blow-up near a disc boundary)
    for (int r = 0; r < A.rows(); ++r) {
        const double nrm = A.row(r).norm();
        if (nrm > 0.0) {
            A.row(r) /= nrm;
            rhs(r) /= nrm;
        }
    }
    RMat AtA = RMat::Zero(N, N);
    AtA.selfadjointView<Eigen::Lower>().rankUpdate(A.transpose());
    const RVec Atb = A.transpose() * rhs;
    Eigen::LDLT<RMat> ldlt(AtA.selfadjointView<Eigen::Lower>());
    if (ldlt.info() != Eigen::Success) throw SingularSystem();
    const RVec dvec = ldlt.vectorD().cwiseAbs();
    if (dvec.minCoeff() < 1e-11 * dvec.maxCoeff()) throw SingularSystem();
    const RVec x = ldlt.solve(Atb);

    CanonicalConnection out;
    out.table.point = p;
    out.table.kind = ConnectionKind::Canonical;
    out.table.gamma.assign(n, RMat::Zero(n, n));
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                out.table.gamma[a](c, b) = x(idx(c, a, b));
    out.table.solve_residual = (A * x - rhs).cwiseAbs().maxCoeff();
    out.torsion = torsion_components(out.table.gamma, cf);
    return out;
}

inline CanonicalConnection canonical_connection(
    const ManifoldChart& chart, const RVec& p,
    const DifferentiationScheme& scheme = {}) {
    return canonical_connection(chart, p, unitary_coframe(chart, p), scheme);
}

// Standard Christoffel symbols from finite differences of g.
inline ConnectionTable levi_civita_connection(
    const ManifoldChart& chart, const RVec& p,
    const DifferentiationScheme& scheme = {}) {
    const int n = chart.dim();
    const RMat g = chart.metric(p);
    const RMat ginv = g.inverse();
    const auto dg = detail::metric_derivatives(chart, p, scheme);

    ConnectionTable t;
    t.point = p;
    t.kind = ConnectionKind::LeviCivita;
    t.gamma.assign(n, RMat::Zero(n, n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                double s = 0.0;
                for (int d = 0; d < n; ++d)
                    s += ginv(c, d) *
                         (dg[a](d, b) + dg[b](d, a) - dg[d](a, b));
                t.gamma[a](c, b) = 0.5 * s;
            }
    return t;
}

// Residual of the Levi-Civita / canonical relation
//   <LC_Y X - nabla_Y X, Z> = 1/2 (<tau(X,Y),Z> + <tau(Y,Z),X> - <tau(Z,X),Y>)
// over all coordinate triples.
inline double verify_lc_relation(const ManifoldChart& chart, const RVec& p,
                                 const DifferentiationScheme& scheme = {}) {
    const int n = chart.dim();
    const RMat g = chart.metric(p);
    const auto can = canonical_connection(chart, p, scheme);
    const auto lc = levi_civita_connection(chart, p, scheme);

    auto T = [&](int c, int a, int b) {
        return can.table.gamma[a](c, b) - can.table.gamma[b](c, a);
    };
    auto pair_g = [&](int c, int a, int b) {
        double s = 0.0;
        for (int d = 0; d < n; ++d) s += T(d, a, b) * g(d, c);
        return s;
    };

    double res = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                double lhs = 0.0;
                for (int d = 0; d < n; ++d)
                    lhs += (lc.gamma[b](d, a) - can.table.gamma[b](d, a)) *
                           g(d, c);
                const double rhsv = 0.5 * (pair_g(c, a, b) + pair_g(a, b, c) -
                                           pair_g(b, c, a));
                res = std::max(res, std::abs(lhs - rhsv));
            }
    return res;
}

// Connection 1-forms of the canonical connection in the unitary frame:
// on_e(i,j,k) = theta^i_j(e_k), on_ebar(i,j,k) = theta^i_j(ebar_k), where
// nabla_X e_j = sum_i theta^i_j(X) e_i. Needs the frame field's coordinate
// derivatives, taken with the gauge frozen at the base point.
struct ConnectionForms {
    Tensor3c on_e;
    Tensor3c on_ebar;
};

inline ConnectionForms connection_one_forms(const ManifoldChart& chart,
                                            const RVec& p,
                                            const UnitaryCoframe& cf,
                                            const FrameGauge& gauge,
                                            const std::vector<RMat>& gamma,
                                            const DifferentiationScheme& scheme = {}) {
    const int n = chart.dim();
    const int m = chart.m;
    const auto dom = chart.domain_check();

    auto frame_field = [&](const RVec& q) -> CMat {
        return unitary_coframe(chart, q, gauge).frame;
    };
    std::vector<CMat> dE(n);
    for (int a = 0; a < n; ++a)
        dE[a] = differentiate_field(frame_field, p, a, scheme, dom);

    // nabla_v e_j for a complexified direction v
    auto covderiv = [&](const CVec& v, int j) -> CVec {
        CVec out = CVec::Zero(n);
        for (int a = 0; a < n; ++a) {
            if (v(a) == Complex(0.0)) continue;
            out += v(a) * (dE[a].col(j) +
                           gamma[a].cast<Complex>() * cf.frame.col(j));
        }
        return out;
    };

    ConnectionForms forms;
    forms.on_e = Tensor3c(m, m, m);
    forms.on_ebar = Tensor3c(m, m, m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
            const CVec de = covderiv(cf.frame.col(k), j);
            const CVec debar = covderiv(cf.frame.col(k).conjugate(), j);
            const CVec ce = cf.theta * de;
            const CVec cebar = cf.theta * debar;
            for (int i = 0; i < m; ++i) {
                forms.on_e(i, j, k) = ce(i);
                forms.on_ebar(i, j, k) = cebar(i);
            }
        }
    return forms;
}

}  // namespace ahm
