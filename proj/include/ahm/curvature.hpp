#pragma once

#include <map>
#include <utility>

#include "ahm/connection.hpp"

namespace ahm {

// Curvature of the canonical connection in the unitary frame. Index
// convention (matching the index-raised components of the curvature
// 2-forms): r11(i,j,k,l) = R_{i jbar k lbar}, r20(i,j,k,l) = R_{i jbar k l},
// r02(i,j,k,l) = R_{i jbar kbar lbar}. The raw coordinate-frame curvature
// operator R(d_a, d_b) is kept for oracle checks and general contractions.
struct CurvatureComponents {
    RVec point;
    Tensor4c r20, r11, r02;
    CMat ricci1;  // R'_{k lbar}
    CMat ricci2;  // R''_{i jbar}
    double scalar = 0.0;
    std::vector<std::vector<RMat>> rop;  // rop[a][b](d,c) = R^d_{c a b}
    RMat g;
    UnitaryCoframe cf;
};

// Cached lattice of connection data around a center point: node(a, o) is
// the canonical connection at center + o*step*e_a. Shared by curvature
// and by covariant derivatives of torsion so each stencil point's linear
// solve happens once.
class ConnectionStencil {
public:
    ConnectionStencil(const ManifoldChart& chart, const RVec& center,
                      const FrameGauge& gauge,
                      const DifferentiationScheme& scheme)
        : chart_(chart), center_(center), gauge_(gauge), scheme_(scheme) {}

    struct Node {
        UnitaryCoframe cf;
        CanonicalConnection conn;
    };

    const Node& node(int dir, int offset) {
        const auto key = std::make_pair(dir, offset);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        RVec q = center_;
        if (offset != 0) q(dir) += offset * scheme_.step;
        if (!chart_.contains(q)) throw StencilOutOfDomain();
        Node n;
        n.cf = unitary_coframe(chart_, q, gauge_);
        n.conn = canonical_connection(chart_, q, n.cf, scheme_);
        return cache_.emplace(key, std::move(n)).first->second;
    }

    const Node& center() { return node(0, 0); }

    // Central finite difference of a per-node quantity along direction a.
    template <class F>
    auto derivative(int a, F&& value) -> decltype(value(center())) {
        const double h = scheme_.step;
        if (scheme_.order == StencilOrder::Central2)
            return (value(node(a, 1)) - value(node(a, -1))) / (2.0 * h);
        return (value(node(a, -2)) - 8.0 * value(node(a, -1)) +
                8.0 * value(node(a, 1)) - value(node(a, 2))) /
               (12.0 * h);
    }

    const DifferentiationScheme& scheme() const { return scheme_; }
    const FrameGauge& gauge() const { return gauge_; }
    const ManifoldChart& chart() const { return chart_; }
    const RVec& base() const { return center_; }

private:
    const ManifoldChart& chart_;
    RVec center_;
    FrameGauge gauge_;
    DifferentiationScheme scheme_;
    std::map<std::pair<int, int>, Node> cache_;
};

inline CurvatureComponents curvature(const ManifoldChart& chart,
                                     ConnectionStencil& st) {
    const int n = chart.dim();
    const int m = chart.m;
    const auto& c0 = st.center();
    const auto& gamma = c0.conn.table.gamma;

    // dGamma[a][b](d,c) = d_a Gamma^d_{bc}
    std::vector<std::vector<RMat>> dGamma(n);
    for (int a = 0; a < n; ++a) {
        dGamma[a].resize(n);
        for (int b = 0; b < n; ++b)
            dGamma[a][b] = st.derivative(
                a, [b](const ConnectionStencil::Node& nd) {
                    return nd.conn.table.gamma[b];
                });
    }

    CurvatureComponents cc;
    cc.point = st.base();
    cc.cf = c0.cf;
    cc.g = chart.metric(st.base());
    cc.rop.assign(n, std::vector<RMat>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            cc.rop[a][b] = dGamma[a][b] - dGamma[b][a] +
                           gamma[a] * gamma[b] - gamma[b] * gamma[a];

    const CMat E = c0.cf.frame;
    const CMat Th = c0.cf.theta;
    auto rop_c = [&](const CVec& z, const CVec& w) {
        CMat M = CMat::Zero(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const Complex zw = z(a) * w(b);
                if (zw == Complex(0.0)) continue;
                M += zw * cc.rop[a][b].cast<Complex>();
            }
        return M;
    };

    cc.r20 = Tensor4c(m, m, m, m);
    cc.r11 = Tensor4c(m, m, m, m);
    cc.r02 = Tensor4c(m, m, m, m);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            const CVec ek = E.col(k), el = E.col(l);
            const CMat M20 = Th * rop_c(ek, el) * E;
            const CMat M11 = Th * rop_c(ek, el.conjugate()) * E;
            const CMat M02 = Th * rop_c(ek.conjugate(), el.conjugate()) * E;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    cc.r20(i, j, k, l) = M20(j, i);
                    cc.r11(i, j, k, l) = M11(j, i);
                    cc.r02(i, j, k, l) = M02(j, i);
                }
        }

    cc.ricci1 = CMat::Zero(m, m);
    cc.ricci2 = CMat::Zero(m, m);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
            for (int i = 0; i < m; ++i) {
                cc.ricci1(k, l) += cc.r11(i, i, k, l);
                cc.ricci2(k, l) += cc.r11(k, l, i, i);
            }
    cc.scalar = cc.ricci1.trace().real();
    return cc;
}

inline CurvatureComponents curvature(const ManifoldChart& chart, const RVec& p,
                                     const DifferentiationScheme& scheme = {}) {
    const auto gauge = make_gauge(chart, p);
    ConnectionStencil st(chart, p, gauge, scheme);
    return curvature(chart, st);
}

// R(U, V, Z, W) = g(R(Z,W)U, V), C-multilinear in all four slots.
inline Complex curv4(const CurvatureComponents& cc, const CVec& U,
                     const CVec& V, const CVec& Z, const CVec& W) {
    const int n = static_cast<int>(cc.g.rows());
    CMat M = CMat::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Complex zw = Z(a) * W(b);
            if (zw == Complex(0.0)) continue;
            M += zw * cc.rop[a][b].cast<Complex>();
        }
    return (V.transpose() * cc.g.cast<Complex>() * (M * U))(0, 0);
}

// Holomorphic bisectional curvature of unit (1,0) frame vectors X, Y:
// sum R_{i jbar k lbar} X^i conj(X^j) Y^k conj(Y^l) / (|X|^2 |Y|^2).
inline double hbc(const CurvatureComponents& cc, const CVec& X,
                  const CVec& Y) {
    const int m = static_cast<int>(X.size());
    const double nx = X.squaredNorm(), ny = Y.squaredNorm();
    if (nx < 1e-14 || ny < 1e-14) throw ZeroVector();
    Complex s = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    s += cc.r11(i, j, k, l) * X(i) * std::conj(X(j)) * Y(k) *
                         std::conj(Y(l));
    return s.real() / (nx * ny);
}

inline double hsc(const CurvatureComponents& cc, const CVec& X) {
    return hbc(cc, X, X);
}

struct CurvatureSymmetryReport {
    double conj_sym = 0.0;   // Eq.-(2.15)-type relations
    double antisym = 0.0;    // Eq.-(2.16) 2-form antisymmetry
    double pair_skew = 0.0;  // Eq.-(2.16) endomorphism skew-adjointness
    double trace = 0.0;      // scalar = tr Ric' = tr Ric''
    double max() const {
        return std::max(std::max(conj_sym, antisym),
                        std::max(pair_skew, trace));
    }
};

inline CurvatureSymmetryReport verify_curvature_symmetries(
    const CurvatureComponents& cc) {
    const int m = static_cast<int>(cc.ricci1.rows());
    CurvatureSymmetryReport rep;
    const CMat& E = cc.cf.frame;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    rep.conj_sym = std::max(
                        rep.conj_sym,
                        std::abs(cc.r20(j, i, k, l) -
                                 std::conj(cc.r02(i, j, l, k))));
                    rep.conj_sym = std::max(
                        rep.conj_sym,
                        std::abs(cc.r11(j, i, k, l) -
                                 std::conj(cc.r11(i, j, l, k))));
                    rep.antisym = std::max(
                        rep.antisym, std::abs(cc.r20(i, j, k, l) +
                                              cc.r20(i, j, l, k)));
                    rep.antisym = std::max(
                        rep.antisym, std::abs(cc.r02(i, j, k, l) +
                                              cc.r02(i, j, l, k)));
                    // g(R(.,.)e_j, ebar_i) = -g(R(.,.)ebar_i, e_j)
                    rep.pair_skew = std::max(
                        rep.pair_skew,
                        std::abs(cc.r20(j, i, k, l) +
                                 curv4(cc, E.col(i).conjugate(), E.col(j),
                                       E.col(k), E.col(l))));
                    rep.pair_skew = std::max(
                        rep.pair_skew,
                        std::abs(cc.r11(j, i, k, l) +
                                 curv4(cc, E.col(i).conjugate(), E.col(j),
                                       E.col(k), E.col(l).conjugate())));
                }
    rep.trace = std::abs(cc.ricci1.trace() - cc.ricci2.trace());
    return rep;
}

// Covariant derivatives of the torsion components with respect to the
// canonical connection: d20_e(i,j,k,l) = tau^i_{jk;l} (derivative along
// e_l), d20_ebar along ebar_l, and likewise for the (0,2) part.
struct TorsionDerivatives {
    Tensor4c d20_e, d20_ebar;
    Tensor4c d02_e, d02_ebar;
};

inline TorsionDerivatives torsion_derivatives(const ManifoldChart& chart,
                                              ConnectionStencil& st,
                                              const ConnectionForms& forms) {
    const int n = chart.dim();
    const int m = chart.m;
    const auto& c0 = st.center();

    // coordinate derivatives of the torsion component fields
    std::vector<Tensor3c> dt20(n), dt02(n);
    for (int a = 0; a < n; ++a) {
        dt20[a] = st.derivative(a, [](const ConnectionStencil::Node& nd) {
            return nd.conn.torsion.t20;
        });
        dt02[a] = st.derivative(a, [](const ConnectionStencil::Node& nd) {
            return nd.conn.torsion.t02;
        });
    }

    const auto& t20 = c0.conn.torsion.t20;
    const auto& t02 = c0.conn.torsion.t02;
    const CMat& E = c0.cf.frame;

    TorsionDerivatives td;
    td.d20_e = Tensor4c(m, m, m, m);
    td.d20_ebar = Tensor4c(m, m, m, m);
    td.d02_e = Tensor4c(m, m, m, m);
    td.d02_ebar = Tensor4c(m, m, m, m);

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    Complex d20e = 0.0, d20b = 0.0, d02e = 0.0, d02b = 0.0;
                    for (int a = 0; a < n; ++a) {
                        const Complex el = E(a, l);
                        d20e += el * dt20[a](i, j, k);
                        d20b += std::conj(el) * dt20[a](i, j, k);
                        d02e += el * dt02[a](i, j, k);
                        d02b += std::conj(el) * dt02[a](i, j, k);
                    }
                    for (int q = 0; q < m; ++q) {
                        // lower unbarred indices: -theta^q_j, -theta^q_k
                        d20e += -t20(i, q, k) * forms.on_e(q, j, l) -
                                t20(i, j, q) * forms.on_e(q, k, l) +
                                t20(q, j, k) * forms.on_e(i, q, l);
                        d20b += -t20(i, q, k) * forms.on_ebar(q, j, l) -
                                t20(i, j, q) * forms.on_ebar(q, k, l) +
                                t20(q, j, k) * forms.on_ebar(i, q, l);
                        // lower barred indices: theta^{qbar}_{jbar}(v) =
                        // conj(theta^q_j(vbar))
                        d02e += -t02(i, q, k) *
                                    std::conj(forms.on_ebar(q, j, l)) -
                                t02(i, j, q) *
                                    std::conj(forms.on_ebar(q, k, l)) +
                                t02(q, j, k) * forms.on_e(i, q, l);
                        d02b += -t02(i, q, k) *
                                    std::conj(forms.on_e(q, j, l)) -
                                t02(i, j, q) *
                                    std::conj(forms.on_e(q, k, l)) +
                                t02(q, j, k) * forms.on_ebar(i, q, l);
                    }
                    td.d20_e(i, j, k, l) = d20e;
                    td.d20_ebar(i, j, k, l) = d20b;
                    td.d02_e(i, j, k, l) = d02e;
                    td.d02_ebar(i, j, k, l) = d02b;
                }
    return td;
}

// Residuals of the two torsion-curvature identities
//   R_{i jbar k lbar} - R_{k jbar i lbar}
//        = tau^j_{ik;lbar} - sum_m tau^{mbar}_{ik} tau^j_{lbar mbar}
//   R_{i jbar k l} = -tau^{ibar}_{kl;jbar} + sum_m tau^{ibar}_{jbar mbar}
//        tau^{mbar}_{kl}
// with every term computed independently.
struct TorsionCurvatureReport {
    double res_17 = 0.0;
    double res_18 = 0.0;
    double mag_17 = 0.0;  // largest side magnitude seen in the first identity
    double mag_18 = 0.0;
};

inline TorsionCurvatureReport verify_torsion_curvature_identities(
    const ManifoldChart& chart, const RVec& p,
    const DifferentiationScheme& scheme = {}) {
    const auto gauge = make_gauge(chart, p);
    ConnectionStencil st(chart, p, gauge, scheme);
    const auto& c0 = st.center();
    const auto cc = curvature(chart, st);
    const auto forms = connection_one_forms(
        chart, p, c0.cf, gauge, c0.conn.table.gamma, scheme);
    const auto td = torsion_derivatives(chart, st, forms);
    const auto& t20 = c0.conn.torsion.t20;
    const auto& t02 = c0.conn.torsion.t02;
    const int m = chart.m;

    TorsionCurvatureReport rep;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    // first identity, mixed-type curvature
                    const Complex lhs17 =
                        cc.r11(i, j, k, l) - cc.r11(k, j, i, l);
                    Complex rhs17 = td.d20_ebar(j, i, k, l);
                    for (int q = 0; q < m; ++q)
                        rhs17 += t02(j, q, l) * std::conj(t02(q, i, k));
                    rep.res_17 = std::max(rep.res_17, std::abs(lhs17 - rhs17));
                    rep.mag_17 = std::max(
                        rep.mag_17, std::max(std::abs(lhs17), std::abs(rhs17)));

                    // second identity, (2,0) curvature
                    const Complex lhs18 = cc.r20(i, j, k, l);
                    Complex rhs18 = -std::conj(td.d02_e(i, k, l, j));
                    for (int q = 0; q < m; ++q)
                        rhs18 += std::conj(t20(i, j, q)) *
                                 std::conj(t02(q, k, l));
                    rep.res_18 = std::max(rep.res_18, std::abs(lhs18 - rhs18));
                    rep.mag_18 = std::max(
                        rep.mag_18, std::max(std::abs(lhs18), std::abs(rhs18)));
                }
    return rep;
}

}  // namespace ahm
