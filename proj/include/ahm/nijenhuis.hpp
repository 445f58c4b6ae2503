#pragma once

#include "ahm/frame.hpp"
#include "ahm/numeric/differentiation.hpp"

namespace ahm {

struct NijenhuisComponents {
    RVec point;
    Tensor3c n;  // n(i,j,k), antisymmetric in (j,k)

    double norm() const { return n.frobenius_norm(); }
};

// Nijenhuis tensor from finite differences of Lie brackets of the
// coordinate-extended fields,
//   N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y],
// expressed in the unitary frame and normalized so that
// n(i,j,k) = (1/4) theta^i(N(ebar_j, ebar_k)) equals the (0,2)-torsion
// tau^i_{jbar kbar} of the canonical connection. This route only needs
// first derivatives of J, so it is independent of the connection solve.
inline NijenhuisComponents nijenhuis(const ManifoldChart& chart, const RVec& p,
                                     const UnitaryCoframe& cf,
                                     const DifferentiationScheme& scheme = {}) {
    const int n = chart.dim();
    const int m = chart.m;
    const RMat J = chart.acs(p);
    const auto dom = chart.domain_check();

    std::vector<RMat> dJ(n);
    for (int a = 0; a < n; ++a)
        dJ[a] = differentiate_field(chart.acs, p, a, scheme, dom);

    // Ncoord[a][b] = N(d_a, d_b) as a coordinate column.
    Tensor3<double> ncoord(n, n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                double v = 0.0;
                for (int d = 0; d < n; ++d) {
                    v += J(d, a) * dJ[d](c, b) - J(d, b) * dJ[d](c, a);
                    v += J(c, d) * dJ[b](d, a) - J(c, d) * dJ[a](d, b);
                }
                ncoord(a, b, c) = v;
            }

    NijenhuisComponents out;
    out.point = p;
    out.n = Tensor3c(m, m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                Complex v = 0.0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        const Complex w = std::conj(cf.frame(a, j)) *
                                          std::conj(cf.frame(b, k));
                        if (w == Complex(0.0)) continue;
                        Complex nc = 0.0;
                        for (int c = 0; c < n; ++c)
                            nc += cf.theta(i, c) * ncoord(a, b, c);
                        v += w * nc;
                    }
                out.n(i, j, k) = 0.25 * v;
            }
    // store exactly antisymmetrized
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = j; k < m; ++k) {
                const Complex anti = 0.5 * (out.n(i, j, k) - out.n(i, k, j));
                out.n(i, j, k) = anti;
                out.n(i, k, j) = -anti;
            }
    return out;
}

inline NijenhuisComponents nijenhuis(const ManifoldChart& chart, const RVec& p,
                                     const DifferentiationScheme& scheme = {}) {
    return nijenhuis(chart, p, unitary_coframe(chart, p), scheme);
}

}  // namespace ahm
