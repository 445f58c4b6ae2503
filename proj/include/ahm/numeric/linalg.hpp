#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ahm/errors.hpp"
#include "ahm/types.hpp"

namespace ahm {

inline double hermitian_defect(const CMat& M) {
    return (M - M.adjoint()).cwiseAbs().maxCoeff();
}

inline void require_hermitian(const CMat& M, double rel_tol = 1e-12) {
    if (M.rows() != M.cols()) throw NotHermitian("matrix not square");
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if (hermitian_defect(M) > rel_tol * scale)
        throw NotHermitian("symmetry check failed");
}

struct Eigensystem {
    RVec values;   // descending
    CMat vectors;  // columns, unitary, phase-fixed
};

// Hermitian eigendecomposition with deterministic output: eigenvalues
// sorted descending, each eigenvector rotated so its first component of
// magnitude above 1e-10 of the vector norm is real positive.
inline Eigensystem hermitian_eigen(const CMat& M, double rel_tol = 1e-12) {
    require_hermitian(M, rel_tol);
    const CMat H = 0.5 * (M + M.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(H);
    if (es.info() != Eigen::Success) throw Error("eigensolver failed");

    const int n = static_cast<int>(M.rows());
    Eigensystem out;
    out.values = RVec(n);
    out.vectors = CMat(n, n);
    for (int k = 0; k < n; ++k) {
        out.values(k) = es.eigenvalues()(n - 1 - k);
        CVec v = es.eigenvectors().col(n - 1 - k);
        for (int i = 0; i < n; ++i) {
            if (std::abs(v(i)) > 1e-10 * v.norm()) {
                v *= std::conj(v(i)) / std::abs(v(i));
                break;
            }
        }
        out.vectors.col(k) = v;
    }
    return out;
}

struct PsdResult {
    bool holds = false;
    double min_gap = 0.0;  // smallest eigenvalue of B - A
};

// A <= B in the PSD order, up to tol.
inline PsdResult psd_order(const CMat& A, const CMat& B, double tol) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw DimensionMismatch();
    const auto es = hermitian_eigen(B - A, 1e-9);
    PsdResult r;
    r.min_gap = es.values(es.values.size() - 1);
    r.holds = r.min_gap >= -tol;
    return r;
}

// Top eigenvalue of a Hermitian matrix (convenience).
inline double max_eigenvalue(const CMat& M) {
    return hermitian_eigen(M, 1e-8).values(0);
}

inline double min_eigenvalue_sym(const RMat& M) {
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (M + M.transpose()));
    return es.eigenvalues()(0);
}

}  // namespace ahm
