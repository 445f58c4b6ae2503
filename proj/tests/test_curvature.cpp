#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ahm/catalog.hpp"

using namespace ahm;

namespace {

RVec pt(std::initializer_list<double> v) {
    RVec p(static_cast<int>(v.size()));
    int i = 0;
    for (double x : v) p(i++) = x;
    return p;
}

// independent conformal Gauss-curvature oracle for one-dimensional discs:
// K = -(Laplacian log rho)/rho^2 evaluated by its own finite differences.
double conformal_gauss_curvature(const std::function<double(RVec)>& rho,
                                 const RVec& p) {
    const double h = 1e-4;
    auto logrho = [&](double dx, double dy) {
        RVec q = p;
        q(0) += dx;
        q(1) += dy;
        return std::log(rho(q));
    };
    const double lap =
        (logrho(h, 0) + logrho(-h, 0) + logrho(0, h) + logrho(0, -h) -
         4.0 * logrho(0, 0)) /
        (h * h);
    const double r0 = rho(p);
    return -lap / (r0 * r0);
}

}  // namespace

TEST_CASE("flat curvature vanishes") {
    const auto cat = catalog();
    const auto& e = find_entry(cat, "flat_c2");
    const auto cc = curvature(e.chart, pt({0.5, -0.3, 0.2, 0.9}));
    CHECK(cc.r20.max_abs() < 1e-9);
    CHECK(cc.r11.max_abs() < 1e-9);
    CHECK(cc.r02.max_abs() < 1e-9);
    CHECK(std::abs(cc.scalar) < 1e-9);
    CVec X(2);
    X << 1.0, 0.0;
    CHECK(std::abs(hsc(cc, X)) < 1e-6);
}

TEST_CASE("poincare disc hsc against the conformal oracle") {
    const auto cat = catalog();
    {
        const auto& e = find_entry(cat, "poincare_disc_k1");
        const RVec p = pt({0.3, 0.4});
        const double oracle = conformal_gauss_curvature(
            [](RVec q) { return 2.0 / (1.0 - q.squaredNorm()); }, p);
        CHECK(oracle == Catch::Approx(-1.0).margin(1e-6));
        const auto cc = curvature(e.chart, p);
        CVec X(1);
        X << 1.0;
        CHECK(hsc(cc, X) == Catch::Approx(oracle).margin(1e-3));
        CHECK(cc.r11(0, 0, 0, 0).real() == Catch::Approx(-1.0).margin(1e-6));
        // Kahler: no (2,0)/(0,2) curvature
        CHECK(cc.r20.max_abs() <= 1e-6);
        CHECK(cc.r02.max_abs() <= 1e-6);
    }
    {
        const auto& e = find_entry(cat, "poincare_disc_k4");
        const RVec p = pt({-0.2, 0.1});
        const double oracle = conformal_gauss_curvature(
            [](RVec q) { return 1.0 / (1.0 - q.squaredNorm()); }, p);
        CHECK(oracle == Catch::Approx(-4.0).margin(1e-5));
        const auto cc = curvature(e.chart, p);
        CVec X(1);
        X << 1.0;
        CHECK(hsc(cc, X) == Catch::Approx(-4.0).margin(1e-2));
    }
}

TEST_CASE("hsc is invariant under phase rotation of the direction") {
    const auto cat = catalog();
    const auto& e = find_entry(cat, "complex_hyperbolic_ball");
    const auto cc = curvature(e.chart, pt({0.2, -0.1, 0.15, 0.25}));
    CVec X(2);
    X << Complex(0.6, 0.2), Complex(-0.3, 0.7);
    X /= X.norm();
    const double base = hsc(cc, X);
    for (double phi : {0.7, 1.9, 3.0}) {
        const CVec Y = std::exp(I * phi) * X;
        CHECK(hsc(cc, Y) == Catch::Approx(base).margin(1e-10));
    }
    CHECK_THROWS_AS(hsc(cc, CVec(CVec::Zero(2))), ZeroVector);
}

TEST_CASE("product disc x disc: hbc of orthogonal factors and mixed hsc") {
    const auto cat = catalog();
    const auto& e = find_entry(cat, "disc_x_disc");
    const auto cc = curvature(e.chart, pt({0.3, 0.1, -0.2, 0.4}));
    CVec e1(2), e2(2), mix(2);
    e1 << 1.0, 0.0;
    e2 << 0.0, 1.0;
    mix << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CHECK(hsc(cc, e1) == Catch::Approx(-1.0).margin(1e-3));
    CHECK(hbc(cc, e1, e2) == Catch::Approx(0.0).margin(1e-4));
    CHECK(hsc(cc, mix) == Catch::Approx(-0.5).margin(1e-3));
}

TEST_CASE("curvature symmetries hold on every catalog entry") {
    const auto cat = catalog();
    for (const auto& e : cat)
        for (const auto& p : sample_points(e, 3, 61)) {
            const auto cc = curvature(e.chart, p);
            const auto rep = verify_curvature_symmetries(cc);
            CHECK(rep.conj_sym <= 1e-5);
            CHECK(rep.antisym <= 1e-5);
            CHECK(rep.pair_skew <= 1e-5);
            CHECK(rep.trace <= 1e-5);
        }
}

TEST_CASE("scalar curvature matches the known values") {
    const auto cat = catalog();
    for (const auto& e : cat) {
        if (!e.known_scalar) continue;
        for (const auto& p : sample_points(e, 3, 67))
            CHECK(curvature(e.chart, p).scalar ==
                  Catch::Approx(*e.known_scalar).margin(1e-3));
    }
}

TEST_CASE("torsion-curvature identities, trivial and nontrivial") {
    const auto cat = catalog();
    // flat: both sides vanish
    {
        const auto& e = find_entry(cat, "flat_c1");
        const auto rep =
            verify_torsion_curvature_identities(e.chart, pt({0.4, -0.7}));
        CHECK(rep.res_17 <= 1e-8);
        CHECK(rep.res_18 <= 1e-8);
        CHECK(rep.mag_17 <= 1e-8);
    }
    // Kahler: torsion degenerate, curvature difference must cancel
    {
        const auto& e = find_entry(cat, "complex_hyperbolic_ball");
        const auto rep =
            verify_torsion_curvature_identities(e.chart, pt({0.2, 0.1, -0.15, 0.2}));
        CHECK(rep.res_17 <= 1e-6);
        CHECK(rep.res_18 <= 1e-6);
    }
    // six-sphere: the first identity is nontrivial (tau tau vs curvature)
    {
        const auto& e = find_entry(cat, "s6_nearly_kahler");
        const auto rep = verify_torsion_curvature_identities(
            e.chart, pt({0.21, -0.13, 0.07, 0.18, -0.26, 0.11}));
        CHECK(rep.res_17 <= 1e-4);
        CHECK(rep.res_18 <= 1e-4);
        CHECK(rep.mag_17 > 1e-2);
    }
    // perturbed flat space: the second identity is nontrivial
    {
        const auto& e = find_entry(cat, "r4_perturbed");
        const auto rep = verify_torsion_curvature_identities(
            e.chart, pt({0.31, -0.22, 0.12, 0.41}));
        CHECK(rep.res_17 <= 1e-4);
        CHECK(rep.res_18 <= 1e-4);
        CHECK(rep.mag_18 > 1e-2);
    }
}

TEST_CASE("frame independence of scalar invariants") {
    const auto cat = catalog();
    const auto& e = find_entry(cat, "s6_nearly_kahler");
    const RVec p = pt({0.1, 0.25, -0.15, 0.08, 0.2, -0.1});

    // relabel coordinate axes within complex pairs to force a different
    // Gram-Schmidt pivot order; scalar and hsc extrema must agree
    const auto cc = curvature(e.chart, p);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g01(0.0, 1.0);
    CVec X(3);
    for (int i = 0; i < 3; ++i) X(i) = Complex(g01(rng), g01(rng));
    X /= X.norm();
    const double v = hsc(cc, X);

    // a gauge rotation of the same curvature data: contract the rotated
    // direction in the rotated components
    const CMat U = [&] {
        CMat A(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) A(i, j) = Complex(g01(rng), g01(rng));
        return CMat(Eigen::HouseholderQR<CMat>(A).householderQ());
    }();
    Tensor4c rot(3, 3, 3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    Complex s = 0.0;
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b)
                            for (int c = 0; c < 3; ++c)
                                for (int d = 0; d < 3; ++d)
                                    s += cc.r11(a, b, c, d) * U(a, i) *
                                         std::conj(U(b, j)) * U(c, k) *
                                         std::conj(U(d, l));
                    rot(i, j, k, l) = s;
                }
    CurvatureComponents cc_rot = cc;
    cc_rot.r11 = rot;
    const CVec Xrot = U.adjoint() * X;
    CHECK(hsc(cc_rot, Xrot) == Catch::Approx(v).margin(1e-8));
}
