#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ahm/comparison.hpp"

using namespace ahm;

TEST_CASE("constant positive source: X = sqrt(c) coth(sqrt(c) r)") {
    for (double c : {1.0, 4.0}) {
        const double s = std::sqrt(c);
        const double r0 = 0.01;
        const CMat X0 = (s / std::tanh(s * r0)) * CMat::Identity(2, 2);
        const auto flow = riccati_integrate(
            {}, [c](double) { return CMat(c * CMat::Identity(2, 2)); }, r0, X0,
            1.0, 1e-4);
        CHECK_FALSE(flow.blew_up);
        const double expect = s / std::tanh(s);
        CHECK(flow.X.back()(0, 0).real() == Catch::Approx(expect).margin(1e-5));
        CHECK(flow.X.back()(1, 1).real() == Catch::Approx(expect).margin(1e-5));
        CHECK(std::abs(flow.X.back()(0, 1)) < 1e-10);
    }
}

TEST_CASE("zero source: X = (1/r) I propagates exactly") {
    const double r0 = 0.5;
    const CMat X0 = (1.0 / r0) * CMat::Identity(1, 1);
    const auto flow = riccati_integrate({}, {}, r0, X0, 2.0, 1e-4);
    for (size_t k = 0; k < flow.grid.size(); k += 100)
        CHECK(flow.X[k](0, 0).real() ==
              Catch::Approx(1.0 / flow.grid[k]).margin(1e-6));
}

TEST_CASE("negative source blows up before pi (conjugate point)") {
    const double r0 = 0.01;
    const CMat X0 = (std::cos(r0) / std::sin(r0)) * CMat::Identity(1, 1);
    const auto flow = riccati_integrate(
        {}, [](double) { return CMat(-CMat::Identity(1, 1)); }, r0, X0, 4.0,
        1e-4);
    CHECK(flow.blew_up);
    CHECK(flow.r_stop < 3.15);
    CHECK(flow.r_stop > 3.0);
}

TEST_CASE("iterates stay Hermitian under a skew perturbation of A") {
    CMat A(2, 2);
    A << Complex(0.1, 0.0), Complex(0.0, 0.3), Complex(0.0, 0.1),
        Complex(-0.2, 0.0);
    const auto flow = riccati_integrate(
        [A](double) { return A; },
        [](double r) { return CMat((1.0 + 0.5 * std::sin(r)) * CMat::Identity(2, 2)); },
        0.05, CMat(20.0 * CMat::Identity(2, 2)), 1.5, 1e-3);
    for (const auto& X : flow.X) CHECK(hermitian_defect(X) <= 1e-8);
}

TEST_CASE("comparison: ordered sources give ordered flows") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> un(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const int m = 1 + static_cast<int>(rng() % 3);
        // random diagonal sources with S1 <= S2
        RVec s1(m), s2(m);
        for (int i = 0; i < m; ++i) {
            s1(i) = -1.0 + 2.0 * un(rng);
            s2(i) = s1(i) + 2.0 * un(rng);
        }
        CMat A = CMat::Zero(m, m);
        for (int i = 0; i < m; ++i) A(i, i) = Complex(0.2 * un(rng), 0.0);

        const double r0 = 0.05;
        const CMat X0 = (1.0 / r0) * CMat::Identity(m, m);
        auto mk = [&](const RVec& s) {
            return riccati_integrate(
                [A](double) { return A; },
                [s, m](double) {
                    CMat S = CMat::Zero(m, m);
                    for (int i = 0; i < m; ++i) S(i, i) = s(i);
                    return S;
                },
                r0, X0, 1.5, 1e-3);
        };
        const auto f1 = mk(s1);
        const auto f2 = mk(s2);
        REQUIRE(f1.grid.size() == f2.grid.size());
        for (size_t k = 0; k < f1.grid.size(); k += 25) {
            const auto ord = psd_order(f1.X[k], f2.X[k], 1e-6);
            CHECK(ord.holds);
        }
    }
}

TEST_CASE("comparison bound matrix Y(r)") {
    ComparisonProfile prof;
    prof.m = 1;
    prof.constants.B = 1.0;
    prof.constants.A1 = prof.constants.A2 = 0.0;
    // h(1) = 1, so Y(1) = (1/1 + 1) I
    CHECK(comparison_bound(prof, 1.0)(0, 0).real() == Catch::Approx(2.0));
    CHECK_THROWS_AS(comparison_bound(prof, 0.0), NonpositiveRadius);
    CHECK_THROWS_AS(comparison_bound(prof, -1.0), NonpositiveRadius);

    // all three terms: B = A1 = A2 = 1, m = 1 gives h(0+) = 1 + 7 + 2 = 10
    prof.constants.A1 = prof.constants.A2 = 1.0;
    const double r = 1e-4;
    CHECK(comparison_bound(prof, r)(0, 0).real() ==
          Catch::Approx(1.0 / r + std::sqrt(10.0)).margin(1e-5));

    // dominant term at large radius with alpha = 2: Y(r)/r -> sqrt(B)
    ComparisonProfile grow;
    grow.m = 1;
    grow.constants.B = 2.5;
    grow.constants.alpha = 2.0;
    grow.constants.A1 = grow.constants.A2 = 0.0;
    const double rr = 1e5;
    CHECK(comparison_bound(grow, rr)(0, 0).real() / rr ==
          Catch::Approx(std::sqrt(2.5)).margin(1e-3));
}

TEST_CASE("h(r) is positive and nondecreasing for nonnegative exponents") {
    ComparisonProfile prof;
    prof.m = 2;
    prof.constants.B = 0.7;
    prof.constants.A1 = 0.2;
    prof.constants.A2 = 0.1;
    prof.constants.alpha = 2.0;
    prof.constants.beta = 1.0;
    prof.constants.gamma_exp = 2.0;
    double prev = 0.0;
    for (double r = 0.0; r <= 10.0; r += 0.25) {
        const double h = prof.h(r);
        CHECK(h > 0.0);
        CHECK(h >= prev);
        prev = h;
    }
}
