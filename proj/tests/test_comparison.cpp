#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ahm/catalog.hpp"
#include "ahm/comparison.hpp"

using namespace ahm;

namespace {
RVec pt(std::initializer_list<double> v) {
    RVec p(static_cast<int>(v.size()));
    int i = 0;
    for (double x : v) p(i++) = x;
    return p;
}
}  // namespace

TEST_CASE("hyperbolic disc: scaled X against (1/r + 1) I") {
    const auto cat = catalog();
    const auto& e = find_entry(cat, "poincare_disc_k1");
    ComparisonProfile prof;
    prof.m = 1;
    prof.constants.B = 1.0;
    prof.constants.A1 = prof.constants.A2 = kGrowthFloor;

    const RVec v = pt({0.5, 0.0});
    const std::vector<double> radii = {0.5, 1.0, 2.0};
    const auto rows = hessian_comparison_check(
        e.chart, prof, e.center, {v}, radii, e.distance_to_center(),
        /*scale=*/2.0, 1e-3, 1e-3);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.holds);
        // closed forms: X = coth(r)/2, Y = 1/r + sqrt(h), gap = Y - coth(r)
        const double coth = 1.0 / std::tanh(row.r);
        CHECK(row.x_max_eig == Catch::Approx(coth / 2.0).margin(2e-3));
        CHECK(row.y_value ==
              Catch::Approx(1.0 / row.r + std::sqrt(prof.h(row.r))).margin(1e-9));
        CHECK(row.min_gap ==
              Catch::Approx(1.0 / row.r + 1.0 - coth).margin(5e-3));
        CHECK(row.min_gap > 0.0);
    }
    // frozen oracle values of the gaps at r = 0.5, 1, 2
    CHECK(rows[0].min_gap == Catch::Approx(0.836047).margin(5e-3));
    CHECK(rows[1].min_gap == Catch::Approx(0.686965).margin(5e-3));
    CHECK(rows[2].min_gap == Catch::Approx(0.462685).margin(5e-3));
}

TEST_CASE("flat space holds with floor constants") {
    const auto cat = catalog();
    const auto& e = find_entry(cat, "flat_c1");
    ComparisonProfile prof;
    prof.m = 1;
    prof.constants.B = prof.constants.A1 = prof.constants.A2 = kGrowthFloor;
    const auto rows = hessian_comparison_check(
        e.chart, prof, e.center, {pt({1.0, 0.0})}, {0.5, 1.0, 2.0},
        e.distance_to_center(), 2.0, 1e-3, 1e-3);
    for (const auto& row : rows) {
        CHECK(row.holds);
        // scaled flat Hessian saturates 1/r up to the floor term
        CHECK(row.min_gap == Catch::Approx(std::sqrt(prof.h(row.r))).margin(1e-5));
    }
}

TEST_CASE("complex hyperbolic ball with fitted constants, unscaled") {
    const auto cat = catalog();
    const auto& e = find_entry(cat, "complex_hyperbolic_ball");
    const auto pts = sample_points(e, 5, 3);
    ComparisonProfile prof;
    prof.m = 2;
    prof.constants = extract_growth_constants(e.chart, e.center, pts, {},
                                              e.distance_to_center());
    CHECK(prof.constants.B == Catch::Approx(4.0).margin(1e-2));

    std::mt19937_64 rng(5);
    std::normal_distribution<double> g01(0.0, 1.0);
    std::vector<RVec> rays;
    const RMat g0 = e.chart.metric(e.center);
    for (int i = 0; i < 5; ++i) {
        RVec v(4);
        for (int a = 0; a < 4; ++a) v(a) = g01(rng);
        v /= std::sqrt(v.dot(g0 * v));
        rays.push_back(v);
    }
    const auto rows = hessian_comparison_check(
        e.chart, prof, e.center, rays, {0.4, 1.0, 2.0},
        e.distance_to_center(), /*scale=*/1.0, 1e-3, 1e-3);
    CHECK(rows.size() == 15);
    for (const auto& row : rows) {
        CHECK(row.holds);
        CHECK(row.min_gap > 0.0);
        // eigenvalues are {coth 2r, coth r} in the unitary convention
        CHECK(row.x_max_eig ==
              Catch::Approx(1.0 / std::tanh(row.r)).margin(2e-3));
        CHECK(row.x_min_eig ==
              Catch::Approx(1.0 / std::tanh(2.0 * row.r)).margin(2e-3));
    }
}

TEST_CASE("monotonicity of the disc gap over [0.1, 3]") {
    const auto cat = catalog();
    const auto& e = find_entry(cat, "poincare_disc_k1");
    const auto dist = e.distance_to_center();
    ComparisonProfile prof;
    prof.m = 1;
    prof.constants.B = 1.0;
    prof.constants.A1 = prof.constants.A2 = kGrowthFloor;
    for (int k = 0; k < 30; ++k) {
        const double r = 0.1 + k * (2.9 / 29.0);
        const RVec p = e.radial_point(pt({1.0, 0.0}), r);
        const CMat X = distance_hessian(e.chart, dist, p);
        const CMat Y = comparison_bound(prof, r);
        CHECK(psd_order(2.0 * X, Y, 0.0).min_gap > 0.0);
    }
}

TEST_CASE("truncated rays are reported as errors") {
    const auto cat = catalog();
    const auto& e = find_entry(cat, "flat_c1");
    ComparisonProfile prof;
    prof.m = 1;
    prof.constants.B = kGrowthFloor;
    CHECK_THROWS_AS(
        hessian_comparison_check(e.chart, prof, e.center, {pt({1.0, 0.0})},
                                 {50.0}, e.distance_to_center()),
        Error);
}
