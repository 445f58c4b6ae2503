#include <catch2/catch_amalgamated.hpp>

#include "ahm/numeric/differentiation.hpp"

using namespace ahm;

namespace {
RVec pt(std::initializer_list<double> v) {
    RVec p(static_cast<int>(v.size()));
    int i = 0;
    for (double x : v) p(i++) = x;
    return p;
}
}  // namespace

TEST_CASE("polynomial fields are differentiated to roundoff") {
    auto field = [](const RVec& x) { return x(0) * x(0); };
    DifferentiationScheme s;
    s.step = 1e-3;
    s.order = StencilOrder::Central2;
    CHECK(differentiate_field(field, pt({1.0, 0.0}), 0, s) ==
          Catch::Approx(2.0).margin(1e-6));

    auto constant = [](const RVec&) { return 3.5; };
    CHECK(differentiate_field(constant, pt({0.2, -0.4}), 1, s) ==
          Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("sine derivative matches the closed form") {
    auto field = [](const RVec& x) { return std::sin(x(0)); };
    DifferentiationScheme s;
    CHECK(differentiate_field(field, pt({0.0, 0.0}), 0, s) ==
          Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("halving the step cuts the central-2 error by at least 3x") {
    auto field = [](const RVec& x) { return std::exp(std::sin(2.0 * x(0))); };
    const RVec p = pt({0.3});
    const double exact =
        2.0 * std::cos(0.6) * std::exp(std::sin(0.6));
    DifferentiationScheme s;
    s.order = StencilOrder::Central2;
    s.step = 1e-2;
    const double e1 = std::abs(differentiate_field(field, p, 0, s) - exact);
    s.step = 5e-3;
    const double e2 = std::abs(differentiate_field(field, p, 0, s) - exact);
    CHECK(e1 / e2 >= 3.0);
}

TEST_CASE("central-4 beats central-2 on a smooth battery at equal step") {
    const std::vector<std::function<double(double)>> f = {
        [](double t) { return std::sin(3.0 * t); },
        [](double t) { return std::exp(t); },
        [](double t) { return 1.0 / (1.0 + t * t); },
    };
    const std::vector<std::function<double(double)>> df = {
        [](double t) { return 3.0 * std::cos(3.0 * t); },
        [](double t) { return std::exp(t); },
        [](double t) { return -2.0 * t / ((1.0 + t * t) * (1.0 + t * t)); },
    };
    for (size_t i = 0; i < f.size(); ++i) {
        auto field = [&](const RVec& x) { return f[i](x(0)); };
        const RVec p = pt({0.4});
        DifferentiationScheme s;
        s.step = 1e-2;
        s.order = StencilOrder::Central2;
        const double e2 = std::abs(differentiate_field(field, p, 0, s) -
                                   df[i](0.4));
        s.order = StencilOrder::Central4;
        const double e4 = std::abs(differentiate_field(field, p, 0, s) -
                                   df[i](0.4));
        CHECK(e4 <= e2);
    }
}

TEST_CASE("richardson extrapolation improves the estimate") {
    auto field = [](const RVec& x) { return std::sin(5.0 * x(0)); };
    const RVec p = pt({0.2});
    const double exact = 5.0 * std::cos(1.0);
    DifferentiationScheme s;
    s.step = 2e-2;
    s.order = StencilOrder::Central2;
    const double plain = std::abs(differentiate_field(field, p, 0, s) - exact);
    s.richardson = true;
    const double rich = std::abs(differentiate_field(field, p, 0, s) - exact);
    CHECK(rich < plain);
}

TEST_CASE("stencils leaving the domain throw") {
    auto field = [](const RVec& x) { return x(0); };
    DomainCheck dom = [](const RVec& x) { return x(0) >= 0.0 && x(0) <= 1.0; };
    DifferentiationScheme s;
    s.step = 1e-2;
    CHECK_THROWS_AS(differentiate_field(field, pt({0.005}), 0, s, dom),
                    StencilOutOfDomain);
    CHECK_NOTHROW(differentiate_field(field, pt({0.5}), 0, s, dom));
}

TEST_CASE("second derivatives, diagonal and mixed") {
    auto field = [](const RVec& x) {
        return x(0) * x(0) * x(1) + std::cos(x(1));
    };
    DifferentiationScheme s;
    const RVec p = pt({0.7, 0.3});
    CHECK(second_derivative(field, p, 0, 0, s) ==
          Catch::Approx(2.0 * 0.3).margin(1e-7));
    CHECK(second_derivative(field, p, 0, 1, s) ==
          Catch::Approx(2.0 * 0.7).margin(1e-7));
    CHECK(second_derivative(field, p, 1, 1, s) ==
          Catch::Approx(-std::cos(0.3)).margin(1e-6));
}
