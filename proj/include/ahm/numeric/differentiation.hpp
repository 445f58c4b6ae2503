#pragma once

#include <cmath>
#include <functional>

#include "ahm/errors.hpp"
#include "ahm/types.hpp"

namespace ahm {

enum class StencilOrder { Central2, Central4 };

struct DifferentiationScheme {
    double step = 1e-4;
    StencilOrder order = StencilOrder::Central4;
    bool richardson = false;

    // Widest offset any stencil node can be from the expansion point.
    double margin() const {
        return step * (order == StencilOrder::Central4 ? 2.0 : 1.0);
    }
};

// Domain membership callback used to validate stencil nodes. Empty means
// "everywhere valid".
using DomainCheck = std::function<bool(const RVec&)>;

namespace detail {

inline void check_node(const RVec& p, const DomainCheck& dom) {
    if (dom && !dom(p)) throw StencilOutOfDomain();
}

template <class F>
auto central_stencil(F&& field, const RVec& point, int direction, double h,
                     StencilOrder order, const DomainCheck& dom)
    -> decltype(field(point)) {
    RVec p = point;
    auto at = [&](double offset) {
        p(direction) = point(direction) + offset;
        detail::check_node(p, dom);
        return field(p);
    };
    if (order == StencilOrder::Central2) {
        auto fp = at(h);
        auto fm = at(-h);
        return (fp - fm) / (2.0 * h);
    }
    auto fp2 = at(2.0 * h);
    auto fp1 = at(h);
    auto fm1 = at(-h);
    auto fm2 = at(-2.0 * h);
    return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
}

}  // namespace detail

// First directional derivative of a field along a coordinate axis.
// Error O(step^order); Richardson extrapolation bumps the order by two
// at the cost of a second stencil at step/2.
template <class F>
auto differentiate_field(F&& field, const RVec& point, int direction,
                         const DifferentiationScheme& s,
                         const DomainCheck& dom = {})
    -> decltype(field(point)) {
    auto d = detail::central_stencil(field, point, direction, s.step, s.order, dom);
    if (!s.richardson) return d;
    auto d_half =
        detail::central_stencil(field, point, direction, s.step / 2.0, s.order, dom);
    const double p = s.order == StencilOrder::Central2 ? 4.0 : 16.0;
    return (p * d_half - d) / (p - 1.0);
}

// Second derivative d^2 f / dx_a dx_b. The diagonal case uses a direct
// second-derivative stencil; mixed partials nest two first-derivative
// stencils (both at the scheme's order).
template <class F>
auto second_derivative(F&& field, const RVec& point, int a, int b,
                       const DifferentiationScheme& s,
                       const DomainCheck& dom = {})
    -> decltype(field(point)) {
    const double h = s.step;
    if (a == b) {
        RVec p = point;
        auto at = [&](double offset) {
            p(a) = point(a) + offset;
            detail::check_node(p, dom);
            return field(p);
        };
        if (s.order == StencilOrder::Central2) {
            auto fp = at(h);
            auto f0 = at(0.0);
            auto fm = at(-h);
            return (fp - 2.0 * f0 + fm) / (h * h);
        }
        auto fp2 = at(2.0 * h);
        auto fp1 = at(h);
        auto f0 = at(0.0);
        auto fm1 = at(-h);
        auto fm2 = at(-2.0 * h);
        return (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) /
               (12.0 * h * h);
    }
    auto inner = [&](const RVec& q) {
        return detail::central_stencil(field, q, a, h, s.order, dom);
    };
    return detail::central_stencil(inner, point, b, h, s.order, dom);
}

}  // namespace ahm
