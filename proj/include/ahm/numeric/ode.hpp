#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "ahm/errors.hpp"
#include "ahm/types.hpp"

namespace ahm {

struct OdeState {
    double t = 0.0;
    RVec value;
};

using OdeRhs = std::function<RVec(double, const RVec&)>;

inline RVec rk4_step(const OdeRhs& rhs, double t, const RVec& y, double h) {
    const RVec k1 = rhs(t, y);
    const RVec k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
    const RVec k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
    const RVec k4 = rhs(t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Classical fixed-step RK4 up to t_end; the last step is shortened to
// land on t_end exactly. Trajectory includes the initial state.
inline std::vector<OdeState> integrate_ode(const OdeRhs& rhs, OdeState init,
                                           double t_end, double step) {
    if (step <= 0.0) throw Error("integrate_ode: step must be positive");
    std::vector<OdeState> traj;
    traj.push_back(init);
    double t = init.t;
    RVec y = init.value;
    const double dir = t_end >= t ? 1.0 : -1.0;
    while (dir * (t_end - t) > 1e-14) {
        double h = dir * std::min(step, dir * (t_end - t));
        y = rk4_step(rhs, t, y, h);
        t += h;
        if (!y.allFinite()) throw NonFiniteState();
        traj.push_back({t, y});
    }
    return traj;
}

}  // namespace ahm
