#include "memchaos/integrate.hpp"

#include <cmath>
#include <string>

#include "memchaos/error.hpp"

namespace memchaos {

void validate(const IntegratorConfig& cfg) {
    if (!std::isfinite(cfg.dt) || !(cfg.dt > 0.0) || cfg.dt > 0.01) {
        throw DomainError("integrator dt must satisfy 0 < dt <= 0.01");
    }
}

namespace {

bool in_bounds(const State7& s) noexcept {
    for (double x : s) {
        if (!(std::fabs(x) <= kDivergenceBound)) {
            return false;  // catches NaN too: the comparison is false
        }
    }
    return true;
}

State7 rk4_step(const State7& s, const SystemParams& p, double dt) noexcept {
    const State7 k1 = detail::rhs(s, p);
    State7 tmp;
    for (std::size_t i = 0; i < kDim; ++i) tmp[i] = s[i] + 0.5 * dt * k1[i];
    const State7 k2 = detail::rhs(tmp, p);
    for (std::size_t i = 0; i < kDim; ++i) tmp[i] = s[i] + 0.5 * dt * k2[i];
    const State7 k3 = detail::rhs(tmp, p);
    for (std::size_t i = 0; i < kDim; ++i) tmp[i] = s[i] + dt * k3[i];
    const State7 k4 = detail::rhs(tmp, p);
    State7 out;
    for (std::size_t i = 0; i < kDim; ++i) {
        out[i] = s[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

}  // namespace

Rk4Stepper::Rk4Stepper(const State7& initial, const SystemParams& params, double dt)
    : params_(params), state_(initial), dt_(dt) {
    validate(params_);
    IntegratorConfig probe;
    probe.dt = dt;
    validate(probe);
    for (double x : state_) {
        if (!std::isfinite(x)) {
            throw DomainError("initial state component is not finite");
        }
    }
}

const State7& Rk4Stepper::step() {
    if (poisoned_) {
        throw DivergenceError(steps_, "stepper already diverged at step " +
                                          std::to_string(steps_));
    }
    State7 next = rk4_step(state_, params_, dt_);
    ++steps_;
    if (!in_bounds(next)) {
        poisoned_ = true;
        state_ = next;
        throw DivergenceError(steps_, "trajectory diverged at step " +
                                          std::to_string(steps_));
    }
    state_ = next;
    return state_;
}

const State7& Rk4Stepper::advance(std::uint64_t n) {
    for (std::uint64_t i = 0; i < n; ++i) {
        step();
    }
    return state_;
}

Trajectory integrate(const State7& initial, const SystemParams& params,
                     const IntegratorConfig& cfg) {
    validate(cfg);
    Rk4Stepper stepper(initial, params, cfg.dt);
    stepper.advance(cfg.transient_steps);
    Trajectory traj;
    traj.dt = cfg.dt;
    traj.samples.reserve(static_cast<std::size_t>(cfg.sample_steps));
    for (std::uint64_t i = 0; i < cfg.sample_steps; ++i) {
        traj.samples.push_back(stepper.step());
    }
    return traj;
}

}  // namespace memchaos
