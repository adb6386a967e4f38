#pragma once

#include <cstdint>
#include <vector>

#include "memchaos/system.hpp"

namespace memchaos {

// Any coordinate leaving [-1e12, 1e12] (or going non-finite) counts as
// divergence; trajectories that reach it are unusable as key material.
inline constexpr double kDivergenceBound = 1e12;

struct IntegratorConfig {
    double dt = 1e-3;
    std::uint64_t transient_steps = 10000;
    std::uint64_t sample_steps = 0;
};

// Throws DomainError unless 0 < dt <= 0.01 and dt is finite.
void validate(const IntegratorConfig& cfg);

struct Trajectory {
    double dt = 0.0;
    std::vector<State7> samples;
};

// Classic fixed-step fourth-order Runge-Kutta over the memristive flow.
// step() advances one dt and throws DivergenceError (with the 1-based
// index of the step that produced the bad state) once any coordinate
// diverges; after that the stepper is poisoned and every further call
// rethrows.
class Rk4Stepper {
  public:
    // Validates params, dt, and that the initial state is finite.
    Rk4Stepper(const State7& initial, const SystemParams& params, double dt);

    // Advances one step and returns the new state.
    const State7& step();

    // Advances n steps; returns the final state.
    const State7& advance(std::uint64_t n);

    const State7& state() const noexcept { return state_; }
    std::uint64_t steps_taken() const noexcept { return steps_; }
    double dt() const noexcept { return dt_; }

  private:
    SystemParams params_;
    State7 state_;
    double dt_;
    std::uint64_t steps_ = 0;
    bool poisoned_ = false;
};

// Runs cfg.transient_steps unrecorded steps and then records the state
// after each of cfg.sample_steps further steps (so samples.front() is the
// state one step past the transient). Throws DivergenceError as above.
Trajectory integrate(const State7& initial, const SystemParams& params,
                     const IntegratorConfig& cfg);

}  // namespace memchaos
