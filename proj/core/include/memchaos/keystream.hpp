#pragma once

#include <cstdint>
#include <string>

#include "memchaos/integrate.hpp"
#include "memchaos/system.hpp"

namespace memchaos {

// A key is the full initial condition plus the oscillator parameters:
// 13 numbers total, ordered x1..x7, alpha, beta, r, d, a, b in the text
// form. Initial coordinates are confined to [-10, 10] so every key
// starts inside the attractor's basin scale.
struct Key {
    State7 init;
    SystemParams params;
};

// alpha=10, beta=100/7, r=0.1, d=9/7, a=1/7, b=2/7 with init 0.1*ones.
Key canonical_key();

// Throws DomainError on invalid params, non-finite init, or |x_i| > 10.
void validate(const Key& key);

// Parses 13 whitespace-separated numbers; '#' starts a comment that runs
// to end of line. Throws ParseError carrying the index of the offending
// token (0-based; a truncated input reports the index of the first
// missing token).
Key key_from_text(const std::string& text);

// 13 numbers, one per line, 17 significant digits — round-trips exactly.
std::string key_to_text(const Key& key);

// log2(per_component_values^components): the size in bits of a key space
// with `components` independent entries, each drawn from
// `per_component_values` distinguishable values.
double key_space_bits(double per_component_values, int components);

// Quantizes one trajectory coordinate to a byte: floor(|x| * scale * 1e10)
// mod 256, where scale is 1 for dimension 0 and sqrt(2), sqrt(3), sqrt(5),
// sqrt(6), sqrt(7), sqrt(10) for dimensions 1..6. The irrational scale
// ratios keep byte lanes decorrelated even when coordinates coincide:
// states with x1=x2, x3=x4, x5=x6 form an exactly invariant set that the
// canonical key sits on, so equal coordinates are the common case, not a
// corner case. Throws DomainError if dim >= 7 or x is not finite.
std::uint8_t quantize_byte(double x, std::size_t dim);

// Streams key-dependent bytes off the chaotic flow. Construction runs
// the warm-up (transient_steps of RK4 at the given dt) so that emitted
// bytes only ever come from the post-transient trajectory. Each step
// yields 7 bytes, one per dimension in order. Divergence poisons the
// generator: the pending DivergenceError is thrown from next_byte().
class KeystreamGenerator {
  public:
    explicit KeystreamGenerator(const Key& key, double dt = 1e-3,
                                std::uint64_t transient_steps = 10000);

    std::uint8_t next_byte();

    // Fills out[0..len) with keystream bytes.
    void fill(std::uint8_t* out, std::size_t len);

    // Uniform draw from [0, bound) via rejection on 4 big-endian stream
    // bytes; bound must be >= 1. Consumes exactly 4 bytes per attempt.
    std::uint32_t next_uint_below(std::uint32_t bound);

    std::uint64_t steps_taken() const noexcept { return stepper_.steps_taken(); }

  private:
    Rk4Stepper stepper_;
    std::size_t dim_cursor_ = kDim;  // exhausted: first next_byte() steps
};

}  // namespace memchaos
