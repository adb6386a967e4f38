#include "memchaos/keystream.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "memchaos/error.hpp"

namespace memchaos {

Key canonical_key() {
    return Key{canonical_initial_state(), canonical_params()};
}

void validate(const Key& key) {
    validate(key.params);
    for (double x : key.init) {
        if (!std::isfinite(x)) {
            throw DomainError("key initial state component is not finite");
        }
        if (std::fabs(x) > 10.0) {
            throw DomainError("key initial state component must lie in [-10, 10]");
        }
    }
}

Key key_from_text(const std::string& text) {
    // Strip comments, then tokenize on whitespace.
    std::string stripped;
    stripped.reserve(text.size());
    bool in_comment = false;
    for (char c : text) {
        if (c == '#') in_comment = true;
        if (c == '\n') in_comment = false;
        stripped.push_back(in_comment ? ' ' : c);
    }
    std::istringstream in(stripped);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);

    double values[13];
    for (std::size_t i = 0; i < 13; ++i) {
        if (i >= tokens.size()) {
            throw ParseError(i, "key text ended early: expected 13 numbers, got " +
                                    std::to_string(tokens.size()));
        }
        std::size_t pos = 0;
        try {
            values[i] = std::stod(tokens[i], &pos);
        } catch (const std::exception&) {
            throw ParseError(i, "key token " + std::to_string(i) +
                                    " is not a number: '" + tokens[i] + "'");
        }
        if (pos != tokens[i].size()) {
            throw ParseError(i, "key token " + std::to_string(i) +
                                    " has trailing characters: '" + tokens[i] + "'");
        }
    }
    if (tokens.size() > 13) {
        throw ParseError(13, "key text has extra tokens after the 13 numbers");
    }

    Key key;
    for (std::size_t i = 0; i < kDim; ++i) key.init[i] = values[i];
    key.params.alpha = values[7];
    key.params.beta = values[8];
    key.params.r = values[9];
    key.params.d = values[10];
    key.params.a = values[11];
    key.params.b = values[12];
    validate(key);
    return key;
}

std::string key_to_text(const Key& key) {
    const double values[13] = {key.init[0], key.init[1], key.init[2], key.init[3],
                               key.init[4], key.init[5], key.init[6],
                               key.params.alpha, key.params.beta, key.params.r,
                               key.params.d, key.params.a, key.params.b};
    std::string out;
    char buf[64];
    for (double v : values) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        out += buf;
    }
    return out;
}

double key_space_bits(double per_component_values, int components) {
    if (!(per_component_values > 0.0) || !std::isfinite(per_component_values)) {
        throw DomainError("per-component count must be a positive finite number");
    }
    if (components < 1) {
        throw DomainError("component count must be >= 1");
    }
    return static_cast<double>(components) * std::log2(per_component_values);
}

std::uint8_t quantize_byte(double x, std::size_t dim) {
    // sqrt(2), sqrt(3), sqrt(5), sqrt(6), sqrt(7), sqrt(10): pairwise
    // irrational ratios, so equal inputs on different lanes land on
    // unrelated byte values.
    static constexpr double kScale[kDim] = {
        1.0,
        1.4142135623730951,
        1.7320508075688772,
        2.23606797749979,
        2.449489742783178,
        2.6457513110645907,
        3.1622776601683795,
    };
    if (dim >= kDim) {
        throw DomainError("quantizer dimension must be < 7");
    }
    if (!std::isfinite(x)) {
        throw DomainError("quantizer input must be finite");
    }
    const double y = std::floor(std::fabs(x) * kScale[dim] * 1e10);
    // fmod on a non-negative integral double is exact, and safe even when
    // y exceeds the integer range.
    return static_cast<std::uint8_t>(std::fmod(y, 256.0));
}

KeystreamGenerator::KeystreamGenerator(const Key& key, double dt,
                                       std::uint64_t transient_steps)
    : stepper_((validate(key), key.init), key.params, dt) {
    stepper_.advance(transient_steps);
}

std::uint8_t KeystreamGenerator::next_byte() {
    if (dim_cursor_ >= kDim) {
        stepper_.step();  // propagates DivergenceError, including when poisoned
        dim_cursor_ = 0;
    }
    const std::size_t dim = dim_cursor_++;
    return quantize_byte(stepper_.state()[dim], dim);
}

void KeystreamGenerator::fill(std::uint8_t* out, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
        out[i] = next_byte();
    }
}

std::uint32_t KeystreamGenerator::next_uint_below(std::uint32_t bound) {
    if (bound == 0) {
        throw DomainError("next_uint_below bound must be >= 1");
    }
    // Largest multiple of bound that fits in 2^32; draws past it would
    // bias the residue, so reject and redraw.
    const std::uint64_t span = (std::uint64_t{1} << 32) / bound * bound;
    for (;;) {
        std::uint32_t u = 0;
        for (int i = 0; i < 4; ++i) {
            u = (u << 8) | next_byte();
        }
        if (u < span) {
            return u % bound;
        }
    }
}

}  // namespace memchaos
