#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "memchaos/error.hpp"
#include "memchaos/integrate.hpp"
#include "memchaos/keystream.hpp"
#include "support.hpp"

using namespace memchaos;

TEST_CASE("key text form round-trips bit-exactly") {
    Key k = canonical_key();
    k.init = {0.1, -0.25, 3.0, 1e-9, -9.999999, 0.3333333333333333, 2.5};
    k.params.alpha = 12.345678901234567;
    const std::string text = key_to_text(k);
    const Key back = key_from_text(text);
    for (std::size_t i = 0; i < kDim; ++i) CHECK(back.init[i] == k.init[i]);
    CHECK(back.params.alpha == k.params.alpha);
    CHECK(back.params.beta == k.params.beta);
    CHECK(back.params.r == k.params.r);
    CHECK(back.params.d == k.params.d);
    CHECK(back.params.a == k.params.a);
    CHECK(back.params.b == k.params.b);
    // 13 lines, one number each.
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 13);
}

TEST_CASE("key parser accepts comments and flexible whitespace") {
    const Key canon = canonical_key();
    const std::string text =
        "# oscillator key\n"
        "0.1 0.1 0.1\t0.1\n0.1 0.1 0.1  # initial point\n"
        "10 14.285714285714286 # alpha beta\n"
        "0.1 1.2857142857142858 0.14285714285714285 0.2857142857142857\n";
    const Key k = key_from_text(text);
    for (std::size_t i = 0; i < kDim; ++i) CHECK(k.init[i] == canon.init[i]);
    CHECK(k.params.alpha == 10.0);
    CHECK(k.params.beta == doctest::Approx(canon.params.beta).epsilon(1e-15));
}

TEST_CASE("key parser reports the exact offending token") {
    // Truncated: 12 numbers, the missing 13th is token index 12.
    std::string twelve;
    for (int i = 0; i < 12; ++i) twelve += "0.1 ";
    try {
        key_from_text(twelve);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.token_index() == 12);
    }
    // Trailing garbage: the 14th token (index 13) is the error.
    std::string fourteen;
    for (int i = 0; i < 14; ++i) fourteen += "0.1 ";
    try {
        key_from_text(fourteen);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.token_index() == 13);
    }
    // A malformed number mid-stream names its own position.
    try {
        key_from_text("0.1 0.1 bogus 0.1 0.1 0.1 0.1 10 14 0.1 1.28 0.14 0.28");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.token_index() == 2);
    }
    CHECK_THROWS_AS(key_from_text(""), ParseError);
    CHECK_THROWS_AS(key_from_text("# only a comment\n"), ParseError);
}

TEST_CASE("key validation confines initial coordinates to [-10, 10]") {
    Key k = canonical_key();
    CHECK_NOTHROW(validate(k));
    k.init[4] = 10.0;
    CHECK_NOTHROW(validate(k));
    k.init[4] = 10.000001;
    CHECK_THROWS_AS(validate(k), DomainError);
    k.init[4] = -11.0;
    CHECK_THROWS_AS(validate(k), DomainError);
    k = canonical_key();
    k.params.b = 0.0;
    CHECK_THROWS_AS(validate(k), DomainError);
    // key_from_text validates too.
    CHECK_THROWS_AS(
        key_from_text("11 0.1 0.1 0.1 0.1 0.1 0.1 10 14 0.1 1.28 0.14 0.28"),
        DomainError);
}

TEST_CASE("key space with 1e15 values per component is about 648 bits") {
    CHECK(key_space_bits(1e15, 13) ==
          doctest::Approx(647.7759785030356).epsilon(1e-12));
    CHECK(key_space_bits(2.0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(key_space_bits(1e15, 13) > 256.0);
}

TEST_CASE("byte quantizer matches an independent rounding-exact oracle") {
    for (std::size_t dim = 0; dim < kDim; ++dim) {
        const auto xs = testsupport::uniform_doubles(1500, -10.0, 10.0,
                                                     1000 + dim);
        for (double x : xs) {
            CAPTURE(dim);
            CAPTURE(x);
            CHECK(quantize_byte(x, dim) == testsupport::quantize_oracle(x, dim));
        }
    }
    // Small magnitudes exercise the floor near zero.
    for (std::size_t dim = 0; dim < kDim; ++dim) {
        const auto xs = testsupport::uniform_doubles(200, -1e-9, 1e-9, 77 + dim);
        for (double x : xs) {
            CHECK(quantize_byte(x, dim) == testsupport::quantize_oracle(x, dim));
        }
    }
}

TEST_CASE("quantizer pins selected exact values") {
    CHECK(quantize_byte(0.0, 0) == 0);
    CHECK(quantize_byte(0.0, 6) == 0);
    // 25.7 * 1e10 rounds to exactly 2.57e11 in double arithmetic, which is
    // divisible by 256 after floor: the result is 0, not what exact real
    // arithmetic would suggest for nearby values.
    CHECK(quantize_byte(25.7, 0) == 0);
    CHECK(quantize_byte(-25.7, 0) == 0);
    CHECK(quantize_byte(1e-12, 0) == 0);  // floor(0.01) = 0
    CHECK(quantize_byte(3e-10, 0) == 3);  // floor(3.0000...) in doubles
}

TEST_CASE("quantizer rejects bad dimension or non-finite input") {
    CHECK_THROWS_AS(quantize_byte(0.5, 7), DomainError);
    CHECK_THROWS_AS(quantize_byte(std::nan(""), 0), DomainError);
    CHECK_THROWS_AS(quantize_byte(std::numeric_limits<double>::infinity(), 3),
                    DomainError);
}

TEST_CASE("stream is dimension-major over post-transient states") {
    const Key k = canonical_key();
    KeystreamGenerator g(k);
    const auto traj =
        integrate(k.init, k.params, IntegratorConfig{1e-3, 10000, 3});
    for (std::size_t s = 0; s < 3; ++s) {
        for (std::size_t dim = 0; dim < kDim; ++dim) {
            CAPTURE(s);
            CAPTURE(dim);
            CHECK(g.next_byte() == quantize_byte(traj.samples[s][dim], dim));
        }
    }
    CHECK(g.steps_taken() == 10003);
}

TEST_CASE("fill equals repeated next_byte and streams deterministically") {
    KeystreamGenerator a(canonical_key());
    KeystreamGenerator b(canonical_key());
    std::vector<std::uint8_t> buf(1000);
    a.fill(buf.data(), buf.size());
    for (std::uint8_t expect : buf) CHECK(b.next_byte() == expect);
}

TEST_CASE("bounded draws consume exactly four bytes per attempt") {
    // bound 1: result 0, but the 4-byte draw still happens.
    KeystreamGenerator a(canonical_key());
    KeystreamGenerator b(canonical_key());
    CHECK(a.next_uint_below(1) == 0);
    std::uint8_t skip[4];
    b.fill(skip, 4);
    for (int i = 0; i < 64; ++i) CHECK(a.next_byte() == b.next_byte());
}

TEST_CASE("a power-of-two bound reduces the big-endian word without rejection") {
    KeystreamGenerator a(canonical_key());
    KeystreamGenerator b(canonical_key());
    std::uint8_t raw[4];
    a.fill(raw, 4);
    // 2^32 splits evenly by 256, so the first draw is accepted and the
    // result is the low byte of the big-endian word: raw[3].
    CHECK(b.next_uint_below(256) == raw[3]);
    std::uint32_t word = (std::uint32_t(raw[0]) << 24) | (std::uint32_t(raw[1]) << 16) |
                         (std::uint32_t(raw[2]) << 8) | std::uint32_t(raw[3]);
    KeystreamGenerator c(canonical_key());
    CHECK(c.next_uint_below(0x10000) == (word & 0xFFFF));
}

TEST_CASE("bounded draws stay in range and reach every residue") {
    KeystreamGenerator g(canonical_key());
    std::set<std::uint32_t> seen;
    for (int i = 0; i < 400; ++i) {
        const std::uint32_t v = g.next_uint_below(10);
        CHECK(v < 10);
        seen.insert(v);
    }
    CHECK(seen.size() == 10);
    CHECK_THROWS_AS(g.next_uint_below(0), DomainError);
}

TEST_CASE("construction validates the key before any integration") {
    Key k = canonical_key();
    k.init[0] = 42.0;
    CHECK_THROWS_AS(KeystreamGenerator{k}, DomainError);
    k = canonical_key();
    k.params.a = -0.1;
    CHECK_THROWS_AS(KeystreamGenerator{k}, DomainError);
}

TEST_CASE("a divergent key fails fast during warm-up") {
    Key k = canonical_key();
    k.params.beta = -100.0;  // blows up near step 1317, inside the transient
    CHECK_THROWS_AS(KeystreamGenerator{k}, DivergenceError);
}

TEST_CASE("divergence after warm-up surfaces at the exact byte and poisons") {
    Key k = canonical_key();
    k.params.beta = -100.0;
    // Short warm-up ends at step 1000; steps 1001..1316 are fine, so
    // 316 * 7 bytes arrive before the step to 1317 throws.
    KeystreamGenerator g(k, 1e-3, 1000);
    for (int i = 0; i < 316 * 7; ++i) CHECK_NOTHROW(g.next_byte());
    CHECK_THROWS_AS(g.next_byte(), DivergenceError);
    CHECK_THROWS_AS(g.next_byte(), DivergenceError);
    try {
        g.next_byte();
    } catch (const DivergenceError& e) {
        CHECK(e.step_index() == 1317);
    }
}

TEST_CASE("nearby keys decorrelate after the transient") {
    KeystreamGenerator a(canonical_key());
    Key k2 = canonical_key();
    k2.init[0] = 0.1 + 1e-10;
    KeystreamGenerator b(k2);
    std::vector<std::uint8_t> sa(4096), sb(4096);
    a.fill(sa.data(), sa.size());
    b.fill(sb.data(), sb.size());
    std::size_t same = 0;
    for (std::size_t i = 0; i < sa.size(); ++i) same += (sa[i] == sb[i]);
    // Matching bytes should sit near the 1/256 coincidence rate, far from
    // the ~100% a non-sensitive stream would show.
    CHECK(same < sa.size() / 16);
}
